function delay(v) {
  return new Promise(function (resolve) { resolve(v); });
}
async function run() {
  var out = [];
  var i = 0;
  while (i < 3) {
    var v = await delay(i * 10);
    out.push(v);
    i = i + 1;
  }
  return out;
}
run().then(function (r) { log(r); });
