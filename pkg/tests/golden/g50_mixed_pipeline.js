function* ids(n) {
  var i = 1;
  while (i <= n) {
    yield i;
    i = i + 1;
  }
}
async function collect(n, scale = 2) {
  var got = [...ids(n)];
  var total = await got.reduce((a, b) => a + b, 0);
  return total ** scale;
}
collect(3).then(v => log(`total ${v}`));
