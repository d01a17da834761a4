async function count() {
  await null;
  return arguments.length;
}
count(1, 2, 3).then(function (n) { log("args", n); });
