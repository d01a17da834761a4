function* pair() {
  yield "l";
  yield "r";
}
function join(sep, ...xs) {
  return xs.join(sep);
}
log(join("-", ...pair()), join(",", ...[1, 2], ...pair()));
