function* talk() {
  var a = yield "q1";
  var b = yield "q2";
  return a + b;
}
var t = talk();
log(t.next().value, t.next(10).value, t.next(5).value);
