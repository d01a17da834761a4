function* gate(flag) {
  if (flag) {
    yield "open";
  } else {
    yield "closed";
  }
  yield "done";
}
var g = gate(true);
var h = gate(false);
log(g.next().value, g.next().value, h.next().value, h.next().value);
