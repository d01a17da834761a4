function f() {
  var out = [];
  {
    let v = "a";
    out.push(v);
  }
  {
    let v = "b";
    out.push(v);
  }
  return out;
}
log(f());
