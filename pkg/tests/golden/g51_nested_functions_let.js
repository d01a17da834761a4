function outer(flag) {
  let msg = "outer";
  function inner() {
    let msg = "inner";
    return msg;
  }
  if (flag) {
    let msg = "branch";
    return msg + "/" + inner();
  }
  return msg + "/" + inner();
}
log(outer(true), outer(false));
