function outer() {
  var inner = () => arguments[0] + arguments.length;
  return inner();
}
log(outer(10, 20));
