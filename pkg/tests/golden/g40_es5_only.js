var total = 0;
for (var i = 0; i < 5; i++) {
  total += i;
}
function label(n) {
  switch (n) {
    case 0:
      return "zero";
    default:
      return "some";
  }
}
log(total, label(0), label(total));
