function* walk(xs) {
  let i = 0;
  while (i < xs.length) {
    const item = xs[i];
    yield item * 10;
    i = i + 1;
  }
}
var w = walk([1, 2]);
log(w.next().value, w.next().value, w.next().done);
