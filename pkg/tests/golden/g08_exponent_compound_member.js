var box = {n: 2};
var arr = [1, 2, 3];
var idx = 0;
function next() {
  idx = idx + 1;
  return idx;
}
box.n **= 4;
arr[next()] **= 2;
log(box.n, arr, idx);
