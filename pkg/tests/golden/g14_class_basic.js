class Point {
  constructor(x, y) {
    this.x = x;
    this.y = y;
  }
  norm2() {
    return this.x * this.x + this.y * this.y;
  }
  static origin() {
    return new Point(0, 0);
  }
}
var p = new Point(3, 4);
log(p.norm2(), Point.origin().norm2(), p instanceof Point);
