class Shape {
  constructor(name = "shape") {
    this.name = name;
  }
  area() {
    return 0;
  }
  describe() {
    return `${this.name}: ${this.area()}`;
  }
}
class Square extends Shape {
  constructor(side) {
    super("square");
    this.side = side;
  }
  area() {
    return this.side ** 2;
  }
}
const shapes = [new Shape(), new Square(3)];
log(shapes.map(s => s.describe()), Math.max(...shapes.map(s => s.area())));
