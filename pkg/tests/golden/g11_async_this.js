var counter = {
  n: 10,
  bump: async function (k) {
    var step = await k;
    this.n = this.n + step;
    return this.n;
  }
};
counter.bump(5).then(function (v) { log(v, counter.n); });
