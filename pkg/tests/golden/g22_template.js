var who = "world";
var n = 3;
log(`hello ${who}!`, `${n}${n}`, `n*2=${n * 2}`, ``);
