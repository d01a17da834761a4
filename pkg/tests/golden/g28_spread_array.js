var mid = [2, 3];
var all = [1, ...mid, 4, ...mid];
log(all, all.length, [...mid]);
