var a = null;
var b = 0;
var c = "";
log(a ?? "dflt", b ?? 9, c ?? "empty", (void 0) ?? 3);
