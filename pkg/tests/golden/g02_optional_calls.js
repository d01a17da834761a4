var api = {hello: function (who) { return "hi " + who; }};
log(api.hello?.("bob"), api.bye?.("bob"));
var fn = null;
log(fn?.(1, 2));
