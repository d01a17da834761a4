async function lookup(db, key) {
  var row = await db?.get?.(key);
  return row?.name ?? "unknown";
}
var db = {get: function (k) { return k === 1 ? {name: "one"} : null; }};
lookup(db, 1).then(log);
lookup(db, 2).then(log);
lookup(null, 1).then(log);
