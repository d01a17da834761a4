async function risky(flag) {
  if (flag) {
    throw new Error("boom");
  }
  return "fine";
}
risky(false).then(log);
risky(true).catch(function (e) { log("caught", e.message); });
