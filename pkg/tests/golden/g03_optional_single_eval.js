var calls = 0;
function fetch() {
  calls = calls + 1;
  return {v: calls};
}
log(fetch()?.v, calls);
log(fetch()?.["v"], calls);
