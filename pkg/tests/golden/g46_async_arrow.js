var double = async x => {
  var v = await x;
  return v * 2;
};
double(21).then(function (r) { log(r); });
