let x = 1;
const y = 2;
{
  let x = 10;
  log(x + y);
}
log(x + y);
