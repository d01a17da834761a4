var conf = {db: {port: null}};
var port = conf?.db?.port ?? 5432;
var host = conf.net?.host ?? "localhost";
log(host + ":" + port);
