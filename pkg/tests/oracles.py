"""Hand-derived observable results for per-pass semantic checks.

Each case names the pass under test, a program, and the log output worked
out by hand from ECMAScript semantics before any pass code existed. The
check runs the program as written and after the named pass, and both must
print exactly ``expected``.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Oracle:
    pass_id: str
    name: str
    source: str
    expected: str


ORACLES: tuple[Oracle, ...] = (
    # optional chaining
    Oracle("rewrite_optional_chaining", "member over null, undefined, object",
           "function f(a) { return a?.b; }\nlog(f(null), f(void 0), f({b: 1}));",
           "undefined undefined 1"),
    Oracle("rewrite_optional_chaining", "chain short-circuits as a unit",
           "function f(a) { return a?.b.c; }\nlog(f(null), f({b: {c: 2}}));",
           "undefined 2"),
    Oracle("rewrite_optional_chaining", "optional call",
           "var f = null;\nvar g = function () { return 7; };\nlog(f?.(), g?.());",
           "undefined 7"),
    Oracle("rewrite_optional_chaining", "receiver evaluated once",
           "var n = 0;\nfunction get() { n = n + 1; return {v: n}; }\nlog(get()?.v, n);",
           "1 1"),
    Oracle("rewrite_optional_chaining", "optional method call keeps this",
           "var o = {k: 5, m: function () { return this.k; }};\nlog(o.m?.(), o.z?.());",
           "5 undefined"),
    # nullish coalescing
    Oracle("rewrite_nullish_coalescing", "null, undefined, 5 and 0",
           "function f(x) { return x ?? 0; }\nlog(f(null), f(void 0), f(5), f(0));",
           "0 0 5 0"),
    Oracle("rewrite_nullish_coalescing", "left side evaluated once",
           "var calls = 0;\nfunction g() { calls = calls + 1; return null; }\nlog(g() ?? 0, calls);",
           "0 1"),
    Oracle("rewrite_nullish_coalescing", "falsy but defined values are kept",
           'log("" ?? "d", false ?? "d", null ?? "d");',
           " false d"),
    # async functions
    Oracle("rewrite_async_functions", "await resolves before continuation",
           "async function f() { var v = await 1; log(\"in\", v); return v + 1; }\n"
           "f().then(function (r) { log(\"out\", r); });\nlog(\"sync\");",
           "sync\nin 1\nout 2"),
    Oracle("rewrite_async_functions", "rejection reaches catch",
           "async function f() { await null; throw new Error(\"no\"); }\n"
           "f().catch(function (e) { log(e.message); });",
           "no"),
    Oracle("rewrite_async_functions", "this and arguments inside async method",
           "var o = {b: 2, m: async function (x) { await 0; return this.b * x + arguments.length; }};\n"
           "o.m(10, 0).then(log);",
           "22"),
    Oracle("rewrite_async_functions", "await of a rejected promise throws inside",
           "async function f() {\n  try {\n    await Promise.reject(\"bad\");\n  } catch (e) {\n"
           "    return \"handled \" + e;\n  }\n}\nf().then(log);",
           "handled bad"),
    # exponent
    Oracle("rewrite_exponential_operator", "powers and right associativity",
           "log(2 ** 10, 2 ** 3 ** 2, (-2) ** 2);",
           "1024 512 4"),
    Oracle("rewrite_exponential_operator", "compound on 3, -1, 0.5",
           "function sq(x) { x **= 2; return x; }\nlog(sq(3), sq(-1), sq(0.5));",
           "9 1 0.25"),
    Oracle("rewrite_exponential_operator", "index target evaluated once",
           "var a = [2, 3];\nvar i = 0;\nfunction k() { i = i + 1; return 1; }\na[k()] **= 2;\nlog(a, i);",
           "[2, 9] 1"),
    # classes
    Oracle("rewrite_classes", "constructor stores fields",
           "class A { constructor(x) { this.x = x; } }\nvar a = new A(3);\nlog(a.x, a instanceof A);",
           "3 true"),
    Oracle("rewrite_classes", "super call, instanceof and dispatch",
           "class A { constructor(v) { this.v = v; } who() { return \"A\" + this.v; } }\n"
           "class B extends A { constructor() { super(1); } who() { return \"B\" + super.who(); } }\n"
           "var b = new B();\nlog(b.who(), b instanceof A, b instanceof B);",
           "BA1 true true"),
    Oracle("rewrite_classes", "static methods live on the constructor",
           "class C { static make() { return 42; } }\nlog(C.make());",
           "42"),
    Oracle("rewrite_classes", "implicit derived constructor forwards arguments",
           "class A { constructor(a, b) { this.s = a + b; } }\nclass B extends A { }\nlog(new B(2, 3).s);",
           "5"),
    # default parameters
    Oracle("rewrite_default_parameters", "f() and f(2)",
           "function f(a = 1) { return a; }\nlog(f(), f(2));",
           "1 2"),
    Oracle("rewrite_default_parameters", "later default sees earlier parameter",
           "function f(a, b = a) { return b; }\nlog(f(5));",
           "5"),
    Oracle("rewrite_default_parameters", "explicit undefined takes the default, null does not",
           "function f(a = \"d\") { return a; }\nlog(f(void 0), f(null));",
           "d null"),
    # rest and spread
    Oracle("rewrite_rest_and_spread", "spread call with xs = [1, 2, 3]",
           "function f(a, b, c) { return a + b + c; }\nvar xs = [1, 2, 3];\nlog(f(...xs));",
           "6"),
    Oracle("rewrite_rest_and_spread", "rest length",
           "function f(...r) { return r.length; }\nlog(f(1, 2), f());",
           "2 0"),
    Oracle("rewrite_rest_and_spread", "array literal spread keeps order",
           "var xs = [2, 3];\nlog([1, ...xs, 4]);",
           "[1, 2, 3, 4]"),
    Oracle("rewrite_rest_and_spread", "method spread receiver evaluated once",
           "var n = 0;\nvar o = {t: 1, m: function (a, b) { return this.t + a + b; }};\n"
           "function get() { n = n + 1; return o; }\nlog(get().m(...[1, 2]), n);",
           "4 1"),
    # arrows
    Oracle("rewrite_arrow_functions", "expression body",
           "var f = x => x + 1;\nlog(f(1), [1, 2].map(v => v * 3));",
           "2 [3, 6]"),
    Oracle("rewrite_arrow_functions", "lexical this inside a method",
           "var o = {k: 10, f: function () { return [1, 2].map(v => v + this.k); }};\nlog(o.f());",
           "[11, 12]"),
    Oracle("rewrite_arrow_functions", "lexical arguments",
           "function f() { var g = () => arguments.length; return g(9); }\nlog(f(1, 2, 3));",
           "3"),
    # templates
    Oracle("rewrite_template_literals", "x = 1 and x = \"q\"",
           "function t(x) { return `a${x}b`; }\nlog(t(1), t(\"q\"));",
           "a1b aqb"),
    Oracle("rewrite_template_literals", "leading interpolations coerce to string",
           "var x = 1;\nvar y = 2;\nlog(`${x}${y}` === \"12\", `plain`, `` === \"\");",
           "true plain true"),
    # generators
    Oracle("rewrite_generators", "straight-line yields then done",
           "function* g() { yield 1; yield 2; }\nvar it = g();\nvar a = it.next();\nvar b = it.next();\n"
           "var c = it.next();\nlog(a.value, a.done, b.value, c.value, c.done);",
           "1 false 2 undefined true"),
    Oracle("rewrite_generators", "while loop yields 0, 1, 2",
           "function* g() { var i = 0; while (i < 3) { yield i; i = i + 1; } }\nvar it = g();\n"
           "log(it.next().value, it.next().value, it.next().value, it.next().done);",
           "0 1 2 true"),
    Oracle("rewrite_generators", "sent values and return value",
           "function* g(a) { var b = yield a; if (b > 1) { yield b * 2; } return b; }\nvar it = g(4);\n"
           "log(it.next().value, it.next(3).value, it.next().value);",
           "4 6 3"),
    Oracle("rewrite_generators", "body runs lazily",
           "function* g() { log(\"start\"); yield 1; }\nvar it = g();\nlog(\"made\");\nit.next();",
           "made\nstart"),
    # block-scoped declarations
    Oracle("rewrite_block_scoped", "let becomes var",
           "let x = 1;\nconst y = x + 1;\nlog(x, y);",
           "1 2"),
    Oracle("rewrite_block_scoped", "sibling blocks keep their own bindings",
           "var out = [];\n{ let x = 1; out.push(x); }\n{ let x = 2; out.push(x); }\nlog(out);",
           "[1, 2]"),
    Oracle("rewrite_block_scoped", "inner binding does not leak out",
           "let x = \"outer\";\nif (true) { let x = \"inner\"; log(x); }\nlog(x);",
           "inner\nouter"),
    Oracle("rewrite_block_scoped", "loop let is fresh on every iteration without closures",
           "var s = [];\nfor (let i = 0; i < 3; i++) { let d; if (i === 1) { d = \"set\"; } s.push(d); }\nlog(s);",
           "[undefined, 'set', undefined]"),
)
