"""The reference evaluator against hand-computed results."""

import pytest

from selective_transpile.evaluator import StepLimitExceeded, run

CASES = [
    ("arithmetic", "log(1 + 2 * 3, 7 % 3, 10 / 4, -0 === 0);", "7 1 2.5 true"),
    ("string concat coerces", 'log("a" + 1 + 2, 1 + 2 + "a");', "a12 3a"),
    ("loose vs strict equality", 'log(null == void 0, null === void 0, "1" == 1, 0 == "");', "true false true true"),
    ("typeof table", 'log(typeof 1, typeof "s", typeof null, typeof void 0, typeof {}, typeof log);',
     "number string object undefined object function"),
    ("typeof undeclared", "log(typeof nope);", "undefined"),
    ("short circuit", "var n = 0; function t() { n = n + 1; return true; } log(false && t(), true || t(), n);",
     "false true 0"),
    ("logical returns operands", 'log(0 || "x", 1 && "y");', "x y"),
    ("var hoisting", "log(v); var v = 1; log(v);", "undefined\n1"),
    ("function hoisting", "log(f()); function f() { return 2; }", "2"),
    ("closures", "function mk() { var c = 0; return function () { c = c + 1; return c; }; } var f = mk(); f(); log(f());",
     "2"),
    # strict-mode receivers: a bare call sees this === undefined
    ("this binding", "var o = {v: 1, g: function () { return this.v; }}; function who() { return this; } "
     "log(o.g(), typeof who());", "1 undefined"),
    ("call and apply", "function f(a, b) { return this.k + a + b; } log(f.call({k: 1}, 2, 3), f.apply({k: 0}, [1, 1]));",
     "6 2"),
    ("bind with arguments", "function f(a, b) { return a - b; } var g = f.bind(null, 10); log(g(3));", "7"),
    ("prototype chain", "function A() {} A.prototype.x = 5; var a = new A(); log(a.x, a instanceof A, "
     "a.hasOwnProperty(\"x\"));", "5 true false"),
    ("constructor return object", "function C() { this.a = 1; return {b: 2}; } var c = new C(); log(c.a, c.b);",
     "undefined 2"),
    ("arrays", "var a = [1, 2]; a.push(3); log(a.length, a.join(\"-\"), a.indexOf(2), a.slice(1));",
     "3 1-2-3 1 [2, 3]"),
    ("array map reduce", "log([1, 2, 3].map(function (x) { return x * x; }).reduce(function (s, x) { return s + x; }, 0));",
     "14"),
    ("array concat", "log([1].concat([2, 3], 4));", "[1, 2, 3, 4]"),
    ("arguments object", "function f() { return arguments.length + arguments[1]; } log(f(1, 10, 100));", "13"),
    ("switch fallthrough", "function f(x) { var s = \"\"; switch (x) { case 1: s = s + \"a\"; case 2: s = s + \"b\"; "
     "break; default: s = \"d\"; } return s; } log(f(1), f(2), f(3));", "ab b d"),
    ("for loop with continue", "var s = 0; for (var i = 0; i < 5; i++) { if (i === 2) { continue; } s += i; } log(s);",
     "8"),
    ("while with break", "var i = 0; while (true) { i = i + 1; if (i > 3) { break; } } log(i);", "4"),
    ("try catch finally order", "try { log(\"t\"); throw 1; } catch (e) { log(\"c\", e); } finally { log(\"f\"); }",
     "t\nc 1\nf"),
    ("uncaught error", "throw new TypeError(\"bad\");", "uncaught TypeError: bad"),
    ("reference error", "log(missing);", "uncaught ReferenceError: missing is not defined"),
    ("number formatting", "log(1 / 3, 1e21, 0.1 + 0.2, 100, -1.5);", "0.3333333333333333 1e+21 0.30000000000000004 100 -1.5"),
    ("math", "log(Math.pow(2, 10), Math.max(1, 5, 3), Math.floor(2.7), Math.abs(-4));", "1024 5 2 4"),
    ("nested display", 'log([1, "a", [null]], {a: 1, b: "x"});', "[1, 'a', [null]] {a: 1, b: 'x'}"),
    ("let block scope", "let x = 1; { let x = 2; log(x); } log(x);", "2\n1"),
    ("for let closures see own iteration", "var fs = []; for (let i = 0; i < 3; i++) { fs.push(function () { return i; }); } "
     "log(fs[0](), fs[2]());", "0 2"),
    ("arrow this", "var o = {v: 7, f: function () { return (() => this.v)(); }}; log(o.f());", "7"),
    ("class with super", "class A { constructor() { this.n = \"A\"; } m() { return 1; } } "
     "class B extends A { m() { return super.m() + 1; } } var b = new B(); log(b.n, b.m());", "A 2"),
    ("optional chaining native", "var o = null; log(o?.a.b.c, ({x: 1})?.x);", "undefined 1"),
    ("nullish native", "log(null ?? 1, 0 ?? 1);", "1 0"),
    ("exponent native", "log(2 ** 3 ** 2);", "512"),
    ("template native", "var a = 1; log(`x${a}y${a + 1}`);", "x1y2"),
    ("generator protocol", "function* g() { var x = yield 1; yield x * 2; } var it = g(); "
     "log(it.next().value, it.next(5).value, it.next().done);", "1 10 true"),
    ("promise ordering", "Promise.resolve(1).then(function (v) { log(\"then\", v); }); log(\"sync\");", "sync\nthen 1"),
    ("async await", "async function f() { var a = await 2; return a * 3; } f().then(log); log(\"first\");",
     "first\n6"),
    ("promise rejection chain", "Promise.reject(\"e\").then(function () { log(\"no\"); }).catch(function (x) { "
     "log(\"caught\", x); });", "caught e"),
    ("default and rest native", "function f(a = 2, ...r) { return a + r.length; } log(f(), f(1, 1, 1));", "2 3"),
    ("spread native", "function f(a, b) { return a * b; } log(f(...[3, 4]), [0, ...[1, 2]]);", "12 [0, 1, 2]"),
    ("string methods", 'log("abc".charAt(1), "abc".toUpperCase(), "abc".indexOf("c"), "abc".length);', "b ABC 2 3"),
    ("object keys", "log(Object.keys({a: 1, b: 2}));", "['a', 'b']"),
]


@pytest.mark.parametrize("name, src, expected", CASES, ids=[c[0] for c in CASES])
def test_evaluator_oracle(name, src, expected):
    assert str(run(src)) == expected


def test_enough_oracle_cases():
    assert len(CASES) >= 30


def test_step_limit():
    with pytest.raises(StepLimitExceeded):
        run("while (true) { }", max_steps=10_000)
