import pytest
from hypothesis import given

from selective_transpile.codegen import print_script
from selective_transpile.evaluator import run
from selective_transpile.features import ALL_FEATURES, EMPTY, Feature, FeatureSet, LanguageLevel
from selective_transpile.nodes import K, mk, scan_features
from selective_transpile.parser import parse
from selective_transpile.passes import BY_ID, PASSES, PassError, PassErrorCode
from selective_transpile.passes.registry import PASSES as REGISTRY
from oracles import ORACLES
from strategies import expression_programs
from support import apply_pass, lowered_body, same_behaviour, transpile

F = Feature
L = LanguageLevel


class TestRegistry:
    def test_order(self):
        assert [p.id for p in PASSES] == [
            "rewrite_optional_chaining", "rewrite_nullish_coalescing", "rewrite_async_functions",
            "rewrite_exponential_operator", "rewrite_classes", "rewrite_arrow_functions",
            "rewrite_default_parameters", "rewrite_rest_and_spread", "rewrite_template_literals",
            "rewrite_generators", "rewrite_block_scoped"]
        assert REGISTRY is PASSES

    def test_levels_never_increase(self):
        levels = [p.feature_level for p in PASSES]
        assert levels == sorted(levels, reverse=True)

    @pytest.mark.parametrize("p", PASSES, ids=lambda p: p.id)
    def test_descriptor_invariants(self, p):
        assert p.problems() == []

    def test_every_feature_has_exactly_one_pass(self):
        for f in ALL_FEATURES:
            assert sum(f in p.handled_features for p in PASSES) == 1, f

    def test_declared_synthetics_and_helpers(self):
        assert BY_ID["rewrite_async_functions"].synthetic_features == FeatureSet.of(F.GENERATORS)
        assert BY_ID["rewrite_async_functions"].required_helpers == {"$asyncExecute"}
        assert BY_ID["rewrite_classes"].required_helpers == {"$inherits"}
        assert BY_ID["rewrite_generators"].required_helpers == {"$makeIterator"}
        assert BY_ID["rewrite_rest_and_spread"].handled_features == FeatureSet.of(F.REST_PARAMETERS,
                                                                                  F.SPREAD_EXPRESSIONS)

    def test_bad_descriptors_are_reported(self):
        from dataclasses import replace
        p = BY_ID["rewrite_classes"]
        assert replace(p, handled_features=EMPTY).problems()
        assert replace(p, handled_features=FeatureSet.of(F.CLASSES, F.ASYNC_FUNCTIONS)).problems()
        assert replace(p, synthetic_features=FeatureSet.of(F.ARROW_FUNCTIONS)).problems()


TEXT = [
    ("rewrite_optional_chaining", "v = a?.b;", "v = a == null ? void 0 : a.b;"),
    ("rewrite_optional_chaining", "v = a?.b.c;", "v = a == null ? void 0 : a.b.c;"),
    ("rewrite_optional_chaining", "v = f?.();", "v = f == null ? void 0 : f();"),
    ("rewrite_optional_chaining", "v = g()?.b;", "var $t0;\nv = ($t0 = g()) == null ? void 0 : $t0.b;"),
    ("rewrite_nullish_coalescing", "v = x ?? 0;", "v = x != null ? x : 0;"),
    ("rewrite_nullish_coalescing", "v = g() ?? 0;", "var $t0;\nv = ($t0 = g()) != null ? $t0 : 0;"),
    ("rewrite_async_functions", "async function f() { await g(); }",
     "function f() {\n  return $asyncExecute(function* () {\n    yield g();\n  });\n}"),
    ("rewrite_exponential_operator", "v = 2 ** 10;", "v = Math.pow(2, 10);"),
    ("rewrite_exponential_operator", "x **= 2;", "x = Math.pow(x, 2);"),
    ("rewrite_exponential_operator", "o.p **= 2;", "o.p = Math.pow(o.p, 2);"),
    ("rewrite_classes", "class A { constructor(x) { this.x = x; } }", "function A(x) {\n  this.x = x;\n}"),
    ("rewrite_classes", "class B extends A { constructor() { super(1); } }",
     "function B() {\n  A.call(this, 1);\n}\n$inherits(B, A);"),
    ("rewrite_classes", "class B extends A { m() { return super.m(2); } static s() { } }",
     "function B() {\n  A.apply(this, arguments);\n}\n$inherits(B, A);\n"
     "B.prototype.m = function () {\n  return A.prototype.m.call(this, 2);\n};\nB.s = function () {};"),
    ("rewrite_default_parameters", "function f(a = 1) { }", "function f(a) {\n  if (a === void 0) a = 1;\n}"),
    ("rewrite_default_parameters", "function f(a, b = a) { }", "function f(a, b) {\n  if (b === void 0) b = a;\n}"),
    ("rewrite_rest_and_spread", "function f(a, ...r) { }",
     "function f(a) {\n  var r = Array.prototype.slice.call(arguments, 1);\n}"),
    ("rewrite_rest_and_spread", "f(...xs);", "f.apply(null, $arrayFrom(xs));"),
    ("rewrite_rest_and_spread", "o.m(...xs);", "o.m.apply(o, $arrayFrom(xs));"),
    ("rewrite_rest_and_spread", "g().m(...xs);", "var $t0;\n($t0 = g()).m.apply($t0, $arrayFrom(xs));"),
    ("rewrite_rest_and_spread", "v = [a, ...xs, b];", "v = [a].concat($arrayFrom(xs), [b]);"),
    ("rewrite_arrow_functions", "var f = x => x + 1;", "var f = function (x) {\n  return x + 1;\n};"),
    ("rewrite_arrow_functions", "var o = {m: function () { return () => this; }};",
     "var o = {m: function () {\n  var $this = this;\n  return function () {\n    return $this;\n  };\n}};"),
    ("rewrite_template_literals", "v = `a${x}b`;", 'v = "a" + x + "b";'),
    ("rewrite_template_literals", "v = `${x}${y}`;", 'v = "" + x + y;'),
    ("rewrite_template_literals", "v = `plain`;", 'v = "plain";'),
    ("rewrite_template_literals", "v = ``;", 'v = "";'),
    ("rewrite_template_literals", "v = `a${x + 1}`;", 'v = "a" + (x + 1);'),
    ("rewrite_block_scoped", "let x = 1;", "var x = 1;"),
    ("rewrite_block_scoped", "{ let x = 1; } { let x = 2; }", "{\n  var x = 1;\n}\n{\n  var x$1 = 2;\n}"),
]


@pytest.mark.parametrize("pass_id, src, want", TEXT, ids=[f"{t[0]}:{t[1]}" for t in TEXT])
def test_lowered_text(pass_id, src, want):
    assert lowered_body(pass_id, src) == want + "\n"


def test_generator_state_machine_shape():
    out = lowered_body("rewrite_generators", "function* g() { yield 1; yield 2; }")
    assert out.startswith("function g() {\n  var $state = 0;\n  var $sent;\n  return $makeIterator(function ($v) {")
    assert "return {value: 1, done: false};" in out
    assert out.count("case ") == 3
    assert "return {value: void 0, done: true};" in out


@pytest.mark.parametrize("oracle", ORACLES, ids=lambda o: f"{o.pass_id}:{o.name}")
def test_oracle(oracle):
    assert str(run(oracle.source)) == oracle.expected
    script, outcome = apply_pass(oracle.pass_id, oracle.source)
    assert outcome.changed
    assert str(run(print_script(script))) == oracle.expected


def test_oracles_cover_every_pass():
    assert {o.pass_id for o in ORACLES} == {p.id for p in PASSES}
    assert len(ORACLES) >= 30


class TestOutcomes:
    def test_async_reports_generators(self):
        _, out = apply_pass("rewrite_async_functions", "async function f() { await g(); }")
        assert out.removed_features == FeatureSet.of(F.ASYNC_FUNCTIONS)
        assert out.added_features == FeatureSet.of(F.GENERATORS)
        assert out.helpers_used == {"$asyncExecute"}

    def test_rest_only_claims_rest(self):
        _, out = apply_pass("rewrite_rest_and_spread", "function f(...r) { return r.length; }")
        assert out.removed_features == FeatureSet.of(F.REST_PARAMETERS)
        assert out.helpers_used == frozenset()

    def test_spread_only_claims_spread(self):
        _, out = apply_pass("rewrite_rest_and_spread", "f(...xs);")
        assert out.removed_features == FeatureSet.of(F.SPREAD_EXPRESSIONS)
        assert out.helpers_used == {"$arrayFrom"}

    def test_base_class_needs_no_helper(self):
        _, out = apply_pass("rewrite_classes", "class A { }")
        assert out.helpers_used == frozenset()

    def test_after_async_script_contains_generators(self):
        script, _ = apply_pass("rewrite_async_functions", "async function f() { return 1; }")
        assert F.GENERATORS in scan_features(script.root)

    @pytest.mark.parametrize("p", PASSES, ids=lambda p: p.id)
    def test_no_op_purity(self, p):
        src = "var a = 1;\nfunction f(x) { return x ? a : [x, {k: a}]; }\nwhile (a < 3) { a = a + 1; }\n"
        script = parse(src)
        before = print_script(script)
        out = p.transform(script)
        assert not out.changed and out.removed_features == EMPTY and out.added_features == EMPTY
        assert print_script(script) == before
        assert out.nodes_visited > 0


class TestErrors:
    def test_yield_inside_expression(self):
        with pytest.raises(PassError) as info:
            apply_pass("rewrite_generators", "function* g() { f(yield 1); }")
        assert info.value.code is PassErrorCode.UNSUPPORTED_YIELD_POSITION
        assert info.value.span.line == 1

    @pytest.mark.parametrize("body", [
        "for (var i = 0; i < 2; i++) { yield i; }",
        "try { yield 1; } catch (e) { }",
        "var x = 1 + (yield 2);",
        "switch (a) { case 1: yield 1; }",
    ])
    def test_yield_outside_the_subset(self, body):
        with pytest.raises(PassError) as info:
            apply_pass("rewrite_generators", "function* g(a) { " + body + " }")
        assert info.value.code is PassErrorCode.UNSUPPORTED_YIELD_POSITION

    def test_loop_capture(self):
        src = "while (c) { let i = f(); q.push(function () { return i; }); }"
        with pytest.raises(PassError) as info:
            apply_pass("rewrite_block_scoped", src)
        assert info.value.code is PassErrorCode.UNSUPPORTED_CAPTURE

    def test_for_let_capture(self):
        with pytest.raises(PassError) as info:
            apply_pass("rewrite_block_scoped", "for (let i = 0; i < 3; i++) { fs.push(() => i); }")
        assert info.value.code is PassErrorCode.UNSUPPORTED_CAPTURE

    def test_class_member_outside_subset(self):
        script = parse("class A { m() { } }")
        cls = script.root.children[0]
        cls.children.append(mk(K.PROPERTY, mk(K.NUMBER_LIT, value="1"), value="field"))
        with pytest.raises(PassError) as info:
            BY_ID["rewrite_classes"].transform(script)
        assert info.value.code is PassErrorCode.UNSUPPORTED_CONSTRUCT

    def test_errors_surface_through_the_pipeline(self):
        from selective_transpile.scheduler import PipelineError
        with pytest.raises(PipelineError) as info:
            transpile("function* g() { f(yield 1); }", name="y.js")
        e = info.value
        assert (e.code, e.pass_id, e.script) == ("UNSUPPORTED_YIELD_POSITION", "rewrite_generators", "y.js")


def _walk_passes(src, name):
    """Run every pass in order, checking the per-pass invariants after each."""
    script = parse(src, name)
    for p in PASSES:
        before = scan_features(script.root)
        out = p.transform(script)
        script.helpers_used |= out.helpers_used
        after = scan_features(script.root)
        assert not (after & p.handled_features), (name, p.id)
        assert after == (before - out.removed_features) | out.added_features, (name, p.id)
        assert all(f.level < p.feature_level for f in after - before), (name, p.id)
        assert p.check_outcome(out) == [], (name, p.id)
        if before & p.handled_features:
            assert out.changed, (name, p.id)
        assert out.helpers_used <= p.required_helpers, (name, p.id)
    assert scan_features(script.root) == EMPTY
    return script


def test_pass_invariants_on_corpus(mixed_corpus):
    for name, src in mixed_corpus:
        _walk_passes(src, name)


def test_lowering_preserves_behaviour_on_golden(golden):
    for name, src in golden:
        out, _ = transpile(src, name=name)
        assert str(run(out)) == str(run(src)), name


def test_lowering_preserves_behaviour_on_corpus(sparse_corpus):
    for g in sparse_corpus[:80]:
        out, _ = transpile(g.source, name=g.name)
        assert str(run(out)) == str(run(g.source)), g.name


@given(expression_programs())
def test_expression_lowering_preserves_behaviour(src):
    out, _ = transpile(src)
    assert same_behaviour(src, out)
    assert scan_features(parse(out, allow_reserved=True).root) == EMPTY


@given(expression_programs())
def test_expression_pass_invariants(src):
    _walk_passes(src, "expr.js")


@pytest.mark.parametrize("src", [
    "var n = 0; function g() { n = n + 1; return {v: 1}; } log(g()?.v, n);",
    "var n = 0; function g() { n = n + 1; return null; } log(g() ?? 1, n);",
    "var n = 0; var o = {p: 2}; function g() { n = n + 1; return o; } g().p **= 2; log(o.p, n);",
    "var n = 0; var a = [1, 2]; function i() { n = n + 1; return 0; } a[i()] **= 3; log(a, n);",
    "var n = 0; var o = {m: function (x) { return x; }}; function g() { n = n + 1; return o; } log(g().m(...[4]), n);",
    "var n = 0; var o = {m: function () { return 1; }}; function g() { n = n + 1; return o; } log(g().m?.(), n);",
])
def test_single_evaluation(src):
    out, _ = transpile(src)
    assert str(run(out)) == str(run(src))
    assert str(run(src)).endswith(" 1")
