from dataclasses import replace

import pytest

from selective_transpile.codegen import print_script
from selective_transpile.features import EMPTY, Feature, FeatureSet, LanguageLevel
from selective_transpile.nodes import clone, same_tree, scan_counter
from selective_transpile.parser import parse
from selective_transpile.passes import BY_ID, PASSES, TransformOutcome
from selective_transpile.scheduler import CompilationUnit, Mode, PipelineError, TranspiledAwaySet, run_pipeline
from selective_transpile.validator import (ValidationCode, ValidationError, post_transpile_check,
                                           validate_after_pass)

F = Feature
V = ValidationCode


def _swap(pass_id, sabotaged):
    return [sabotaged if p.id == pass_id else p for p in PASSES]


def _inject_optional_chain(script):
    """An honest arrow pass that also drops `a?.b;` into the tree once chaining has retired."""
    out = BY_ID["rewrite_arrow_functions"].transform(script)
    script.root.children.append(clone(parse("a?.b;").root.children[0]))
    return replace(out, changed=True, added_features=out.added_features | FeatureSet.of(F.OPTIONAL_CHAINING))


def _forget_generators(script):
    out = BY_ID["rewrite_async_functions"].transform(script)
    return replace(out, added_features=EMPTY)


def _add_arrow(script):
    """Classes pass that wraps an honest arrow into its output: ES2015 is not below ES2015."""
    out = BY_ID["rewrite_classes"].transform(script)
    script.root.children.append(clone(parse("var $k = () => 1;", allow_reserved=True).root.children[0]))
    return replace(out, changed=True, added_features=out.added_features | FeatureSet.of(F.ARROW_FUNCTIONS))


SABOTAGE = {
    V.REINTRODUCED_FEATURE: ("rewrite_arrow_functions", _inject_optional_chain, "var f = x => x;"),
    V.UNREGISTERED_FEATURE: ("rewrite_async_functions", _forget_generators, "async function f() { await 1; }"),
    V.MONOTONICITY_VIOLATION: ("rewrite_classes", _add_arrow, "class A { }"),
}


def _sabotaged_run(code, validate=True):
    pass_id, fn, src = SABOTAGE[code]
    passes = _swap(pass_id, replace(BY_ID[pass_id], transform=fn))
    unit = CompilationUnit([parse(src, "s.js")], LanguageLevel.ES5, validate=validate)
    return run_pipeline(unit, passes=passes)


@pytest.mark.parametrize("code", list(SABOTAGE), ids=lambda c: c.value)
def test_sabotage_aborts_with_its_code(code):
    with pytest.raises(PipelineError) as info:
        _sabotaged_run(code)
    e = info.value
    assert {x.code for x in e.errors} == {code}
    assert e.code == code.value
    assert e.pass_id == SABOTAGE[code][0]
    assert e.script == "s.js"


def test_sabotage_features():
    got = {}
    for code in SABOTAGE:
        with pytest.raises(PipelineError) as info:
            _sabotaged_run(code)
        got[code] = info.value.features
    assert got == {V.REINTRODUCED_FEATURE: FeatureSet.of(F.OPTIONAL_CHAINING),
                   V.UNREGISTERED_FEATURE: FeatureSet.of(F.GENERATORS),
                   V.MONOTONICITY_VIOLATION: FeatureSet.of(F.ARROW_FUNCTIONS)}


def test_reintroduction_is_caught_in_production_too():
    with pytest.raises(PipelineError) as info:
        _sabotaged_run(V.REINTRODUCED_FEATURE, validate=False)
    assert info.value.code == "REINTRODUCED_FEATURE"


def test_unregistered_generators_surface_at_the_end_in_production():
    # without rescans the missing report is only visible to the end-of-run check
    with pytest.raises(PipelineError) as info:
        _sabotaged_run(V.UNREGISTERED_FEATURE, validate=False)
    assert info.value.code == "UNSUPPORTED_FEATURE_REMAINS"
    assert info.value.features == FeatureSet.of(F.GENERATORS)


def test_silent_reintroduction_reports_both_codes():
    def silent(script):
        out = BY_ID["rewrite_arrow_functions"].transform(script)
        script.root.children.append(clone(parse("a?.b;").root.children[0]))
        return replace(out, changed=True)
    passes = _swap("rewrite_arrow_functions", replace(BY_ID["rewrite_arrow_functions"], transform=silent))
    with pytest.raises(PipelineError) as info:
        run_pipeline(CompilationUnit([parse("var f = x => x;", "s.js")], LanguageLevel.ES5, validate=True),
                     passes=passes)
    assert {e.code for e in info.value.errors} == {V.REINTRODUCED_FEATURE, V.UNREGISTERED_FEATURE}


def test_structure_violation():
    script = parse("var x = f(1);", "s.js")
    script.root.children[0].children.clear()
    unit = CompilationUnit([script], LanguageLevel.ES5, validate=True)
    errors = validate_after_pass(unit, PASSES[0], TranspiledAwaySet(), {"s.js": script.feature_set})
    assert [e.code for e in errors] == [V.STRUCTURE_VIOLATION]


class TestReadOnly:
    def test_validator_does_not_touch_the_tree(self, golden):
        scripts = [parse(src, name) for name, src in golden]
        copies = [clone(s.root) for s in scripts]
        sets = [s.feature_set for s in scripts]
        unit = CompilationUnit(scripts, LanguageLevel.ES5, validate=True)
        away = TranspiledAwaySet(FeatureSet.of(F.OPTIONAL_CHAINING))
        validate_after_pass(unit, PASSES[0], away, {s.source_name: s.feature_set for s in scripts})
        post_transpile_check(unit)
        assert all(same_tree(a, s.root) for a, s in zip(copies, scripts))
        assert [s.feature_set for s in scripts] == sets


class TestOverhead:
    def _count(self, corpus, validate):
        scripts = [parse(g.source, g.name) for g in corpus]
        scan_counter.reset()
        run_pipeline(CompilationUnit(scripts, LanguageLevel.ES5, validate=validate))
        return scan_counter.count, len(scripts)

    def test_production_scans_once_per_script(self, sparse_corpus):
        count, n = self._count(sparse_corpus[:100], False)
        assert count == n

    def test_validate_mode_rescans_after_every_pass(self, sparse_corpus):
        count, n = self._count(sparse_corpus[:100], True)
        assert count == n * (len(PASSES) + 1)


class TestPostCheck:
    def test_clean_output(self):
        script = parse("var x = 1;")
        assert post_transpile_check(CompilationUnit([script], LanguageLevel.ES5)) == []

    def test_leftovers_grouped_by_owner(self):
        script = parse("function* g() { yield 1; }\nvar v = a ?? b;", "s.js")
        errors = post_transpile_check(CompilationUnit([script], LanguageLevel.ES5))
        assert [(e.pass_id, e.features) for e in errors] == [
            ("rewrite_generators", FeatureSet.of(F.GENERATORS)),
            ("rewrite_nullish_coalescing", FeatureSet.of(F.NULLISH_COALESCING))]
        assert all(e.code is V.UNSUPPORTED_FEATURE_REMAINS for e in errors)

    def test_target_level_is_respected(self):
        script = parse("var v = a ?? b;")
        assert post_transpile_check(CompilationUnit([script], LanguageLevel.ES2020)) == []

    def test_disabled_generators(self):
        script = parse("function* g() { yield 1; }", "g.js")
        with pytest.raises(PipelineError) as info:
            run_pipeline(CompilationUnit([script], LanguageLevel.ES5), disabled={"rewrite_generators"})
        assert str(info.value) == ("pass=rewrite_generators script=g.js code=UNSUPPORTED_FEATURE_REMAINS "
                                   "features=[GENERATORS]")


def test_error_text():
    e = ValidationError("p", "a.js", V.REINTRODUCED_FEATURE, FeatureSet.of(F.CLASSES, F.OPTIONAL_CHAINING))
    assert str(e) == "pass=p script=a.js code=REINTRODUCED_FEATURE features=[CLASSES, OPTIONAL_CHAINING]"
    assert str(replace(e, detail="why")).endswith(" (why)")


def test_validate_mode_accepts_every_real_run(mixed_corpus):
    scripts = [parse(src, name) for name, src in mixed_corpus]
    for mode in Mode:
        unit = CompilationUnit([s.copy() for s in scripts], LanguageLevel.ES5, mode, validate=True)
        run_pipeline(unit)
        assert all(s.feature_set == EMPTY for s in unit.scripts)
    assert print_script(scripts[0])
