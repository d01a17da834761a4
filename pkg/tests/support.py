"""Shared helpers for the test suite."""

from __future__ import annotations

from pathlib import Path

from selective_transpile.codegen import print_script
from selective_transpile.evaluator import run
from selective_transpile.features import LanguageLevel
from selective_transpile.parser import parse
from selective_transpile.passes import BY_ID, PASSES
from selective_transpile.scheduler import CompilationUnit, Mode, run_pipeline

GOLDEN_DIR = Path(__file__).parent / "golden"


def golden_sources() -> list[tuple[str, str]]:
    return [(p.name, p.read_text(encoding="utf-8")) for p in sorted(GOLDEN_DIR.glob("*.js"))]


def apply_pass(pass_id: str, source: str, name: str = "t.js"):
    """Parse ``source``, run one pass directly, and return (script, outcome)."""
    script = parse(source, name)
    outcome = BY_ID[pass_id].transform(script)
    script.helpers_used |= outcome.helpers_used
    return script, outcome


def lowered_body(pass_id: str, source: str) -> str:
    """Printed tree after one pass, without the helper prelude."""
    script, _ = apply_pass(pass_id, source)
    return print_script(script, helpers=())


def transpile(source: str, target=LanguageLevel.ES5, mode=Mode.SELECTIVE, validate=False, name="t.js", **kw):
    script = parse(source, name)
    report = run_pipeline(CompilationUnit([script], target, mode, validate), **kw)
    return print_script(script), report


def same_behaviour(before: str, after: str) -> bool:
    a, b = run(before), run(after)
    kind = lambda e: None if e is None else e.split(":")[0]  # noqa: E731
    return a.logs == b.logs and kind(a.error) == kind(b.error)


def passes_through(last_id: str):
    """Every registry pass up to and including ``last_id``."""
    out = []
    for p in PASSES:
        out.append(p)
        if p.id == last_id:
            return out
    raise KeyError(last_id)
