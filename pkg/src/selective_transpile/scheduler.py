"""Runs the pass pipeline over a compilation unit with per-script gating."""

from __future__ import annotations

import enum
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .features import EMPTY, FeatureSet, LanguageLevel, features_of_level, intersects, set_minus, set_union
from .nodes import ScriptNode
from .passes import PASSES, PassDescriptor, PassError, TransformOutcome
from .validator import ValidationCode, ValidationError, post_transpile_check, validate_after_pass


class Mode(enum.Enum):
    SELECTIVE = "selective"
    LEGACY = "legacy"


@dataclass
class CompilationUnit:
    scripts: list[ScriptNode]
    target: LanguageLevel
    mode: Mode = Mode.SELECTIVE
    validate: bool = False

    def __post_init__(self) -> None:
        names = [s.source_name for s in self.scripts]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate script names in unit: {dupes}")


@dataclass
class TranspiledAwaySet:
    members: FeatureSet = EMPTY

    def add(self, features: FeatureSet) -> None:
        self.members = set_union(self.members, features)


@dataclass
class PassStats:
    pass_id: str
    scripts_considered: int = 0
    scripts_skipped: int = 0
    scripts_transformed: int = 0
    nodes_visited: int = 0
    wall_time: float = 0.0  # seconds

    @property
    def scripts_run(self) -> int:
        return self.scripts_considered - self.scripts_skipped


@dataclass
class RunReport:
    per_pass: list[PassStats]
    total_wall_time: float
    mode: Mode
    target: LanguageLevel
    transpiled_away: FeatureSet = EMPTY

    @property
    def considered(self) -> int:
        return sum(p.scripts_considered for p in self.per_pass)

    @property
    def skipped(self) -> int:
        return sum(p.scripts_skipped for p in self.per_pass)

    @property
    def transformed(self) -> int:
        return sum(p.scripts_transformed for p in self.per_pass)

    @property
    def nodes_visited(self) -> int:
        return sum(p.nodes_visited for p in self.per_pass)

    @property
    def skip_ratio(self) -> float:
        considered = self.considered
        return self.skipped / considered if considered else 0.0

    def stats(self, pass_id: str) -> PassStats:
        return next(p for p in self.per_pass if p.pass_id == pass_id)


class PipelineError(Exception):
    """A pass failure or a safeguard violation; aborts the run."""

    def __init__(self, code: str, pass_id: str, script: str, message: str = "",
                 errors: Sequence[ValidationError] = ()) -> None:
        self.code = code
        self.pass_id = pass_id
        self.script = script
        self.message = message
        self.errors = list(errors)
        super().__init__(self.describe())

    @classmethod
    def from_validation(cls, errors: Sequence[ValidationError]) -> "PipelineError":
        first = errors[0]
        return cls(first.code.value, first.pass_id, first.script, str(first), errors)

    @property
    def features(self) -> FeatureSet:
        out = EMPTY
        for e in self.errors:
            out = out | e.features
        return out

    def describe(self) -> str:
        if self.errors:
            return "\n".join(str(e) for e in self.errors)
        return f"pass={self.pass_id} script={self.script} code={self.code} {self.message}".rstrip()


def does_script_have_any_of_these_features(script: ScriptNode, features: FeatureSet,
                                           mode: Mode = Mode.SELECTIVE) -> bool:
    if mode is Mode.LEGACY:
        return True
    return intersects(script.feature_set, features)


def gate(pass_: PassDescriptor, script: ScriptNode, target: LanguageLevel, mode: Mode = Mode.SELECTIVE) -> bool:
    needed = set_minus(pass_.handled_features, features_of_level(target))
    if not needed:
        return False
    return does_script_have_any_of_these_features(script, needed, mode)


def run_pipeline(unit: CompilationUnit, passes: Optional[Iterable[PassDescriptor]] = None, workers: int = 1,
                 disabled: Iterable[str] = (), propagate_synthetic: bool = True) -> RunReport:
    """Lower every script of ``unit`` in place.

    ``disabled`` and ``propagate_synthetic`` exist for tests that need to
    provoke the end-of-run safeguard.
    """
    passes = list(PASSES if passes is None else passes)
    disabled = set(disabled)
    supported = features_of_level(unit.target)
    away = TranspiledAwaySet()
    per_pass: list[PassStats] = []
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    start = time.perf_counter()
    try:
        for p in passes:
            stats = PassStats(p.id)
            per_pass.append(stats)
            if p.id in disabled:
                continue
            in_range = bool(set_minus(p.handled_features, supported))
            before = {s.source_name: s.feature_set for s in unit.scripts} if unit.validate else {}
            t0 = time.perf_counter()

            def step(script: ScriptNode, p=p) -> Optional[TransformOutcome]:
                if not gate(p, script, unit.target, unit.mode):
                    return None
                try:
                    outcome = p.transform(script)
                except PassError as e:
                    raise PipelineError(e.code.value, p.id, script.source_name,
                                        f"at {e.span}: {e.message}") from e
                added = outcome.added_features if propagate_synthetic else EMPTY
                back = added & away.members
                if back:
                    raise PipelineError.from_validation([ValidationError(
                        p.id, script.source_name, ValidationCode.REINTRODUCED_FEATURE, back)])
                # the scheduler, not the pass, owns the feature-set write
                script.feature_set = set_union(set_minus(script.feature_set, outcome.removed_features), added)
                script.helpers_used |= outcome.helpers_used
                return outcome

            results = list(pool.map(step, unit.scripts)) if pool else [step(s) for s in unit.scripts]
            stats.wall_time = time.perf_counter() - t0
            for outcome in results:
                if in_range:
                    stats.scripts_considered += 1
                if outcome is None:
                    if in_range:
                        stats.scripts_skipped += 1
                    continue
                stats.nodes_visited += outcome.nodes_visited
                if outcome.changed:
                    stats.scripts_transformed += 1
            away.add(set_minus(p.handled_features, supported))
            if unit.validate:
                errors = validate_after_pass(unit, p, away, before)
                if errors:
                    raise PipelineError.from_validation(errors)
            else:
                for s in unit.scripts:
                    back = s.feature_set & away.members
                    if back:
                        raise PipelineError.from_validation([ValidationError(
                            p.id, s.source_name, ValidationCode.REINTRODUCED_FEATURE, back)])
    finally:
        if pool:
            pool.shutdown()
    errors = post_transpile_check(unit, passes)
    if errors:
        raise PipelineError.from_validation(errors)
    return RunReport(per_pass, time.perf_counter() - start, unit.mode, unit.target, away.members)


def emit_report(report: RunReport) -> dict:
    """The stats document, with a fixed field order."""
    return {
        "mode": report.mode.value,
        "target": report.target.flag,
        "total_wall_time_ms": report.total_wall_time * 1000.0,
        "skip_ratio": report.skip_ratio,
        "passes": [
            {
                "id": p.pass_id,
                "considered": p.scripts_considered,
                "skipped": p.scripts_skipped,
                "transformed": p.scripts_transformed,
                "nodes_visited": p.nodes_visited,
                "wall_time_ms": p.wall_time * 1000.0,
            }
            for p in report.per_pass
        ],
    }
