"""Selective-versus-legacy benchmark over pre-parsed trees."""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from typing import Sequence

from .codegen import print_script
from .corpus import analytic_skips
from .features import LanguageLevel
from .nodes import ScriptNode
from .scheduler import CompilationUnit, Mode, RunReport, run_pipeline


@dataclass(frozen=True)
class BenchConfig:
    target: LanguageLevel = LanguageLevel.ES5
    reps: int = 3
    workers: int = 1


@dataclass
class ModeTimes:
    times: list[float] = field(default_factory=list)  # seconds per repetition

    @property
    def mean(self) -> float:
        return statistics.fmean(self.times) if self.times else 0.0


@dataclass
class BenchResult:
    config: BenchConfig
    script_count: int
    times: dict[Mode, ModeTimes]
    reports: dict[Mode, RunReport]
    analytic_skipped: int
    analytic_considered: int
    mismatched: list[str]

    @property
    def differential_ok(self) -> bool:
        return not self.mismatched

    @property
    def skips_exact(self) -> bool:
        r = self.reports[Mode.SELECTIVE]
        return (r.skipped, r.considered) == (self.analytic_skipped, self.analytic_considered)

    @property
    def reduction(self) -> float:
        """Fractional wall-time saving of SELECTIVE relative to LEGACY."""
        legacy = self.times[Mode.LEGACY].mean
        return 1.0 - self.times[Mode.SELECTIVE].mean / legacy if legacy else 0.0

    def to_json(self) -> dict:
        modes = {}
        for mode in Mode:
            t, r = self.times[mode], self.reports[mode]
            modes[mode.value] = {
                "mean_wall_time_ms": t.mean * 1000.0,
                "min_wall_time_ms": min(t.times) * 1000.0,
                "max_wall_time_ms": max(t.times) * 1000.0,
                "skip_ratio": r.skip_ratio,
                "skipped": r.skipped,
                "considered": r.considered,
                "transformed": r.transformed,
            }
        return {
            "target": self.config.target.flag,
            "reps": self.config.reps,
            "workers": self.config.workers,
            "scripts": self.script_count,
            "modes": modes,
            "analytic_skipped": self.analytic_skipped,
            "analytic_considered": self.analytic_considered,
            "skips_exact": self.skips_exact,
            "reduction": self.reduction,
            "differential_ok": self.differential_ok,
            "mismatched": self.mismatched,
        }

    def table(self) -> str:
        lines = [f"{'mode':<10} {'mean ms':>10} {'min ms':>10} {'max ms':>10} {'skipped':>9} {'considered':>10} "
                 f"{'skip ratio':>10}"]
        for mode in Mode:
            t, r = self.times[mode], self.reports[mode]
            lines.append(f"{mode.value:<10} {t.mean * 1e3:>10.1f} {min(t.times) * 1e3:>10.1f} "
                         f"{max(t.times) * 1e3:>10.1f} {r.skipped:>9} {r.considered:>10} {r.skip_ratio:>10.4f}")
        ratio = self.analytic_skipped / self.analytic_considered if self.analytic_considered else 0.0
        lines.append(f"analytic skipped: {self.analytic_skipped}/{self.analytic_considered} ({ratio:.4f}) "
                     f"{'matches' if self.skips_exact else 'DOES NOT MATCH'} measured")
        lines.append(f"selective saves {self.reduction * 100:.1f}% over {self.config.reps} reps, "
                     f"{self.script_count} scripts, target {self.config.target.flag}")
        lines.append("differential: " + ("identical" if self.differential_ok
                                         else f"DIFFERENTIAL_MISMATCH in {len(self.mismatched)} scripts"))
        return "\n".join(lines)


def run_bench(trees: Sequence[ScriptNode], config: BenchConfig = BenchConfig()) -> BenchResult:
    """Run both modes ``config.reps`` times on fresh copies of ``trees``.

    Parsing and copying stay outside the timed region. The mode order
    alternates between repetitions so that drift does not favour one side.
    """
    if config.reps < 1:
        raise ValueError("reps must be at least 1")
    times = {m: ModeTimes() for m in Mode}
    reports: dict[Mode, RunReport] = {}
    outputs: dict[Mode, list[str]] = {}
    mismatched: set[str] = set()
    for rep in range(config.reps):
        order = (Mode.SELECTIVE, Mode.LEGACY) if rep % 2 == 0 else (Mode.LEGACY, Mode.SELECTIVE)
        for mode in order:
            scripts = [t.copy() for t in trees]
            unit = CompilationUnit(scripts, config.target, mode)
            report = run_pipeline(unit, workers=config.workers)
            times[mode].times.append(report.total_wall_time)
            text = [print_script(s) for s in scripts]
            if mode in outputs:
                mismatched.update(s.source_name for s, a, b in zip(scripts, outputs[mode], text) if a != b)
            else:
                outputs[mode] = text
                reports[mode] = report
    mismatched.update(t.source_name for t, a, b in zip(trees, outputs[Mode.SELECTIVE], outputs[Mode.LEGACY])
                      if a != b)
    skipped, considered = analytic_skips([t.feature_set for t in trees], config.target)
    return BenchResult(config, len(trees), times, reports, skipped, considered, sorted(mismatched))
