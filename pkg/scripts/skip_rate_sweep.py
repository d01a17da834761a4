#!/usr/bin/env python3
"""Measured and analytic skip ratio as feature density and target vary.

    python scripts/skip_rate_sweep.py --count 300 --targets es5 es2015 es2017
"""

from __future__ import annotations

import argparse
import csv
import sys

from selective_transpile.corpus import CorpusSpec, analytic_skips, generate_corpus
from selective_transpile.features import ALL_FEATURES, LanguageLevel
from selective_transpile.parser import parse
from selective_transpile.scheduler import CompilationUnit, run_pipeline


def sweep(count: int, seed: int, targets: list[LanguageLevel]):
    for k in range(len(ALL_FEATURES) + 1):
        corpus = generate_corpus(CorpusSpec(count, (k, k), seed=seed))
        for target in targets:
            scripts = [parse(g.source, g.name) for g in corpus]
            report = run_pipeline(CompilationUnit(scripts, target))
            skipped, considered = analytic_skips([g.features for g in corpus], target)
            yield {
                "features_per_script": k,
                "target": target.flag,
                "considered": report.considered,
                "skipped": report.skipped,
                "skip_ratio": round(report.skip_ratio, 4),
                "analytic_ratio": round(skipped / considered, 4) if considered else 0.0,
                "exact": (report.skipped, report.considered) == (skipped, considered),
            }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--targets", nargs="+", default=["es5"], choices=[lv.flag for lv in LanguageLevel])
    args = ap.parse_args()
    rows = list(sweep(args.count, args.seed, [LanguageLevel.parse(t) for t in args.targets]))
    w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    return 0 if all(r["exact"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
