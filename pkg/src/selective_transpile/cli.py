"""Command-line entry point: transpile, features, gen-corpus, bench."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bench import BenchConfig, run_bench
from .codegen import print_script
from .corpus import CorpusSpec, check_honesty, generate_corpus, write_corpus
from .features import LanguageLevel
from .lexer import ParseError
from .nodes import ScriptNode
from .parser import parse
from .scheduler import CompilationUnit, Mode, PipelineError, emit_report, run_pipeline

EXIT_OK, EXIT_PARSE, EXIT_PIPELINE = 0, 1, 2
LEVELS = [lv.flag for lv in LanguageLevel]


class _InputError(Exception):
    pass


def _expand(inputs: Sequence[str]) -> list[Path]:
    paths: list[Path] = []
    for raw in inputs:
        p = Path(raw)
        if p.is_dir():
            paths.extend(sorted(p.glob("*.js")))
        else:
            paths.append(p)
    return paths


def _load(inputs: Sequence[str]) -> list[ScriptNode]:
    """Parse every input; report all diagnostics before giving up."""
    scripts, failed = [], False
    seen: set[str] = set()
    for path in _expand(inputs):
        name = path.name
        if name in seen:
            raise _InputError(f"{path}: duplicate source name {name!r} in one unit")
        seen.add(name)
        try:
            source = path.read_text(encoding="utf-8")
        except OSError as e:
            raise _InputError(f"{path}: {e.strerror or e}") from e
        try:
            scripts.append(parse(source, name))
        except ParseError as e:
            failed = True
            for d in e.diagnostics:
                print(d.format(name), file=sys.stderr)
    if failed:
        raise _InputError("")
    return scripts


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.replace("..", "-").partition("-")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO..HI, got {text!r}") from None


def _print_pipeline_error(e: PipelineError) -> None:
    print(e.describe(), file=sys.stderr)


def cmd_transpile(args: argparse.Namespace) -> int:
    scripts = _load(args.inputs)
    unit = CompilationUnit(scripts, LanguageLevel.parse(args.target), Mode(args.mode), args.validate)
    try:
        report = run_pipeline(unit, workers=args.workers)
    except PipelineError as e:
        _print_pipeline_error(e)
        return EXIT_PIPELINE
    texts = [print_script(s) for s in scripts]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for s, text in zip(scripts, texts):
            (out / s.source_name).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write("".join(texts))
    if args.stats:
        Path(args.stats).write_text(json.dumps(emit_report(report), indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


def cmd_features(args: argparse.Namespace) -> int:
    for s in _load(args.inputs):
        names = s.feature_set.names()
        print(f"{s.source_name}: {', '.join(names) if names else '(none)'}")
    return EXIT_OK


def cmd_gen_corpus(args: argparse.Namespace) -> int:
    spec = CorpusSpec(args.count, args.features, args.seed, args.statements)
    scripts = generate_corpus(spec)
    if args.check:
        bad = check_honesty(scripts)
        if bad:
            print(f"generator produced dishonest feature sets: {', '.join(bad[:10])}", file=sys.stderr)
            return EXIT_PIPELINE
    write_corpus(scripts, Path(args.out))
    print(f"wrote {len(scripts)} scripts to {args.out}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    if args.inputs:
        trees = _load(args.inputs)
    else:
        spec = CorpusSpec(args.count, args.features, args.seed, args.statements)
        trees = [parse(g.source, g.name) for g in generate_corpus(spec)]
    config = BenchConfig(LanguageLevel.parse(args.target), args.reps, args.workers)
    try:
        result = run_bench(trees, config)
    except PipelineError as e:
        _print_pipeline_error(e)
        return EXIT_PIPELINE
    print(json.dumps(result.to_json(), indent=2) if args.json else result.table())
    if not result.differential_ok:
        print(f"DIFFERENTIAL_MISMATCH: {', '.join(result.mismatched[:10])}", file=sys.stderr)
        return EXIT_PIPELINE
    if not result.skips_exact:
        print("measured skip count differs from the analytic count", file=sys.stderr)
        return EXIT_PIPELINE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="selective-transpile",
                                 description="Lower MiniES to ES5, skipping passes a script cannot need.")
    sub = ap.add_subparsers(dest="command", required=True)

    def corpus_flags(p: argparse.ArgumentParser, count: int) -> None:
        p.add_argument("--count", type=int, default=count, help="number of scripts")
        p.add_argument("--features", type=_range, default=(1, 3), help="features per script, N or LO..HI")
        p.add_argument("--statements", type=_range, default=(8, 20), help="statements per script, N or LO..HI")
        p.add_argument("--seed", type=int, default=0)

    t = sub.add_parser("transpile", help="transpile files as one compilation unit")
    t.add_argument("inputs", nargs="+", help="source files or directories of *.js")
    t.add_argument("--target", choices=LEVELS, default="es5")
    t.add_argument("--mode", choices=[m.value for m in Mode], default="selective")
    t.add_argument("--validate", action="store_true", help="check the tree after every pass")
    t.add_argument("--out", help="output directory (default: standard output)")
    t.add_argument("--stats", help="write the run report as JSON here")
    t.add_argument("--workers", type=int, default=1)
    t.set_defaults(func=cmd_transpile)

    f = sub.add_parser("features", help="print the feature set of each script")
    f.add_argument("inputs", nargs="+")
    f.set_defaults(func=cmd_features)

    g = sub.add_parser("gen-corpus", help="write a seeded synthetic corpus")
    corpus_flags(g, 100)
    g.add_argument("--out", required=True)
    g.add_argument("--check", action="store_true", help="re-parse each file and compare feature sets")
    g.set_defaults(func=cmd_gen_corpus)

    b = sub.add_parser("bench", help="compare selective and legacy pipelines")
    b.add_argument("inputs", nargs="*", help="corpus files or directories (default: generate one)")
    corpus_flags(b, 1000)
    b.add_argument("--target", choices=LEVELS, default="es5")
    b.add_argument("--reps", type=int, default=3)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--json", action="store_true", help="print the result as JSON instead of a table")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _InputError as e:
        if str(e):
            print(str(e), file=sys.stderr)
        return EXIT_PARSE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
