"""Seeded synthetic corpora with exact, known feature sets."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .features import ALL_FEATURES, EMPTY, Feature, FeatureSet, LanguageLevel, features_of_level
from .parser import parse

F = Feature

# Each template uses exactly one feature. `{n}` is a per-script counter that
# keeps top-level names apart; `{k}` is a small seeded integer.
SNIPPETS: dict[Feature, tuple[str, ...]] = {
    F.OPTIONAL_CHAINING: (
        "var oc{n} = {{a: {{b: {k}}}}};\nlog(oc{n}?.a.b, oc{n}.z?.q);",
        "var om{n} = {{get: function () {{ return {k}; }}}};\nlog(om{n}.get?.(), om{n}.nope?.());",
        "var oi{n} = [null, {{v: {k}}}];\nlog(oi{n}[0]?.v, oi{n}[1]?.[\"v\"]);",
    ),
    F.NULLISH_COALESCING: (
        "var nl{n} = null;\nlog(nl{n} ?? {k}, (nl{n} ?? {{x: 1}}).x);",
        "function nf{n}() {{ return 0; }}\nlog(nf{n}() ?? {k});",
    ),
    F.ASYNC_FUNCTIONS: (
        "async function as{n}(v) {{\n  var r = await Promise.resolve(v);\n  log(r);\n  return r + 1;\n}}\n"
        "as{n}({k}).then(function (x) {{ log(x); }});",
        "var ao{n} = {{run: async function () {{ var a = await {k}; return a * 2; }}}};\n"
        "ao{n}.run().then(log);",
    ),
    F.EXPONENT_OPERATOR: (
        "var ex{n} = 2 ** {k};\nex{n} **= 2;\nlog(ex{n});",
        "var eo{n} = {{p: {k}}};\neo{n}.p **= 3;\nlog(eo{n}.p, (-2) ** 2);",
    ),
    F.ARROW_FUNCTIONS: (
        "var ar{n} = [1, 2, 3].map(v => v * {k});\nlog(ar{n});",
        "var at{n} = {{v: {k}, f: function () {{ return [1].map(x => x + this.v); }}}};\nlog(at{n}.f());",
        "var ab{n} = (a, b) => {{\n  var s = a + b;\n  return s * 2;\n}};\nlog(ab{n}({k}, 1));",
    ),
    F.CLASSES: (
        "class K{n} {{\n  constructor(v) {{ this.v = v; }}\n  twice() {{ return this.v * 2; }}\n"
        "  static make() {{ return new K{n}({k}); }}\n}}\nlog(K{n}.make().twice());",
        "function Base{n}() {{ this.b = {k}; }}\nBase{n}.prototype.m = function () {{ return this.b; }};\n"
        "class D{n} extends Base{n} {{\n  constructor() {{ super(); this.c = 1; }}\n"
        "  m() {{ return super.m() + this.c; }}\n}}\nlog(new D{n}().m(), new D{n}() instanceof Base{n});",
    ),
    F.TEMPLATE_LITERALS: (
        "var tp{n} = \"x\";\nlog(`v${{tp{n}}}-${{1 + {k}}}`);",
        "var tq{n} = {k};\nlog(`${{tq{n}}}${{tq{n} * 2}}`, `plain`);",
    ),
    F.DEFAULT_PARAMETERS: (
        "function df{n}(a, b = a * 2) {{ return a + b; }}\nlog(df{n}({k}), df{n}(1, 1));",
        "var dg{n} = function (x = {k}) {{ return x; }};\nlog(dg{n}(), dg{n}(7));",
    ),
    F.REST_PARAMETERS: (
        "function rs{n}(a, ...more) {{ return more.length + a; }}\nlog(rs{n}({k}, 2, 3));",
        "function rj{n}(...parts) {{ return parts.join(\"-\"); }}\nlog(rj{n}(\"a\", {k}));",
    ),
    F.SPREAD_EXPRESSIONS: (
        "var sp{n} = [1, {k}];\nlog(Math.max(...sp{n}), [0, ...sp{n}, 9]);",
        "var so{n} = {{add: function (a, b) {{ return a + b; }}}};\nlog(so{n}.add(...[{k}, 2]));",
    ),
    F.GENERATORS: (
        "function* gn{n}() {{\n  var i = 0;\n  while (i < {k}) {{\n    yield i;\n    i = i + 1;\n  }}\n}}\n"
        "var gi{n} = gn{n}();\nlog(gi{n}.next().value, gi{n}.next().done);",
        "function* gs{n}(a) {{\n  var got = yield a;\n  if (got > 1) {{\n    yield got * 2;\n  }}\n  return -1;\n}}\n"
        "var gt{n} = gs{n}({k});\nlog(gt{n}.next().value, gt{n}.next(3).value, gt{n}.next().value);",
    ),
    F.BLOCK_SCOPED_DECLARATIONS: (
        "let bs{n} = {k};\n{{\n  let bs{n} = 0;\n  log(bs{n});\n}}\nconst bc{n} = bs{n} + 1;\nlog(bc{n});",
        "function bf{n}() {{\n  const r = [];\n  for (let i = 0; i < {k}; i++) {{\n    r.push(i);\n  }}\n  return r;\n}}\n"
        "log(bf{n}());",
    ),
}

FILLER: tuple[str, ...] = (
    "var v{n} = {k} + 1;",
    "function h{n}(a) {{\n  return a * {k};\n}}",
    "var o{n} = {{a: {k}, b: [1, 2]}};\nlog(o{n}.b.length + o{n}.a);",
    "var s{n} = 0;\nfor (var i{n} = 0; i{n} < {k}; i{n}++) {{\n  s{n} = s{n} + i{n};\n}}\nlog(s{n});",
    "var w{n} = {k};\nwhile (w{n} > 0) {{\n  w{n} = w{n} - 1;\n}}",
    "if ({k} % 2 === 0) {{\n  log(\"even\");\n}} else {{\n  log(\"odd\");\n}}",
    "switch ({k}) {{\n  case 1:\n    log(\"one\");\n    break;\n  default:\n    log(\"many\");\n}}",
    "try {{\n  throw new Error(\"e{n}\");\n}} catch (err{n}) {{\n  log(err{n}.message);\n}}",
    "var q{n} = typeof v{n} === \"number\" ? \"num\" : \"other\";",
    "var p{n} = function (x) {{\n  return x ? x.length : -1;\n}};\nlog(p{n}(\"abc\"));",
)


@dataclass(frozen=True)
class CorpusSpec:
    script_count: int = 100
    features_per_script: tuple[int, int] = (1, 3)
    seed: int = 0
    statements_per_script: tuple[int, int] = (8, 20)

    def __post_init__(self) -> None:
        lo, hi = self.features_per_script
        if not 0 <= lo <= hi <= len(ALL_FEATURES):
            raise ValueError(f"features_per_script out of range: {self.features_per_script}")
        if not 0 <= self.statements_per_script[0] <= self.statements_per_script[1]:
            raise ValueError(f"bad statements_per_script: {self.statements_per_script}")
        if self.script_count < 0:
            raise ValueError("script_count must be non-negative")


@dataclass(frozen=True)
class GeneratedScript:
    name: str
    source: str
    features: FeatureSet = field(default=EMPTY)


def _script(spec: CorpusSpec, index: int) -> GeneratedScript:
    rng = random.Random(spec.seed * 1_000_003 + index)
    drawn = rng.sample(ALL_FEATURES, rng.randint(*spec.features_per_script))
    n = 0
    chunks = []
    for f in drawn:
        chunks.append(rng.choice(SNIPPETS[f]).format(n=n, k=rng.randint(1, 4)))
        n += 1
    budget = rng.randint(*spec.statements_per_script)
    while len(chunks) < budget:
        chunks.append(rng.choice(FILLER).format(n=n, k=rng.randint(1, 4)))
        n += 1
    rng.shuffle(chunks)
    return GeneratedScript(f"gen_{index:05d}.js", "\n".join(chunks) + "\n", FeatureSet(drawn))


def generate_corpus(spec: CorpusSpec) -> list[GeneratedScript]:
    return [_script(spec, i) for i in range(spec.script_count)]


def check_honesty(scripts: Iterable[GeneratedScript]) -> list[str]:
    """Names of generated scripts whose parsed feature set differs from the draw."""
    return [g.name for g in scripts if parse(g.source, g.name).feature_set != g.features]


def write_corpus(scripts: Sequence[GeneratedScript], out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for g in scripts:
        path = out_dir / g.name
        path.write_text(g.source, encoding="utf-8", newline="\n")
        paths.append(path)
    return paths


def analytic_skips(feature_sets: Iterable[FeatureSet], target: LanguageLevel,
                   passes: Optional[Sequence] = None) -> tuple[int, int]:
    """(skipped, considered) pairs predicted for a SELECTIVE run from feature sets alone."""
    if passes is None:
        from .passes import PASSES as passes
    supported = features_of_level(target)
    skipped = considered = 0
    for phi in feature_sets:
        for p in passes:
            needed = p.handled_features - supported
            if not needed:
                continue
            considered += 1
            if needed & phi:
                phi = (phi - p.handled_features) | p.synthetic_features
            else:
                skipped += 1
    return skipped, considered
