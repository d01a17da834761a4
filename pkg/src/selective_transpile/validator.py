"""Safeguards: per-pass AST validation and the end-of-run feature check."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping, Optional

from .features import EMPTY, FeatureSet, features_of_level
from .nodes import check_structure, scan_features

if TYPE_CHECKING:
    from .passes.base import PassDescriptor
    from .scheduler import CompilationUnit, TranspiledAwaySet


class ValidationCode(enum.Enum):
    UNREGISTERED_FEATURE = "UNREGISTERED_FEATURE"
    REINTRODUCED_FEATURE = "REINTRODUCED_FEATURE"
    MONOTONICITY_VIOLATION = "MONOTONICITY_VIOLATION"
    STRUCTURE_VIOLATION = "STRUCTURE_VIOLATION"
    UNSUPPORTED_FEATURE_REMAINS = "UNSUPPORTED_FEATURE_REMAINS"


@dataclass(frozen=True)
class ValidationError:
    pass_id: str
    script: str
    code: ValidationCode
    features: FeatureSet = EMPTY
    detail: str = field(default="", compare=False)

    def __str__(self) -> str:
        feats = ", ".join(self.features.names())
        text = f"pass={self.pass_id} script={self.script} code={self.code.value} features=[{feats}]"
        return f"{text} ({self.detail})" if self.detail else text


def _sorted(errors: list[ValidationError]) -> list[ValidationError]:
    return sorted(errors, key=lambda e: (e.script, e.features.names(), e.code.value))


def validate_after_pass(unit: "CompilationUnit", pass_: "PassDescriptor", transpiled_away: "TranspiledAwaySet",
                        before: Mapping[str, FeatureSet]) -> list[ValidationError]:
    """Check every script right after ``pass_`` finished over the unit.

    ``before`` maps script names to their feature sets before the pass ran.
    A feature is reported under one code only: membership in the
    transpiled-away set wins over the monotonicity rule.
    """
    errors = []
    retired = transpiled_away.members
    for script in unit.scripts:
        name = script.source_name
        rescan = scan_features(script.root)
        if rescan != script.feature_set:
            drift = (rescan - script.feature_set) | (script.feature_set - rescan)
            errors.append(ValidationError(pass_.id, name, ValidationCode.UNREGISTERED_FEATURE, drift,
                                          "feature set disagrees with the tree"))
        back = rescan & retired
        if back:
            errors.append(ValidationError(pass_.id, name, ValidationCode.REINTRODUCED_FEATURE, back))
        fresh = rescan - before.get(name, EMPTY) - retired
        too_new = FeatureSet(f for f in fresh if f.level >= pass_.feature_level)
        if too_new:
            errors.append(ValidationError(pass_.id, name, ValidationCode.MONOTONICITY_VIOLATION, too_new))
        problems = check_structure(script.root)
        if problems:
            errors.append(ValidationError(pass_.id, name, ValidationCode.STRUCTURE_VIOLATION, EMPTY,
                                          "; ".join(problems[:3])))
    return _sorted(errors)


def post_transpile_check(unit: "CompilationUnit",
                         passes: Optional[Iterable["PassDescriptor"]] = None) -> list[ValidationError]:
    """Every script must be expressible at the target level."""
    if passes is None:
        from .passes import PASSES as passes
    passes = list(passes)
    allowed = features_of_level(unit.target)
    errors = []
    for script in unit.scripts:
        leaked = scan_features(script.root) - allowed
        if not leaked:
            continue
        by_pass: dict[str, FeatureSet] = {}
        for f in leaked:
            owner = next((p.id for p in passes if f in p.handled_features), "<none>")
            by_pass[owner] = by_pass.get(owner, EMPTY) | FeatureSet.of(f)
        for owner, feats in by_pass.items():
            errors.append(ValidationError(owner, script.source_name, ValidationCode.UNSUPPORTED_FEATURE_REMAINS,
                                          feats))
    return _sorted(errors)
