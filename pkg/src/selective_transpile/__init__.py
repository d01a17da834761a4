"""Selective MiniES-to-ES5 transpiler with per-script feature gating."""

from .codegen import print_node, print_script
from .features import ALL_FEATURES, EMPTY, Feature, FeatureSet, LanguageLevel, features_of_level
from .lexer import ParseDiagnostic, ParseError
from .nodes import ScriptNode, scan_features
from .parser import parse
from .scheduler import (CompilationUnit, Mode, PassStats, PipelineError, RunReport, TranspiledAwaySet, emit_report,
                        gate, run_pipeline)
from .validator import ValidationCode, ValidationError, post_transpile_check, validate_after_pass

__all__ = [
    "ALL_FEATURES", "EMPTY", "CompilationUnit", "Feature", "FeatureSet", "LanguageLevel", "Mode", "ParseDiagnostic",
    "ParseError", "PassStats", "PipelineError", "RunReport", "ScriptNode", "TranspiledAwaySet", "ValidationCode",
    "ValidationError", "emit_report", "features_of_level", "gate", "parse", "post_transpile_check", "print_node",
    "print_script", "run_pipeline", "scan_features", "validate_after_pass",
]
__version__ = "0.1.0"
