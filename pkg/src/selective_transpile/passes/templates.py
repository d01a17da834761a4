"""Template literals to string concatenation."""

from __future__ import annotations

from ..features import Feature, FeatureSet
from ..nodes import K, Node, ScriptNode
from .base import ScopedRewriter, TransformOutcome, binary, run_rewriter, string


class _Templates(ScopedRewriter):
    def leave(self, node: Node):
        if node.kind is not K.TEMPLATE_LIT:
            return None
        self.found |= Feature.TEMPLATE_LITERALS.bit
        parts = node.children
        # the leading chunk is kept even when empty so `+` concatenates strings
        out = string(parts[0].value)
        for i in range(1, len(parts), 2):
            out = binary("+", out, parts[i])
            if parts[i + 1].value:
                out = binary("+", out, string(parts[i + 1].value))
        out.span = node.span
        return out


def rewrite_template_literals(script: ScriptNode) -> TransformOutcome:
    return run_rewriter(_Templates(script), FeatureSet.of(Feature.TEMPLATE_LITERALS))
