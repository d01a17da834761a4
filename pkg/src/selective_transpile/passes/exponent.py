"""Exponent operator to Math.pow."""

from __future__ import annotations

from ..features import Feature, FeatureSet
from ..nodes import K, Node, ScriptNode, clone, ident
from .base import ScopedRewriter, TransformOutcome, assign, call, is_simple, member, run_rewriter


def _pow(base: Node, exponent: Node) -> Node:
    return call(member(ident("Math"), "pow"), base, exponent)


class _Exponent(ScopedRewriter):
    def leave(self, node: Node):
        if node.kind is K.BINARY_OP and node.value == "**":
            self.found |= Feature.EXPONENT_OPERATOR.bit
            return _pow(*node.children)
        if node.kind is K.ASSIGN and node.value == "**=":
            self.found |= Feature.EXPONENT_OPERATOR.bit
            target, rhs = node.children
            return assign(target, _pow(self.reread(target), rhs))
        return None

    def reread(self, target: Node) -> Node:
        """A second read of ``target``, hoisting receiver and index as needed."""
        if target.kind is K.IDENTIFIER:
            return clone(target)
        obj = target.children[0]
        if not is_simple(obj):
            t = self.temp()
            target.children[0] = assign(ident(t), obj)
            obj = ident(t)
        read = clone(target)
        read.children[0] = clone(obj)
        if target.kind is K.INDEX_ACCESS:
            key = target.children[1]
            if not is_simple(key):
                t = self.temp()
                target.children[1] = assign(ident(t), key)
                key = ident(t)
            read.children[1] = clone(key)
        return read


def rewrite_exponential_operator(script: ScriptNode) -> TransformOutcome:
    return run_rewriter(_Exponent(script), FeatureSet.of(Feature.EXPONENT_OPERATOR))
