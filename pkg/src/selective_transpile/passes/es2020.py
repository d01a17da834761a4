"""Optional chaining and nullish coalescing."""

from __future__ import annotations

from ..features import Feature, FeatureSet
from ..nodes import K, Node, NodeFlag, ScriptNode, clone, ident, mk
from .base import (ScopedRewriter, TransformOutcome, assign, binary, is_simple, member, null,
                   run_rewriter, undefined)

_LINKS = (K.MEMBER_ACCESS, K.INDEX_ACCESS, K.CALL)


def _nullish_test(test: Node, op: str = "==") -> Node:
    return binary(op, test, null())


class _OptionalChains(ScopedRewriter):
    def leave(self, node: Node):
        if node.kind is not K.OPTIONAL_CHAIN:
            return None
        self.found |= Feature.OPTIONAL_CHAINING.bit
        links = []
        cur = node.children[0]
        while cur.kind in _LINKS:
            links.append(cur)
            cur = cur.children[0]
        links.reverse()
        return self.build(cur, links)

    def capture(self, expr: Node) -> tuple[Node, Node]:
        """(expression to test, reference to reuse) evaluating ``expr`` once."""
        if is_simple(expr):
            return clone(expr), expr
        t = self.temp()
        return assign(ident(t), expr), ident(t)

    def build(self, expr: Node, links: list[Node]) -> Node:
        for i, link in enumerate(links):
            if not link.flags & NodeFlag.OPTIONAL:
                link.children[0] = expr
                expr = link
                continue
            link.flags &= ~NodeFlag.OPTIONAL
            rest = links[i + 1:]
            if link.kind is K.CALL and expr.kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS):
                return self.method_call(expr, link, rest)
            test, ref = self.capture(expr)
            link.children[0] = ref
            return mk(K.CONDITIONAL, _nullish_test(test), undefined(), self.build(link, rest))
        return expr

    def method_call(self, callee: Node, link: Node, rest: list[Node]) -> Node:
        obj = callee.children[0]
        key_simple = callee.kind is K.MEMBER_ACCESS or is_simple(callee.children[1])
        if is_simple(obj) and key_simple:
            link.children[0] = callee
            test = clone(callee)
        else:
            t_obj, t_fn = self.temp(), self.temp()
            callee.children[0] = assign(ident(t_obj), obj)
            test = assign(ident(t_fn), callee)
            link.children[0:1] = [member(ident(t_fn), "call"), ident(t_obj)]
        return mk(K.CONDITIONAL, _nullish_test(test), undefined(), self.build(link, rest))


class _Nullish(ScopedRewriter):
    def leave(self, node: Node):
        if node.kind is not K.NULLISH:
            return None
        self.found |= Feature.NULLISH_COALESCING.bit
        left, right = node.children
        if is_simple(left):
            return mk(K.CONDITIONAL, _nullish_test(left, "!="), clone(left), right)
        t = self.temp()
        return mk(K.CONDITIONAL, _nullish_test(assign(ident(t), left), "!="), ident(t), right)


def rewrite_optional_chaining(script: ScriptNode) -> TransformOutcome:
    return run_rewriter(_OptionalChains(script), FeatureSet.of(Feature.OPTIONAL_CHAINING))


def rewrite_nullish_coalescing(script: ScriptNode) -> TransformOutcome:
    return run_rewriter(_Nullish(script), FeatureSet.of(Feature.NULLISH_COALESCING))

