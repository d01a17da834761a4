"""Async functions to generators driven by ``$asyncExecute``."""

from __future__ import annotations

from ..features import Feature, FeatureSet
from ..nodes import FUNCTION_KINDS, K, Node, NodeFlag, ScriptNode, clone, ident, mk
from .base import ScopedRewriter, TransformOutcome, call, member, var_decl
from .scopes import mentions_arguments, uses_outside_functions

HELPER = "$asyncExecute"


def _await_to_yield(stmts: list[Node]) -> None:
    stack = list(stmts)
    while stack:
        node = stack.pop()
        if node.kind is K.AWAIT:
            node.kind = K.YIELD
        if node.kind in FUNCTION_KINDS:
            continue
        stack.extend(node.children)


def _is_super_ref(n: Node) -> bool:
    return n.kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS) and n.children[0].kind is K.SUPER


class _Async(ScopedRewriter):
    def leave(self, node: Node):
        if node.kind not in FUNCTION_KINDS or not node.flags & NodeFlag.ASYNC:
            return None
        self.found |= Feature.ASYNC_FUNCTIONS.bit
        node.flags &= ~NodeFlag.ASYNC
        body = node.children[1]
        stmts = body.children if body.kind is K.BLOCK else [mk(K.RETURN, body, span=body.span)]
        _await_to_yield(stmts)
        hoisted = self.hoist_super(stmts)
        gen = mk(K.FUNCTION_EXPR, mk(K.PARAM_LIST), mk(K.BLOCK, *stmts), flags=NodeFlag.GENERATOR,
                 span=node.span)
        args = [gen]
        wants_args = mentions_arguments(stmts)
        if wants_args or uses_outside_functions(stmts, (K.THIS,)):
            args.append(mk(K.THIS))
        if wants_args:
            args.append(ident("arguments"))
        driver = call(ident(HELPER), *args)
        if node.kind is K.ARROW_FUNCTION:
            node.children[1] = driver
            if hoisted:
                home = next(f for f in reversed(self.functions) if f.kind is not K.ARROW_FUNCTION)
                self.add_prelude(home, hoisted)
        else:
            node.children[1] = mk(K.BLOCK, *([hoisted] if hoisted else []), mk(K.RETURN, driver),
                                  span=body.span)
        return None

    def hoist_super(self, stmts: list[Node]):
        """Read each ``super.x`` in the method itself, where ``super`` is valid."""
        pairs = []
        for n in uses_outside_functions(stmts, (K.CALL,)):
            callee = n.children[0]
            if _is_super_ref(callee):
                t = self.script.fresh_temp()
                pairs.append((t, clone(callee)))
                n.children[0:1] = [member(ident(t), "call"), mk(K.THIS)]
        for n in uses_outside_functions(stmts, (K.MEMBER_ACCESS, K.INDEX_ACCESS)):
            if _is_super_ref(n):
                t = self.script.fresh_temp()
                pairs.append((t, clone(n)))
                n.kind, n.value, n.children = K.IDENTIFIER, t, []
        return var_decl(*pairs) if pairs else None


def rewrite_async_functions(script: ScriptNode) -> TransformOutcome:
    rw = _Async(script)
    visited = rw.run()
    if not rw.found:
        return TransformOutcome(False, nodes_visited=visited)
    return TransformOutcome(True, FeatureSet.of(Feature.ASYNC_FUNCTIONS), FeatureSet.of(Feature.GENERATORS),
                            frozenset({HELPER}), visited)
