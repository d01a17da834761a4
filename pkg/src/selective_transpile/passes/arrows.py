"""Arrow functions to function expressions."""

from __future__ import annotations

from ..features import Feature, FeatureSet
from ..nodes import FUNCTION_KINDS, K, Node, ScriptNode, ident, mk
from .base import PassError, PassErrorCode, ScopedRewriter, TransformOutcome, var_decl

THIS_ALIAS = "$this"
ARGS_ALIAS = "$arguments"


class _Arrows(ScopedRewriter):
    def __init__(self, script: ScriptNode) -> None:
        super().__init__(script)
        # per enclosing non-arrow function (script first): aliases it needs
        self.owners: list[tuple[Node, set[str]]] = [(script.root, set())]
        self.arrow_depth = 0

    def _visit(self, node: Node):
        if node.kind is K.ARROW_FUNCTION:
            self.arrow_depth += 1
            try:
                return super()._visit(node)
            finally:
                self.arrow_depth -= 1
        if node.kind in FUNCTION_KINDS:
            self.owners.append((node, set()))
            depth, self.arrow_depth = self.arrow_depth, 0
            out = super()._visit(node)
            self.arrow_depth = depth
            self.declare(*self.owners.pop())
            return out
        return super()._visit(node)

    def run(self) -> int:
        visited = super().run()
        self.declare(*self.owners.pop())
        return visited

    def declare(self, owner: Node, aliases: set[str]) -> None:
        if not aliases:
            return
        pairs = []
        if THIS_ALIAS in aliases:
            pairs.append((THIS_ALIAS, mk(K.THIS)))
        if ARGS_ALIAS in aliases:
            pairs.append((ARGS_ALIAS, ident("arguments")))
        body = owner if owner.kind is K.SCRIPT else owner.children[1]
        body.children.insert(0, var_decl(*pairs))

    def leave(self, node: Node):
        if self.arrow_depth:
            if node.kind is K.THIS:
                self.owners[-1][1].add(THIS_ALIAS)
                return ident(THIS_ALIAS)
            if node.kind is K.IDENTIFIER and node.value == "arguments":
                self.owners[-1][1].add(ARGS_ALIAS)
                return ident(ARGS_ALIAS)
            if node.kind is K.SUPER:
                raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT,
                                "super inside an arrow function; lower classes first", node.span)
        if node.kind is not K.ARROW_FUNCTION:
            return None
        self.found |= Feature.ARROW_FUNCTIONS.bit
        params, body = node.children
        if body.kind is not K.BLOCK:
            body = mk(K.BLOCK, mk(K.RETURN, body, span=body.span), span=body.span)
        return mk(K.FUNCTION_EXPR, params, body, flags=node.flags, span=node.span)


def rewrite_arrow_functions(script: ScriptNode) -> TransformOutcome:
    rw = _Arrows(script)
    visited = rw.run()
    if not rw.found:
        return TransformOutcome(False, nodes_visited=visited)
    return TransformOutcome(True, FeatureSet.of(Feature.ARROW_FUNCTIONS), nodes_visited=visited)
