"""Default parameters, rest parameters and spread."""

from __future__ import annotations

from ..features import Feature, FeatureSet
from ..nodes import K, Node, ScriptNode, clone, ident, iter_nodes, mk
from .base import (PassError, PassErrorCode, ScopedRewriter, TransformOutcome, assign, binary,
                   body_to_block, call, is_simple, member, null, num, stmt, undefined, var_decl)
from .scopes import lexical_names, var_names

ARRAY_FROM = "$arrayFrom"
_ALIASES = ("$this", "$arguments")


def prologue_end(body: Node) -> int:
    """Index after the leading ``var $this = this;``-style alias declarations."""
    i = 0
    for s in body.children:
        if s.kind is K.VAR_DECL and all(d.children[0].value in _ALIASES for d in s.children):
            i += 1
        else:
            break
    return i


class _Defaults(ScopedRewriter):
    def enter_function(self, node: Node) -> None:
        params = node.children[0].children
        if not any(p.kind is K.DEFAULT_PARAM for p in params):
            return
        self.found |= Feature.DEFAULT_PARAMETERS.bit
        body = node.children[1]
        local = set()
        if body.kind is K.BLOCK:
            local = var_names(body.children) | lexical_names(body.children)
        guards = []
        for p in params:
            if p.kind is not K.DEFAULT_PARAM:
                continue
            default = p.children[0]
            clash = {n.value for n in iter_nodes(default) if n.kind is K.IDENTIFIER} & local
            if clash:
                raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT,
                                f"default for {p.value!r} refers to body-local {sorted(clash)[0]!r}", p.span)
            guards.append(mk(K.IF, binary("===", ident(p.value), undefined()),
                             stmt(assign(ident(p.value), default)), span=p.span))
            p.kind, p.children = K.PARAM, []
        block = body_to_block(node)
        at = prologue_end(block)
        block.children[at:at] = guards


def _array_of(parts: list[Node]) -> Node:
    """Build one array from plain arguments and SPREAD nodes, left to right."""
    segments: list[Node] = []
    plain: list[Node] = []
    for a in parts:
        if a.kind is K.SPREAD:
            if plain:
                segments.append(mk(K.ARRAY_LIT, *plain))
                plain = []
            segments.append(call(ident(ARRAY_FROM), a.children[0]))
        else:
            plain.append(a)
    if plain:
        segments.append(mk(K.ARRAY_LIT, *plain))
    if len(segments) == 1:
        return segments[0]
    return call(member(segments[0], "concat"), *segments[1:])


class _RestSpread(ScopedRewriter):
    def __init__(self, script: ScriptNode) -> None:
        super().__init__(script)
        self.spread = False

    def enter_function(self, node: Node) -> None:
        params = node.children[0].children
        if not params or params[-1].kind is not K.REST_PARAM:
            return
        if node.kind is K.ARROW_FUNCTION:
            raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT,
                            "rest parameter on an arrow function; lower arrows first", params[-1].span)
        self.found |= Feature.REST_PARAMETERS.bit
        rest = params.pop()
        slice_call = call(member(member(member(ident("Array"), "prototype"), "slice"), "call"),
                          ident("arguments"), num(len(params)))
        block = body_to_block(node)
        block.children.insert(prologue_end(block), var_decl((rest.value, slice_call)))

    def leave(self, node: Node):
        kind = node.kind
        if kind in (K.CALL, K.NEW) and any(a.kind is K.SPREAD for a in node.children[1:]):
            self.found |= Feature.SPREAD_EXPRESSIONS.bit
            self.spread = True
            return self.spread_call(node) if kind is K.CALL else self.spread_new(node)
        if kind is K.ARRAY_LIT and any(a.kind is K.SPREAD for a in node.children):
            self.found |= Feature.SPREAD_EXPRESSIONS.bit
            self.spread = True
            return _array_of(node.children)
        return None

    def spread_call(self, node: Node) -> Node:
        callee = node.children[0]
        args = _array_of(node.children[1:])
        if callee.kind is K.SUPER:
            raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT, "spread into super(); lower classes first",
                            node.span)
        if callee.kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS):
            obj = callee.children[0]
            if obj.kind is K.SUPER:
                raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT, "spread into a super method call",
                                node.span)
            if is_simple(obj):
                this = clone(obj)
            else:
                t = self.temp()
                callee.children[0] = assign(ident(t), obj)
                this = ident(t)
        else:
            this = null()
        return call(member(callee, "apply"), this, args)

    def spread_new(self, node: Node) -> Node:
        callee = node.children[0]
        args = _array_of([null()] + node.children[1:])
        bind = member(member(member(ident("Function"), "prototype"), "bind"), "apply")
        return mk(K.NEW, call(bind, callee, args))


def rewrite_default_parameters(script: ScriptNode) -> TransformOutcome:
    rw = _Defaults(script)
    visited = rw.run()
    if not rw.found:
        return TransformOutcome(False, nodes_visited=visited)
    return TransformOutcome(True, FeatureSet.of(Feature.DEFAULT_PARAMETERS), nodes_visited=visited)


def rewrite_rest_and_spread(script: ScriptNode) -> TransformOutcome:
    rw = _RestSpread(script)
    visited = rw.run()
    if not rw.found:
        return TransformOutcome(False, nodes_visited=visited)
    helpers = frozenset({ARRAY_FROM}) if rw.spread else frozenset()
    return TransformOutcome(True, FeatureSet.from_mask(rw.found), helpers_used=helpers, nodes_visited=visited)

