"""Class declarations to constructor functions and prototype assignments."""

from __future__ import annotations

from ..features import Feature, FeatureSet
from ..nodes import FUNCTION_KINDS, K, Node, NodeFlag, ScriptNode, clone, ident, mk
from .base import (PassError, PassErrorCode, ScopedRewriter, TransformOutcome, assign, call, member,
                   stmt)

HELPER = "$inherits"


def _static_name(n: Node) -> bool:
    while n.kind is K.MEMBER_ACCESS:
        n = n.children[0]
    return n.kind is K.IDENTIFIER


class _Classes(ScopedRewriter):
    def __init__(self, script: ScriptNode) -> None:
        super().__init__(script)
        self.inherits = False

    def leave(self, node: Node):
        if node.kind is not K.CLASS_DECL:
            return None
        self.found |= Feature.CLASSES.bit
        name = node.value
        heritage = node.children[0]
        parent = None if heritage.kind is K.EMPTY else heritage
        if parent is not None and not _static_name(parent):
            raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT,
                            "class heritage must be a name or a member path", heritage.span)
        ctor = None
        methods = []
        for m in node.children[1:]:
            if m.kind is not K.METHOD:
                raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT,
                                f"class member {m.kind.name} is outside the supported set", m.span)
            if m.value == "constructor" and not m.flags & NodeFlag.STATIC:
                ctor = m
            else:
                methods.append(m)
        if ctor is not None:
            params, body = ctor.children
        elif parent is not None:
            params = mk(K.PARAM_LIST)
            body = mk(K.BLOCK, stmt(call(member(clone(parent), "apply"), mk(K.THIS), ident("arguments"))))
        else:
            params, body = mk(K.PARAM_LIST), mk(K.BLOCK)
        if parent is not None and ctor is not None:
            _rewrite_super(body, parent, static=False, in_ctor=True)
        out = [mk(K.FUNCTION_DECL, params, body, value=name, span=node.span)]
        if parent is not None:
            self.inherits = True
            out.append(stmt(call(ident(HELPER), ident(name), clone(parent))))
        for m in methods:
            static = bool(m.flags & NodeFlag.STATIC)
            if parent is not None:
                _rewrite_super(m.children[1], parent, static=static, in_ctor=False)
            owner = ident(name) if static else member(ident(name), "prototype")
            flags = m.flags & (NodeFlag.GENERATOR | NodeFlag.ASYNC)
            fn = mk(K.FUNCTION_EXPR, *m.children, flags=flags, span=m.span)
            out.append(stmt(assign(member(owner, m.value), fn)))
        return out


def _rewrite_super(body: Node, parent: Node, static: bool, in_ctor: bool) -> None:
    """Replace ``super`` uses reachable without entering a non-arrow function."""
    stack = [body]
    while stack:
        n = stack.pop()
        for i, c in enumerate(n.children):
            if c.kind is K.CALL and c.children[0].kind is K.SUPER:
                if not in_ctor:
                    raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT, "super call outside a constructor", c.span)
                c.children[0:1] = [member(clone(parent), "call"), mk(K.THIS)]
            elif c.kind is K.CALL and c.children[0].kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS) \
                    and c.children[0].children[0].kind is K.SUPER:
                c.children[0].children[0] = _super_base(parent, static)
                c.children[0:1] = [member(c.children[0], "call"), mk(K.THIS)]
            elif c.kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS) and c.children[0].kind is K.SUPER:
                c.children[0] = _super_base(parent, static)
            elif c.kind is K.SUPER:
                raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT, "unsupported use of super", c.span)
            if c.kind in FUNCTION_KINDS and c.kind is not K.ARROW_FUNCTION:
                continue
            stack.append(c)


def _super_base(parent: Node, static: bool) -> Node:
    return clone(parent) if static else member(clone(parent), "prototype")


def rewrite_classes(script: ScriptNode) -> TransformOutcome:
    rw = _Classes(script)
    visited = rw.run()
    if not rw.found:
        return TransformOutcome(False, nodes_visited=visited)
    helpers = frozenset({HELPER}) if rw.inherits else frozenset()
    return TransformOutcome(True, FeatureSet.of(Feature.CLASSES), helpers_used=helpers, nodes_visited=visited)
