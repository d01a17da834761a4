"""let/const to var, renaming bindings that would collide once hoisted."""

from __future__ import annotations

from dataclasses import dataclass

from ..features import Feature, FeatureSet
from ..nodes import FUNCTION_KINDS, K, Node, ScriptNode, iter_nodes, traverse
from .base import PassError, PassErrorCode, TransformOutcome, undefined
from .scopes import FreshNames, occurrences, param_names, var_names

_LEXICAL = (K.LET_DECL, K.CONST_DECL)


@dataclass
class _Binding:
    decl: Node        # the LET_DECL/CONST_DECL statement
    declarator: Node
    scope: list[Node]
    in_loop: bool


def _collect(stmts: list[Node]) -> tuple[list[_Binding], list[Node]]:
    """Lexical bindings of one function scope in source order, plus nested functions."""
    bindings: list[_Binding] = []
    functions: list[Node] = []

    def declare(s: Node, scope: list[Node], in_loop: bool) -> None:
        for d in s.children:
            bindings.append(_Binding(s, d, scope, in_loop))

    def walk_list(lst: list[Node], scope: list[Node], in_loop: bool) -> None:
        for s in lst:
            if s.kind in _LEXICAL:
                declare(s, scope, in_loop)
            walk(s, in_loop)

    def walk(n: Node, in_loop: bool) -> None:
        kind = n.kind
        if kind in FUNCTION_KINDS:
            functions.append(n)
            return
        if kind is K.BLOCK:
            walk_list(n.children, n.children, in_loop)
            return
        if kind is K.SWITCH:
            walk(n.children[0], in_loop)
            cases = n.children[1:]
            for case in cases:
                walk(case.children[0], in_loop)
                for s in case.children[1:]:
                    if s.kind in _LEXICAL:
                        declare(s, cases, in_loop)
                    walk(s, in_loop)
            return
        if kind is K.FOR:
            init = n.children[0]
            if init.kind in _LEXICAL:
                declare(init, n.children, True)
            for c in n.children:
                walk(c, True)
            return
        if kind is K.WHILE:
            walk(n.children[0], in_loop)
            walk(n.children[1], True)
            return
        for c in n.children:
            walk(c, in_loop)

    walk_list(stmts, stmts, False)
    return bindings, functions


def _identifier_count(stmts: list[Node], name: str) -> int:
    return sum(1 for s in stmts for n in iter_nodes(s) if n.kind is K.IDENTIFIER and n.value == name)


def _lower_scope(stmts: list[Node], claimed: set[str], fresh: FreshNames) -> list[Node]:
    bindings, functions = _collect(stmts)
    # latest first, so that of two clashing bindings the later one is renamed
    for b in reversed(bindings):
        name = b.declarator.children[0].value
        hits = list(occurrences(b.scope, name))
        if b.in_loop:
            for node, closure in hits:
                if closure:
                    raise PassError(PassErrorCode.UNSUPPORTED_CAPTURE,
                                    f"closure captures loop binding {name!r}", node.span)
        if name in claimed or len(hits) != _identifier_count(stmts, name):
            new = fresh.make(name)
            for node, _ in hits:
                node.value = new
            name = new
        claimed.add(name)
        if b.in_loop and len(b.declarator.children) == 1:
            b.declarator.children.append(undefined())
    for b in bindings:
        b.decl.kind = K.VAR_DECL
    return functions


def rewrite_block_scoped(script: ScriptNode) -> TransformOutcome:
    found = []
    visited = traverse(script.root, lambda n: found.append(n) if n.kind in _LEXICAL else None)
    if not found:
        return TransformOutcome(False, nodes_visited=visited)
    fresh = FreshNames(script.root)
    top = script.root.children
    pending = _lower_scope(top, var_names(top) | _function_decls(top), fresh)
    while pending:
        fn = pending.pop(0)
        body = fn.children[1]
        if body.kind is not K.BLOCK:
            pending.extend(_lower_scope([body], param_names(fn), fresh))
            continue
        claimed = param_names(fn) | var_names(body.children) | _function_decls(body.children) | {"arguments"}
        if fn.kind is K.FUNCTION_EXPR and fn.value:
            claimed.add(fn.value)
        pending.extend(_lower_scope(body.children, claimed, fresh))
    return TransformOutcome(True, FeatureSet.of(Feature.BLOCK_SCOPED_DECLARATIONS), nodes_visited=visited)


def _function_decls(stmts: list[Node]) -> set[str]:
    return {s.value for s in stmts if s.kind is K.FUNCTION_DECL}


