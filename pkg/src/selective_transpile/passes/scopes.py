"""Binding resolution for the passes that move declarations around.

The model is the one the evaluator implements: ``var`` names and top-level
function declarations belong to the enclosing function; ``let``, ``const``,
classes and nested function declarations belong to their block; a catch
parameter belongs to its handler.
"""

from __future__ import annotations

from typing import Iterator, Optional

from ..nodes import FUNCTION_KINDS, K, Node, iter_nodes

SCOPE_KINDS = (K.BLOCK, K.FOR, K.SWITCH, K.TRY_CATCH)


def var_names(stmts: list[Node], out: Optional[set[str]] = None) -> set[str]:
    """Names declared with ``var`` in a function body, not crossing functions."""
    out = set() if out is None else out
    for s in stmts:
        k = s.kind
        if k is K.VAR_DECL:
            out.update(d.children[0].value for d in s.children)
        elif k in (K.BLOCK, K.CASE):
            var_names(s.children, out)
        elif k in (K.IF, K.WHILE):
            var_names(s.children[1:], out)
        elif k is K.FOR:
            var_names([s.children[0], s.children[3]], out)
        elif k is K.SWITCH:
            var_names(s.children[1:], out)
        elif k is K.TRY_CATCH:
            var_names([s.children[0], s.children[2]] + s.children[3:], out)
    return out


def lexical_names(stmts: list[Node]) -> set[str]:
    """Names bound directly by a statement list: let/const, classes, functions."""
    out = set()
    for s in stmts:
        if s.kind in (K.LET_DECL, K.CONST_DECL):
            out.update(d.children[0].value for d in s.children)
        elif s.kind in (K.CLASS_DECL, K.FUNCTION_DECL):
            out.add(s.value)
    return out


def param_names(fn: Node) -> set[str]:
    return {p.value for p in fn.children[0].children}


def function_names(fn: Node) -> set[str]:
    """Every name a function binds for its own body."""
    names = param_names(fn)
    if fn.kind is not K.ARROW_FUNCTION:
        names.add("arguments")
    if fn.kind is K.FUNCTION_EXPR and fn.value:
        names.add(fn.value)
    body = fn.children[1]
    if body.kind is K.BLOCK:
        var_names(body.children, names)
        names |= lexical_names(body.children)
    return names


def switch_statements(n: Node) -> list[Node]:
    return [s for case in n.children[1:] for s in case.children[1:]]


def occurrences(scope: list[Node], name: str) -> Iterator[tuple[Node, bool]]:
    """IDENTIFIER nodes in ``scope`` that resolve to a binding of ``name``
    made at the level of ``scope`` itself.

    Yields ``(node, in_closure)`` where ``in_closure`` says whether the
    reference sits inside a function nested in the scope.
    """
    stack: list[tuple[Node, bool]] = [(n, False) for n in reversed(scope)]
    while stack:
        node, closure = stack.pop()
        kind = node.kind
        if kind is K.IDENTIFIER:
            if node.value == name:
                yield node, closure
            continue
        if kind in FUNCTION_KINDS:
            if name in function_names(node):
                continue
            body = node.children[1]
            inner = [c for p in node.children[0].children for c in p.children]
            inner += body.children if body.kind is K.BLOCK else [body]
            stack.extend((c, True) for c in reversed(inner))
            continue
        if kind is K.BLOCK:
            if name in lexical_names(node.children):
                continue
        elif kind is K.FOR:
            init = node.children[0]
            if init.kind in (K.LET_DECL, K.CONST_DECL) and name in lexical_names([init]):
                continue
        elif kind is K.SWITCH:
            stack.append((node.children[0], closure))
            if name not in lexical_names(switch_statements(node)):
                stack.extend((c, closure) for c in reversed(node.children[1:]))
            continue
        elif kind is K.TRY_CATCH:
            body, param, handler = node.children[:3]
            rest = [body] + ([] if param.value == name else [handler]) + node.children[3:]
            stack.extend((c, closure) for c in reversed(rest))
            continue
        if node.children:
            stack.extend((c, closure) for c in reversed(node.children))


def rename(scope: list[Node], old: str, new: str) -> int:
    hits = list(occurrences(scope, old))
    for node, _ in hits:
        node.value = new
    return len(hits)


def identifier_names(root: Node) -> set[str]:
    names = set()
    for n in iter_nodes(root):
        if n.kind is K.IDENTIFIER or n.kind in (K.PARAM, K.DEFAULT_PARAM, K.REST_PARAM):
            names.add(n.value)
        elif n.kind in (K.FUNCTION_DECL, K.FUNCTION_EXPR, K.CLASS_DECL) and n.value:
            names.add(n.value)
    return names


class FreshNames:
    """Generates ``name$n`` identifiers unused anywhere in a tree."""

    def __init__(self, root: Node) -> None:
        self.taken = identifier_names(root)

    def make(self, base: str) -> str:
        n = 1
        while f"{base}${n}" in self.taken:
            n += 1
        fresh = f"{base}${n}"
        self.taken.add(fresh)
        return fresh


def uses_outside_functions(root_children: list[Node], kinds: tuple[K, ...]) -> list[Node]:
    """Nodes of the given kinds reachable without entering a non-arrow function."""
    found = []
    stack = list(root_children)
    while stack:
        node = stack.pop()
        if node.kind in kinds:
            found.append(node)
        if node.kind in FUNCTION_KINDS and node.kind is not K.ARROW_FUNCTION:
            continue
        stack.extend(node.children)
    return found


def mentions_arguments(root_children: list[Node]) -> bool:
    return any(n.value == "arguments" for n in uses_outside_functions(root_children, (K.IDENTIFIER,)))
