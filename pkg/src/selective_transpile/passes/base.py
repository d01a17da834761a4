"""Pass descriptors, outcomes, errors and the shared rewriting walker."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..features import EMPTY, FeatureSet, LanguageLevel
from ..nodes import FUNCTION_KINDS, K, NO_SPAN, Node, ScriptNode, Span, anchor_mask, ident, mk


class PassErrorCode(enum.Enum):
    UNSUPPORTED_YIELD_POSITION = "UNSUPPORTED_YIELD_POSITION"
    UNSUPPORTED_CAPTURE = "UNSUPPORTED_CAPTURE"
    UNSUPPORTED_CONSTRUCT = "UNSUPPORTED_CONSTRUCT"


class PassError(Exception):
    def __init__(self, code: PassErrorCode, message: str, span: Span = NO_SPAN) -> None:
        super().__init__(f"{code.value} at {span.line}:{span.col}: {message}")
        self.code = code
        self.message = message
        self.span = span


@dataclass(frozen=True)
class TransformOutcome:
    changed: bool
    removed_features: FeatureSet = EMPTY
    added_features: FeatureSet = EMPTY
    helpers_used: frozenset[str] = frozenset()
    nodes_visited: int = 0


Transform = Callable[[ScriptNode], TransformOutcome]


@dataclass(frozen=True)
class PassDescriptor:
    id: str
    handled_features: FeatureSet
    feature_level: LanguageLevel
    synthetic_features: FeatureSet
    required_helpers: frozenset[str]
    transform: Transform = field(compare=False, repr=False)

    def problems(self) -> list[str]:
        """Descriptor invariant violations (empty when well-formed)."""
        out = []
        if not self.handled_features:
            out.append(f"{self.id}: handled_features is empty")
        for f in self.handled_features:
            if f.level is not self.feature_level:
                out.append(f"{self.id}: {f.name} is {f.level.name}, not {self.feature_level.name}")
        for g in self.synthetic_features:
            if g.level >= self.feature_level:
                out.append(f"{self.id}: synthetic {g.name} is not below {self.feature_level.name}")
        return out

    def check_outcome(self, outcome: TransformOutcome) -> list[str]:
        out = []
        if not outcome.removed_features.issubset(self.handled_features):
            out.append(f"{self.id}: removed {outcome.removed_features.names()} outside handled set")
        if not outcome.added_features.issubset(self.synthetic_features):
            out.append(f"{self.id}: added {outcome.added_features.names()} outside synthetic set")
        if not outcome.changed and (outcome.removed_features or outcome.added_features):
            out.append(f"{self.id}: unchanged outcome reports feature changes")
        return out


# ---------------------------------------------------------------------------
# small node builders shared by the passes

def undefined() -> Node:
    return mk(K.UNDEFINED_LIT)


def null() -> Node:
    return mk(K.NULL_LIT)


def num(x: int) -> Node:
    return mk(K.NUMBER_LIT, value=str(x))


def string(s: str) -> Node:
    return mk(K.STRING_LIT, value=s)


def member(obj: Node, name: str) -> Node:
    return mk(K.MEMBER_ACCESS, obj, value=name)


def call(callee: Node, *args: Node) -> Node:
    return mk(K.CALL, callee, *args)


def assign(target: Node, value: Node, op: str = "=") -> Node:
    return mk(K.ASSIGN, target, value, value=op)


def binary(op: str, a: Node, b: Node) -> Node:
    return mk(K.BINARY_OP, a, b, value=op)


def stmt(expr: Node) -> Node:
    return mk(K.EXPR_STMT, expr)


def var_decl(*pairs: tuple[str, Optional[Node]], kind: K = K.VAR_DECL) -> Node:
    decls = []
    for name, init in pairs:
        d = mk(K.DECLARATOR, ident(name))
        if init is not None:
            d.children.append(init)
        decls.append(d)
    return mk(kind, *decls)


def is_simple(n: Node) -> bool:
    """Side-effect-free and stable to evaluate twice."""
    return n.kind in (K.IDENTIFIER, K.THIS, K.NUMBER_LIT, K.STRING_LIT, K.BOOL_LIT,
                      K.NULL_LIT, K.UNDEFINED_LIT)


def body_to_block(fn: Node) -> Node:
    """Give an expression-bodied arrow a block body; returns the block."""
    body = fn.children[1]
    if body.kind is not K.BLOCK:
        body = mk(K.BLOCK, mk(K.RETURN, body, span=body.span), span=body.span)
        fn.children[1] = body
    return body


def mask_of(nodes) -> int:
    m = 0
    for n in nodes:
        m |= anchor_mask(n)
    return m


class ScopedRewriter:
    """Post-order rewrite that knows the enclosing function of every node.

    Subclasses override :meth:`leave`, which receives each node after its
    children and may return a replacement. Temporaries requested through
    :meth:`temp` are declared with one ``var`` at the top of the nearest
    enclosing function body (or the script).
    """

    def __init__(self, script: ScriptNode) -> None:
        self.script = script
        self.visited = 0
        self.frames: list[list[str]] = []
        self.functions: list[Node] = []
        self.found = 0  # feature-anchor mask of rewritten nodes
        self.preludes: dict[int, list[Node]] = {}

    def run(self) -> int:
        self.frames.append([])
        self._children(self.script.root)
        names = self.frames.pop()
        if names:
            self.script.root.children.insert(0, var_decl(*((n, None) for n in names)))
        return self.visited

    def temp(self) -> str:
        name = self.script.fresh_temp()
        self.frames[-1].append(name)
        return name

    @property
    def function(self) -> Optional[Node]:
        return self.functions[-1] if self.functions else None

    def _children(self, node: Node) -> None:
        children = node.children
        i = 0
        while i < len(children):
            child = children[i]
            out = self._visit(child)
            if out is None:
                i += 1
            elif isinstance(out, Node):
                children[i] = out
                i += 1
            else:
                children[i:i + 1] = out
                i += len(out)

    def _visit(self, node: Node):
        self.visited += 1
        if node.kind in FUNCTION_KINDS:
            self.frames.append([])
            self.functions.append(node)
            self.enter_function(node)
            self._children(node)
            self.functions.pop()
            names = self.frames.pop()
            head = self.preludes.pop(id(node), [])
            if names:
                head.insert(0, var_decl(*((n, None) for n in names)))
            if head:
                body_to_block(node).children[0:0] = head
        else:
            self._children(node)
        return self.leave(node)

    def add_prelude(self, fn: Node, statement: Node) -> None:
        """Queue ``statement`` for the top of ``fn``'s body once it is left."""
        self.preludes.setdefault(id(fn), []).append(statement)

    def enter_function(self, node: Node) -> None:
        pass

    def leave(self, node: Node):
        return None


def run_rewriter(rw: ScopedRewriter, handled: FeatureSet, synthetic: FeatureSet = EMPTY,
                 helpers: frozenset[str] = frozenset()) -> TransformOutcome:
    visited = rw.run()
    removed = FeatureSet.from_mask(rw.found) & handled
    if not rw.found:
        return TransformOutcome(False, nodes_visited=visited)
    return TransformOutcome(True, removed, synthetic, helpers, visited)
