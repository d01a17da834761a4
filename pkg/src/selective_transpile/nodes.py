"""AST node model, script roots carrying the feature-set attribute, traversal."""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Optional, Union

from .features import EMPTY, Feature, FeatureSet


class Span(NamedTuple):
    line: int
    col: int
    offset: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NO_SPAN = Span(0, 0, 0)


class NodeKind(enum.Enum):
    SCRIPT = enum.auto()
    VAR_DECL = enum.auto()
    LET_DECL = enum.auto()
    CONST_DECL = enum.auto()
    DECLARATOR = enum.auto()
    FUNCTION_DECL = enum.auto()
    FUNCTION_EXPR = enum.auto()
    ARROW_FUNCTION = enum.auto()
    CLASS_DECL = enum.auto()
    METHOD = enum.auto()
    PARAM_LIST = enum.auto()
    PARAM = enum.auto()
    DEFAULT_PARAM = enum.auto()
    REST_PARAM = enum.auto()
    BLOCK = enum.auto()
    IF = enum.auto()
    WHILE = enum.auto()
    FOR = enum.auto()
    SWITCH = enum.auto()
    CASE = enum.auto()
    BREAK = enum.auto()
    CONTINUE = enum.auto()
    RETURN = enum.auto()
    EXPR_STMT = enum.auto()
    THROW = enum.auto()
    TRY_CATCH = enum.auto()
    EMPTY = enum.auto()
    ASSIGN = enum.auto()
    BINARY_OP = enum.auto()
    UNARY_OP = enum.auto()
    CALL = enum.auto()
    NEW = enum.auto()
    MEMBER_ACCESS = enum.auto()
    INDEX_ACCESS = enum.auto()
    OPTIONAL_CHAIN = enum.auto()
    NULLISH = enum.auto()
    CONDITIONAL = enum.auto()
    IDENTIFIER = enum.auto()
    NUMBER_LIT = enum.auto()
    STRING_LIT = enum.auto()
    BOOL_LIT = enum.auto()
    NULL_LIT = enum.auto()
    UNDEFINED_LIT = enum.auto()
    ARRAY_LIT = enum.auto()
    OBJECT_LIT = enum.auto()
    PROPERTY = enum.auto()
    TEMPLATE_LIT = enum.auto()
    TEMPLATE_CHUNK = enum.auto()
    SPREAD = enum.auto()
    YIELD = enum.auto()
    AWAIT = enum.auto()
    THIS = enum.auto()
    SUPER = enum.auto()


class NodeFlag(enum.Flag):
    NONE = 0
    ASYNC = enum.auto()
    GENERATOR = enum.auto()
    STATIC = enum.auto()
    # link of an optional chain that is itself `?.`
    OPTIONAL = enum.auto()
    POSTFIX = enum.auto()


K = NodeKind

# (min, max) child counts; max None = variadic
ARITY: dict[NodeKind, tuple[int, Optional[int]]] = {
    K.SCRIPT: (0, None),
    K.VAR_DECL: (1, None),
    K.LET_DECL: (1, None),
    K.CONST_DECL: (1, None),
    K.DECLARATOR: (1, 2),
    K.FUNCTION_DECL: (2, 2),
    K.FUNCTION_EXPR: (2, 2),
    K.ARROW_FUNCTION: (2, 2),
    K.CLASS_DECL: (1, None),
    K.METHOD: (2, 2),
    K.PARAM_LIST: (0, None),
    K.PARAM: (0, 0),
    K.DEFAULT_PARAM: (1, 1),
    K.REST_PARAM: (0, 0),
    K.BLOCK: (0, None),
    K.IF: (2, 3),
    K.WHILE: (2, 2),
    K.FOR: (4, 4),
    K.SWITCH: (1, None),
    K.CASE: (1, None),
    K.BREAK: (0, 0),
    K.CONTINUE: (0, 0),
    K.RETURN: (0, 1),
    K.EXPR_STMT: (1, 1),
    K.THROW: (1, 1),
    K.TRY_CATCH: (3, 4),
    K.EMPTY: (0, 0),
    K.ASSIGN: (2, 2),
    K.BINARY_OP: (2, 2),
    K.UNARY_OP: (1, 1),
    K.CALL: (1, None),
    K.NEW: (1, None),
    K.MEMBER_ACCESS: (1, 1),
    K.INDEX_ACCESS: (2, 2),
    K.OPTIONAL_CHAIN: (1, 1),
    K.NULLISH: (2, 2),
    K.CONDITIONAL: (3, 3),
    K.IDENTIFIER: (0, 0),
    K.NUMBER_LIT: (0, 0),
    K.STRING_LIT: (0, 0),
    K.BOOL_LIT: (0, 0),
    K.NULL_LIT: (0, 0),
    K.UNDEFINED_LIT: (0, 0),
    K.ARRAY_LIT: (0, None),
    K.OBJECT_LIT: (0, None),
    K.PROPERTY: (1, 1),
    K.TEMPLATE_LIT: (1, None),
    K.TEMPLATE_CHUNK: (0, 0),
    K.SPREAD: (1, 1),
    K.YIELD: (0, 1),
    K.AWAIT: (1, 1),
    K.THIS: (0, 0),
    K.SUPER: (0, 0),
}

# kinds whose token_value is mandatory
VALUED = {
    K.IDENTIFIER, K.NUMBER_LIT, K.STRING_LIT, K.BOOL_LIT, K.TEMPLATE_CHUNK,
    K.PARAM, K.DEFAULT_PARAM, K.REST_PARAM, K.FUNCTION_DECL, K.CLASS_DECL,
    K.METHOD, K.MEMBER_ACCESS, K.PROPERTY, K.ASSIGN, K.BINARY_OP, K.UNARY_OP,
}

FUNCTION_KINDS = frozenset({K.FUNCTION_DECL, K.FUNCTION_EXPR, K.METHOD, K.ARROW_FUNCTION})
DECL_KINDS = frozenset({K.VAR_DECL, K.LET_DECL, K.CONST_DECL})
LOOP_KINDS = frozenset({K.WHILE, K.FOR})


class Node:
    """A mutable AST node.

    ``value`` holds identifier names, literal text, operator spellings and
    function/method/property names depending on ``kind``.
    """

    __slots__ = ("kind", "children", "value", "span", "flags")

    def __init__(
        self,
        kind: NodeKind,
        children: Optional[list["Node"]] = None,
        value: Optional[str] = None,
        span: Span = NO_SPAN,
        flags: NodeFlag = NodeFlag.NONE,
    ) -> None:
        self.kind = kind
        self.children = children if children is not None else []
        self.value = value
        self.span = span
        self.flags = flags

    def has(self, flag: NodeFlag) -> bool:
        return bool(self.flags & flag)

    def __repr__(self) -> str:
        bits = [self.kind.name]
        if self.value is not None:
            bits.append(repr(self.value))
        if self.flags:
            bits.append(str(self.flags).replace("NodeFlag.", ""))
        if self.children:
            bits.append("[" + ", ".join(map(repr, self.children)) + "]")
        return "(" + " ".join(bits) + ")"


def mk(kind: NodeKind, *children: Node, value: Optional[str] = None,
       span: Span = NO_SPAN, flags: NodeFlag = NodeFlag.NONE) -> Node:
    return Node(kind, list(children), value, span, flags)


def ident(name: str, span: Span = NO_SPAN) -> Node:
    return Node(K.IDENTIFIER, [], name, span)


class VisitAction(enum.Enum):
    CONTINUE = 0
    SKIP_SUBTREE = 1


def traverse(root: Node, visitor: Callable[[Node], Optional[VisitAction]]) -> int:
    """Depth-first pre-order traversal; returns the number of nodes visited."""
    count = 0
    stack = [root]
    skip = VisitAction.SKIP_SUBTREE
    while stack:
        node = stack.pop()
        count += 1
        if visitor(node) is skip:
            continue
        if node.children:
            stack.extend(reversed(node.children))
    return count


def iter_nodes(root: Node) -> Iterator[Node]:
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        if node.children:
            stack.extend(reversed(node.children))


Replacement = Union[None, Node, list[Node]]


def rewrite(root: Node, fn: Callable[[Node], Replacement]) -> int:
    """Post-order rewrite.

    ``fn`` is applied to each node below ``root`` after its subtree has been
    processed. Returning a node replaces it; returning a list splices the
    nodes into the parent's child list; ``None`` keeps it. Returns the number
    of nodes visited.
    """
    count = 1
    children = root.children
    i = 0
    while i < len(children):
        child = children[i]
        count += rewrite(child, fn)
        out = fn(child)
        if out is None:
            i += 1
        elif isinstance(out, Node):
            children[i] = out
            i += 1
        else:
            children[i:i + 1] = out
            i += len(out)
    return count


# ---------------------------------------------------------------------------
# feature anchors

_F = Feature
_FUNCTION_LIKE = (K.FUNCTION_DECL, K.FUNCTION_EXPR, K.METHOD, K.ARROW_FUNCTION)
_SIMPLE_ANCHORS = {
    K.OPTIONAL_CHAIN: _F.OPTIONAL_CHAINING.bit,
    K.NULLISH: _F.NULLISH_COALESCING.bit,
    K.CLASS_DECL: _F.CLASSES.bit,
    K.TEMPLATE_LIT: _F.TEMPLATE_LITERALS.bit,
    K.DEFAULT_PARAM: _F.DEFAULT_PARAMETERS.bit,
    K.REST_PARAM: _F.REST_PARAMETERS.bit,
    K.SPREAD: _F.SPREAD_EXPRESSIONS.bit,
    K.LET_DECL: _F.BLOCK_SCOPED_DECLARATIONS.bit,
    K.CONST_DECL: _F.BLOCK_SCOPED_DECLARATIONS.bit,
}


def anchor_mask(n: Node) -> int:
    """Bitmask of the features ``n`` is the syntactic anchor of."""
    kind = n.kind
    simple = _SIMPLE_ANCHORS.get(kind)
    if simple is not None:
        return simple
    if kind in _FUNCTION_LIKE:
        mask = _F.ARROW_FUNCTIONS.bit if kind is K.ARROW_FUNCTION else 0
        if n.flags & NodeFlag.ASYNC:
            mask |= _F.ASYNC_FUNCTIONS.bit
        if n.flags & NodeFlag.GENERATOR:
            mask |= _F.GENERATORS.bit
        return mask
    if kind is K.BINARY_OP:
        return _F.EXPONENT_OPERATOR.bit if n.value == "**" else 0
    if kind is K.ASSIGN:
        return _F.EXPONENT_OPERATOR.bit if n.value == "**=" else 0
    return 0


def is_feature_node(n: Node, f: Feature) -> bool:
    return bool(anchor_mask(n) & f.bit)


class _Counter:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.count = 0

    def bump(self) -> None:
        with self._lock:
            self.count += 1

    def reset(self) -> None:
        with self._lock:
            self.count = 0


# every full rescan bumps this; used to prove production mode does not rescan
scan_counter = _Counter()


def scan_features(root: Node) -> FeatureSet:
    """Union of the features anchored anywhere in the tree."""
    scan_counter.bump()
    mask = 0
    stack = [root]
    while stack:
        node = stack.pop()
        mask |= anchor_mask(node)
        if node.children:
            stack.extend(node.children)
    return FeatureSet.from_mask(mask)


# ---------------------------------------------------------------------------
# structure helpers


def clone(n: Node) -> Node:
    return Node(n.kind, [clone(c) for c in n.children], n.value, n.span, n.flags)


def same_tree(a: Node, b: Node) -> bool:
    """Structural equality ignoring spans."""
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if (x.kind is not y.kind or x.value != y.value or x.flags != y.flags
                or len(x.children) != len(y.children)):
            return False
        stack.extend(zip(x.children, y.children))
    return True


def check_structure(root: Node) -> list[str]:
    """Arity and value contract violations, as human-readable messages."""
    problems = []
    seen: set[int] = set()
    for node in iter_nodes(root):
        if id(node) in seen:
            problems.append(f"{node.kind.name} node shared by two parents")
            continue
        seen.add(id(node))
        lo, hi = ARITY[node.kind]
        n = len(node.children)
        if n < lo or (hi is not None and n > hi):
            problems.append(f"{node.kind.name} at {node.span} has {n} children")
        if node.kind in VALUED and node.value is None:
            problems.append(f"{node.kind.name} at {node.span} lacks a value")
        if node.kind is K.TEMPLATE_LIT and n % 2 == 0:
            problems.append(f"TEMPLATE_LIT at {node.span} has even child count")
    return problems


@dataclass(eq=False)
class ScriptNode:
    """A parsed script: the SCRIPT root plus its feature set attribute."""

    root: Node
    source_name: str
    feature_set: FeatureSet = EMPTY
    # runtime helpers referenced by lowered code, by helper id
    helpers_used: set[str] = field(default_factory=set)
    next_temp: int = 0

    def fresh_temp(self) -> str:
        name = f"$t{self.next_temp}"
        self.next_temp += 1
        return name

    def copy(self) -> "ScriptNode":
        return ScriptNode(clone(self.root), self.source_name, self.feature_set,
                          set(self.helpers_used), self.next_temp)
