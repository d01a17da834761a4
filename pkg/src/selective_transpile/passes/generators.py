"""Generator functions to switch-based state machines.

The body of ``function* g(...)`` is split at every ``yield`` into numbered
states of a ``switch ($state)`` inside ``while (true)``; the step function
is handed to ``$makeIterator``. Declarations are hoisted to the outer
function so they survive between steps. Only statement-level yields inside
straight-line code, ``if`` and ``while`` are accepted.
"""

from __future__ import annotations

from typing import Optional

from ..features import Feature, FeatureSet
from ..nodes import FUNCTION_KINDS, K, Node, NodeFlag, ScriptNode, ident, mk
from .base import (PassError, PassErrorCode, ScopedRewriter, TransformOutcome, assign, num, stmt,
                   undefined, var_decl)
from .scopes import FreshNames, occurrences, rename

HELPER = "$makeIterator"
STATE, SENT, STEP_ARG, SELF, ARGS = "$state", "$sent", "$v", "$self", "$args"

_ALIAS_NAMES = ("$this", "$arguments")


def contains_yield(n: Node) -> bool:
    stack = [n]
    while stack:
        x = stack.pop()
        if x.kind is K.YIELD:
            return True
        if x.kind in FUNCTION_KINDS and x is not n:
            continue
        stack.extend(x.children)
    return False


def first_yield(n: Node) -> Node:
    stack = [n]
    while stack:
        x = stack.pop()
        if x.kind is K.YIELD:
            return x
        if x.kind in FUNCTION_KINDS and x is not n:
            continue
        stack.extend(reversed(x.children))
    return n


def _bad_yield(n: Node, why: str) -> PassError:
    return PassError(PassErrorCode.UNSUPPORTED_YIELD_POSITION, why, first_yield(n).span)


def _result(value: Node, done: bool) -> Node:
    return mk(K.RETURN, mk(K.OBJECT_LIT,
                           mk(K.PROPERTY, value, value="value"),
                           mk(K.PROPERTY, mk(K.BOOL_LIT, value="true" if done else "false"), value="done")))


def _set_state(label: int) -> Node:
    return stmt(assign(ident(STATE), num(label)))


def _is_prologue(s: Node, params: set[str]) -> bool:
    """Statements that must run when the generator is called, not on first next()."""
    if s.kind is K.IF and len(s.children) == 2:
        test, then = s.children
        if (test.kind is K.BINARY_OP and test.value == "===" and test.children[0].kind is K.IDENTIFIER
                and test.children[0].value in params and test.children[1].kind is K.UNDEFINED_LIT
                and then.kind is K.EXPR_STMT and then.children[0].kind is K.ASSIGN
                and then.children[0].value == "=" and then.children[0].children[0].kind is K.IDENTIFIER
                and then.children[0].children[0].value == test.children[0].value):
            return not contains_yield(s)
    if s.kind is K.VAR_DECL and len(s.children) == 1 and len(s.children[0].children) == 2:
        name = s.children[0].children[0].value
        init = s.children[0].children[1]
        if name in _ALIAS_NAMES:
            return True
        # var rest = Array.prototype.slice.call(arguments, n)
        if (init.kind is K.CALL and len(init.children) == 3 and init.children[1].kind is K.IDENTIFIER
                and init.children[1].value == "arguments" and init.children[0].kind is K.MEMBER_ACCESS
                and init.children[0].value == "call"):
            inner = init.children[0].children[0]
            return inner.kind is K.MEMBER_ACCESS and inner.value == "slice"
    return False


class _Machine:
    def __init__(self, fn: Node, fresh: FreshNames) -> None:
        self.fn = fn
        self.fresh = fresh
        self.cases: list[tuple[int, list[Node]]] = [(0, [])]
        self.next_label = 1
        self.vars: list[str] = []
        self.lets: list[str] = []
        self.functions: list[Node] = []
        self.loops: list[tuple[int, int]] = []
        self.uses_self = False
        self.uses_args = False
        # native constructs enclosing the statement being lowered
        self.native_loops = 0
        self.native_switches = 0

    # -- state plumbing -------------------------------------------------------

    def label(self) -> int:
        n = self.next_label
        self.next_label += 1
        return n

    def emit(self, s: Node) -> None:
        self.cases[-1][1].append(s)

    def mark(self, label: int) -> None:
        self.cases.append((label, []))

    def jump(self, label: int) -> list[Node]:
        return [_set_state(label), mk(K.CONTINUE)]

    def yield_point(self, y: Node) -> None:
        arg = y.children[0] if y.children else undefined()
        if contains_yield(arg):
            raise _bad_yield(arg, "nested yield")
        resume = self.label()
        self.emit(_set_state(resume))
        self.emit(_result(self.expr(arg), False))
        self.mark(resume)

    # -- compilation of statements that contain yields -------------------------

    def compile_body(self, stmts: list[Node]) -> None:
        self.vars.extend(_var_names_ordered(stmts))
        self.compile_list(stmts, top=True)
        last = self.cases[-1][1]
        if not last or last[-1].kind is not K.RETURN:
            self.emit(_result(undefined(), True))

    def compile_list(self, stmts: list[Node], top: bool) -> None:
        for s in stmts:
            if s.kind in (K.LET_DECL, K.CONST_DECL):
                for d in s.children:
                    self.hoist_lexical(stmts, d.children[0].value, top)
            elif s.kind is K.FUNCTION_DECL:
                if not top:
                    new = self.fresh.make(s.value)
                    rename(stmts, s.value, new)
                    s.value = new
                self.functions.append(s)
            elif s.kind is K.CLASS_DECL:
                raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT,
                                "class declaration inside a generator body; lower classes first", s.span)
        for s in stmts:
            self.compile_stmt(s)

    def hoist_lexical(self, stmts: list[Node], name: str, top: bool) -> None:
        new = name if top else self.fresh.make(name)
        if self.loops:
            for node, closure in occurrences(stmts, name):
                if closure:
                    raise PassError(PassErrorCode.UNSUPPORTED_CAPTURE,
                                    f"closure captures loop binding {name!r}", node.span)
        if new != name:
            rename(stmts, name, new)
        self.lets.append(new)

    def compile_stmt(self, s: Node) -> None:
        kind = s.kind
        if kind is K.FUNCTION_DECL:
            return
        if not contains_yield(s):
            for r in self.lower(s, exploded=True):
                self.emit(r)
            return
        if kind is K.EXPR_STMT:
            e = s.children[0]
            if e.kind is K.YIELD:
                self.yield_point(e)
                return
            if e.kind is K.ASSIGN and e.value == "=" and e.children[1].kind is K.YIELD:
                target = e.children[0]
                if contains_yield(target) or not _stable_target(target):
                    raise _bad_yield(s, "yield assigned to a complex target")
                self.yield_point(e.children[1])
                self.emit(stmt(assign(self.expr(target), ident(SENT))))
                return
            raise _bad_yield(s, "yield inside an expression")
        if kind in (K.VAR_DECL, K.LET_DECL, K.CONST_DECL):
            for d in s.children:
                name = d.children[0].value
                init = d.children[1] if len(d.children) > 1 else None
                if init is None:
                    if kind is not K.VAR_DECL:
                        self.emit(stmt(assign(ident(name), undefined())))
                elif init.kind is K.YIELD:
                    self.yield_point(init)
                    self.emit(stmt(assign(ident(name), ident(SENT))))
                elif contains_yield(init):
                    raise _bad_yield(init, "yield inside an initializer expression")
                else:
                    self.emit(stmt(assign(ident(name), self.expr(init))))
            return
        if kind is K.RETURN:
            arg = s.children[0]
            if arg.kind is not K.YIELD:
                raise _bad_yield(s, "yield inside a return expression")
            self.yield_point(arg)
            self.emit(_result(ident(SENT), True))
            return
        if kind is K.BLOCK:
            self.compile_list(s.children, top=False)
            return
        if kind is K.IF:
            test = s.children[0]
            if contains_yield(test):
                raise _bad_yield(test, "yield inside an if condition")
            has_else = len(s.children) > 2
            skip = self.label()
            self.emit(mk(K.IF, mk(K.UNARY_OP, self.expr(test), value="!"), mk(K.BLOCK, *self.jump(skip))))
            self.compile_branch(s.children[1])
            if has_else:
                end = self.label()
                for r in self.jump(end):
                    self.emit(r)
                self.mark(skip)
                self.compile_branch(s.children[2])
                self.mark(end)
            else:
                self.mark(skip)
            return
        if kind is K.WHILE:
            test = s.children[0]
            if contains_yield(test):
                raise _bad_yield(test, "yield inside a loop condition")
            head, end = self.label(), self.label()
            self.mark(head)
            self.emit(mk(K.IF, mk(K.UNARY_OP, self.expr(test), value="!"), mk(K.BLOCK, *self.jump(end))))
            self.loops.append((head, end))
            self.compile_branch(s.children[1])
            self.loops.pop()
            for r in self.jump(head):
                self.emit(r)
            self.mark(end)
            return
        raise _bad_yield(s, f"yield inside {kind.name.lower()}")

    def compile_branch(self, s: Node) -> None:
        if s.kind is K.BLOCK:
            self.compile_list(s.children, top=False)
        else:
            self.compile_stmt(s)

    # -- lowering of yield-free statements --------------------------------------

    def lower_list(self, stmts: list[Node]) -> list[Node]:
        out = []
        for s in stmts:
            out.extend(self.lower(s))
        return out

    def lower_slot(self, s: Node) -> Node:
        parts = self.lower(s)
        if len(parts) == 1:
            return parts[0]
        return mk(K.BLOCK, *parts, span=s.span)

    def lower(self, s: Node, exploded: bool = False) -> list[Node]:
        """Rewrite one yield-free statement for life inside the step function."""
        kind = s.kind
        ch = s.children
        if kind is K.VAR_DECL or (exploded and kind in (K.LET_DECL, K.CONST_DECL)):
            out = []
            for d in ch:
                name = d.children[0].value
                if len(d.children) > 1:
                    out.append(stmt(assign(ident(name), self.expr(d.children[1]))))
                elif kind is not K.VAR_DECL:
                    out.append(stmt(assign(ident(name), undefined())))
            return out or [mk(K.EMPTY)]
        if kind is K.RETURN:
            return [_result(self.expr(ch[0]) if ch else undefined(), True)]
        if kind is K.BREAK:
            if self.native_loops == 0 and self.native_switches == 0:
                return self.jump(self.loops[-1][1])
            return [s]
        if kind is K.CONTINUE:
            if self.native_loops == 0:
                return self.jump(self.loops[-1][0])
            return [s]
        if kind is K.BLOCK:
            s.children = self.lower_list(ch)
            return [s]
        if kind is K.IF:
            ch[0] = self.expr(ch[0])
            for i in range(1, len(ch)):
                ch[i] = self.lower_slot(ch[i])
            return [s]
        if kind is K.WHILE:
            ch[0] = self.expr(ch[0])
            self.native_loops += 1
            ch[1] = self.lower_slot(ch[1])
            self.native_loops -= 1
            return [s]
        if kind is K.FOR:
            before = []
            init = ch[0]
            if init.kind is K.VAR_DECL:
                inits = [stmt(assign(ident(d.children[0].value), self.expr(d.children[1])))
                         for d in init.children if len(d.children) > 1]
                if len(inits) == 1:
                    ch[0] = inits[0].children[0]
                else:
                    before, ch[0] = inits, mk(K.EMPTY)
            elif init.kind in (K.LET_DECL, K.CONST_DECL):
                for d in init.children:
                    if len(d.children) > 1:
                        d.children[1] = self.expr(d.children[1])
            elif init.kind is not K.EMPTY:
                ch[0] = self.expr(init)
            ch[1] = self.expr(ch[1])
            ch[2] = self.expr(ch[2])
            self.native_loops += 1
            ch[3] = self.lower_slot(ch[3])
            self.native_loops -= 1
            if before:
                return [mk(K.BLOCK, *before, s)]
            return [s]
        if kind is K.SWITCH:
            ch[0] = self.expr(ch[0])
            self.native_switches += 1
            for case in ch[1:]:
                case.children[0] = self.expr(case.children[0])
                case.children[1:] = self.lower_list(case.children[1:])
            self.native_switches -= 1
            return [s]
        if kind is K.TRY_CATCH:
            for i in (0, 2, 3):
                if i < len(ch):
                    ch[i] = self.lower_slot(ch[i])
            return [s]
        if kind in (K.LET_DECL, K.CONST_DECL):
            for d in ch:
                if len(d.children) > 1:
                    d.children[1] = self.expr(d.children[1])
            return [s]
        if kind is K.FUNCTION_DECL:
            return [s]
        if kind is K.CLASS_DECL:
            raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT,
                            "class declaration inside a generator body; lower classes first", s.span)
        # expression-bearing statements: EXPR_STMT, THROW, EMPTY
        s.children = [self.expr(c) for c in ch]
        return [s]

    def expr(self, e: Node) -> Node:
        """Alias ``this``/``arguments``, looking through arrows only."""
        if e.kind is K.THIS:
            self.uses_self = True
            return ident(SELF)
        if e.kind is K.IDENTIFIER and e.value == "arguments":
            self.uses_args = True
            return ident(ARGS)
        if e.kind is K.SUPER:
            raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT,
                            "super inside a generator body; lower classes first", e.span)
        if e.kind in FUNCTION_KINDS and e.kind is not K.ARROW_FUNCTION:
            return e
        e.children = [self.expr(c) for c in e.children]
        return e

    # -- assembly ---------------------------------------------------------------

    def assemble(self, prologue: list[Node]) -> list[Node]:
        cases = []
        for label, body in self.cases:
            cases.append(mk(K.CASE, num(label), *body))
        dispatch = mk(K.WHILE, mk(K.BOOL_LIT, value="true"),
                      mk(K.BLOCK, mk(K.SWITCH, ident(STATE), *cases)))
        step = mk(K.FUNCTION_EXPR, mk(K.PARAM_LIST, mk(K.PARAM, value=STEP_ARG)),
                  mk(K.BLOCK, stmt(assign(ident(SENT), ident(STEP_ARG))), dispatch))
        out = list(prologue)
        out.append(var_decl((STATE, num(0))))
        out.append(var_decl((SENT, None)))
        if self.vars:
            out.append(var_decl(*((v, None) for v in self.vars)))
        if self.lets:
            out.append(var_decl(*((v, None) for v in self.lets), kind=K.LET_DECL))
        if self.uses_self:
            out.append(var_decl((SELF, mk(K.THIS))))
        if self.uses_args:
            out.append(var_decl((ARGS, ident("arguments"))))
        out.extend(self.functions)
        out.append(mk(K.RETURN, mk(K.CALL, ident(HELPER), step)))
        return out


def _stable_target(t: Node) -> bool:
    if t.kind is K.IDENTIFIER:
        return True
    if t.kind is K.MEMBER_ACCESS:
        return t.children[0].kind in (K.IDENTIFIER, K.THIS)
    return False


def _var_names_ordered(stmts: list[Node]) -> list[str]:
    """Var-declared names in first-appearance order, not crossing functions."""
    seen: list[str] = []
    stack = list(reversed(stmts))
    while stack:
        s = stack.pop()
        if s.kind in FUNCTION_KINDS or s.kind is K.CLASS_DECL:
            continue
        if s.kind is K.VAR_DECL:
            for d in s.children:
                if d.children[0].value not in seen:
                    seen.append(d.children[0].value)
        stack.extend(reversed(s.children))
    return seen


class _Generators(ScopedRewriter):
    def __init__(self, script: ScriptNode) -> None:
        super().__init__(script)
        self.fresh: Optional[FreshNames] = None

    def leave(self, node: Node):
        if node.kind not in FUNCTION_KINDS or not node.flags & NodeFlag.GENERATOR:
            return None
        if node.flags & NodeFlag.ASYNC:
            raise PassError(PassErrorCode.UNSUPPORTED_CONSTRUCT, "async generator", node.span)
        self.found |= Feature.GENERATORS.bit
        if self.fresh is None:
            self.fresh = FreshNames(self.script.root)
        params = {p.value for p in node.children[0].children}
        body = node.children[1]
        stmts = body.children
        n = 0
        while n < len(stmts) and _is_prologue(stmts[n], params):
            n += 1
        prologue, rest = stmts[:n], stmts[n:]
        machine = _Machine(node, self.fresh)
        machine.compile_body(rest)
        body.children = machine.assemble(prologue)
        node.flags &= ~NodeFlag.GENERATOR
        return None


def rewrite_generators(script: ScriptNode) -> TransformOutcome:
    rw = _Generators(script)
    visited = rw.run()
    if not rw.found:
        return TransformOutcome(False, nodes_visited=visited)
    return TransformOutcome(True, FeatureSet.of(Feature.GENERATORS), helpers_used=frozenset({HELPER}),
                            nodes_visited=visited)

