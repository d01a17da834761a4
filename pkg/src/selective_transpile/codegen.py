"""Deterministic pretty-printer from AST to source text."""

from __future__ import annotations

import re
from typing import Iterable, Optional

from .nodes import K, Node, NodeFlag, ScriptNode

_IDENT_RE = re.compile(r"^[A-Za-z_$][A-Za-z0-9_$]*$")
_STMT_START_RE = re.compile(r"^(\{|(async\s+)?function\b|class\b|let\s*\[)")

# binding strength; higher binds tighter
P_ASSIGN = 2
P_COND = 3
P_OR = 4
P_AND = 5
P_UNARY = 15
P_POSTFIX = 16
P_CHAIN = 17
P_LHS = 18
P_PRIMARY = 20

_BINARY = {
    "||": P_OR, "&&": P_AND,
    "==": 9, "!=": 9, "===": 9, "!==": 9,
    "<": 10, ">": 10, "<=": 10, ">=": 10, "instanceof": 10, "in": 10,
    "+": 12, "-": 12, "*": 13, "/": 13, "%": 13, "**": 14,
}

_ESC = {"\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t", "\b": "\\b", "\f": "\\f",
        "\v": "\\v", " ": "\\u2028", " ": "\\u2029"}


def _escape_char(ch: str) -> str:
    if ch in _ESC:
        return _ESC[ch]
    if ord(ch) < 0x20 or ord(ch) == 0x7F:
        return f"\\x{ord(ch):02x}"
    return ch


def quote(s: str) -> str:
    return '"' + "".join('\\"' if ch == '"' else _escape_char(ch) for ch in s) + '"'


def _template_chunk(s: str) -> str:
    out = []
    for i, ch in enumerate(s):
        if ch == "`":
            out.append("\\`")
        elif ch == "$" and s.startswith("{", i + 1):
            out.append("\\$")
        else:
            out.append(_escape_char(ch))
    return "".join(out)


def precedence(n: Node) -> int:
    kind = n.kind
    if kind in (K.ASSIGN, K.ARROW_FUNCTION, K.YIELD):
        return P_ASSIGN
    if kind is K.CONDITIONAL:
        return P_COND
    if kind is K.NULLISH:
        return P_OR
    if kind is K.BINARY_OP:
        return _BINARY[n.value]
    if kind in (K.AWAIT, K.UNDEFINED_LIT):
        return P_UNARY
    if kind is K.UNARY_OP:
        return P_POSTFIX if n.flags & NodeFlag.POSTFIX else P_UNARY
    if kind is K.OPTIONAL_CHAIN:
        return P_CHAIN
    if kind in (K.CALL, K.NEW, K.MEMBER_ACCESS, K.INDEX_ACCESS):
        return P_LHS
    return P_PRIMARY


def _callee_has_call(n: Node) -> bool:
    while True:
        if n.kind is K.CALL or n.kind is K.OPTIONAL_CHAIN:
            return True
        if n.kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS):
            n = n.children[0]
            continue
        return False


class Printer:
    def __init__(self) -> None:
        self.indent = 0

    # -- expressions ------------------------------------------------------

    def expr(self, n: Node, min_prec: int = 0) -> str:
        text = self._expr(n)
        if precedence(n) < min_prec:
            return "(" + text + ")"
        return text

    def _expr(self, n: Node) -> str:
        kind = n.kind
        ch = n.children
        if kind is K.IDENTIFIER:
            return n.value
        if kind is K.NUMBER_LIT:
            return n.value
        if kind is K.STRING_LIT:
            return quote(n.value)
        if kind is K.BOOL_LIT:
            return n.value
        if kind is K.NULL_LIT:
            return "null"
        if kind is K.UNDEFINED_LIT:
            return "void 0"
        if kind is K.THIS:
            return "this"
        if kind is K.SUPER:
            return "super"
        if kind is K.ASSIGN:
            return f"{self.expr(ch[0], P_LHS)} {n.value} {self.expr(ch[1], P_ASSIGN)}"
        if kind is K.CONDITIONAL:
            return (f"{self.expr(ch[0], P_OR)} ? {self.expr(ch[1], P_ASSIGN)}"
                    f" : {self.expr(ch[2], P_ASSIGN)}")
        if kind is K.BINARY_OP or kind is K.NULLISH:
            return self._binary(n)
        if kind is K.UNARY_OP:
            op = n.value
            if n.flags & NodeFlag.POSTFIX:
                return self.expr(ch[0], P_LHS) + op
            if op in ("++", "--"):
                return op + self.expr(ch[0], P_LHS)
            operand = self.expr(ch[0], P_UNARY)
            if op in ("typeof", "void") or (op in "+-" and operand.startswith(op)):
                return f"{op} {operand}"
            return op + operand
        if kind is K.AWAIT:
            return "await " + self.expr(ch[0], P_UNARY)
        if kind is K.YIELD:
            return "yield " + self.expr(ch[0], P_ASSIGN) if ch else "yield"
        if kind is K.MEMBER_ACCESS:
            dot = "?." if n.flags & NodeFlag.OPTIONAL else "."
            return self._object(ch[0]) + dot + n.value
        if kind is K.INDEX_ACCESS:
            open_ = "?.[" if n.flags & NodeFlag.OPTIONAL else "["
            return self._object(ch[0]) + open_ + self.expr(ch[1]) + "]"
        if kind is K.CALL:
            open_ = "?.(" if n.flags & NodeFlag.OPTIONAL else "("
            return self._object(ch[0]) + open_ + self._args(ch[1:]) + ")"
        if kind is K.NEW:
            callee = self.expr(ch[0], P_LHS)
            if _callee_has_call(ch[0]) and not callee.startswith("("):
                callee = "(" + callee + ")"
            return f"new {callee}({self._args(ch[1:])})"
        if kind is K.OPTIONAL_CHAIN:
            return self._expr(ch[0])
        if kind is K.SPREAD:
            return "..." + self.expr(ch[0], P_ASSIGN)
        if kind is K.ARRAY_LIT:
            return "[" + self._args(ch) + "]"
        if kind is K.OBJECT_LIT:
            if not ch:
                return "{}"
            props = ", ".join(f"{self._key(p.value)}: {self.expr(p.children[0], P_ASSIGN)}" for p in ch)
            return "{" + props + "}"
        if kind is K.TEMPLATE_LIT:
            parts = []
            for i, part in enumerate(ch):
                if i % 2 == 0:
                    parts.append(_template_chunk(part.value))
                else:
                    parts.append("${" + self.expr(part) + "}")
            return "`" + "".join(parts) + "`"
        if kind is K.FUNCTION_EXPR:
            return self._function(n, "function")
        if kind is K.ARROW_FUNCTION:
            prefix = "async " if n.flags & NodeFlag.ASYNC else ""
            head = f"{prefix}({self._params(ch[0])}) => "
            body = ch[1]
            if body.kind is K.BLOCK:
                return head + self.block(body)
            text = self.expr(body, P_ASSIGN)
            if text.startswith("{"):
                text = "(" + text + ")"
            return head + text
        raise TypeError(f"cannot print {kind.name} as an expression")

    def _object(self, n: Node) -> str:
        if n.kind is K.NUMBER_LIT:
            return "(" + n.value + ")"
        return self.expr(n, P_LHS)

    def _binary(self, n: Node) -> str:
        op = "??" if n.kind is K.NULLISH else n.value
        prec = P_OR if n.kind is K.NULLISH else _BINARY[op]
        left, right = n.children
        if op == "**":
            l_text = self.expr(left, prec + 1)
            if precedence(left) == P_UNARY and not l_text.startswith("("):
                l_text = "(" + l_text + ")"
            r_text = self.expr(right, prec)
        else:
            l_text = self.expr(left, prec)
            r_text = self.expr(right, prec + 1)
            if op in ("??", "&&", "||"):
                clash = (lambda c: c.kind is K.BINARY_OP and c.value in ("&&", "||")) if op == "??" \
                    else (lambda c: c.kind is K.NULLISH)
                if clash(left) and not l_text.startswith("("):
                    l_text = "(" + l_text + ")"
                if clash(right) and not r_text.startswith("("):
                    r_text = "(" + r_text + ")"
        return f"{l_text} {op} {r_text}"

    @staticmethod
    def _key(key: str) -> str:
        return key if _IDENT_RE.match(key) else quote(key)

    def _args(self, args: Iterable[Node]) -> str:
        return ", ".join(self.expr(a, P_ASSIGN) for a in args)

    def _params(self, plist: Node) -> str:
        out = []
        for p in plist.children:
            if p.kind is K.PARAM:
                out.append(p.value)
            elif p.kind is K.DEFAULT_PARAM:
                out.append(f"{p.value} = {self.expr(p.children[0], P_ASSIGN)}")
            else:
                out.append("..." + p.value)
        return ", ".join(out)

    def _function(self, n: Node, keyword: str) -> str:
        prefix = "async " if n.flags & NodeFlag.ASYNC else ""
        star = "*" if n.flags & NodeFlag.GENERATOR else ""
        name = f" {n.value}" if n.value else " "
        params, body = n.children
        return f"{prefix}{keyword}{star}{name}({self._params(params)}) {self.block(body)}"

    # -- statements -------------------------------------------------------

    def block(self, n: Node) -> str:
        return self.braced(n.children)

    def braced(self, stmts: list[Node]) -> str:
        if not stmts:
            return "{}"
        self.indent += 1
        lines = [self.stmt(s) for s in stmts]
        self.indent -= 1
        pad = "  " * self.indent
        return "{\n" + "\n".join(lines) + "\n" + pad + "}"

    def stmt(self, n: Node) -> str:
        return "  " * self.indent + self._stmt(n)

    def _decl(self, n: Node) -> str:
        kw = {K.VAR_DECL: "var", K.LET_DECL: "let", K.CONST_DECL: "const"}[n.kind]
        parts = []
        for d in n.children:
            name = d.children[0].value
            if len(d.children) > 1:
                parts.append(f"{name} = {self.expr(d.children[1], P_ASSIGN)}")
            else:
                parts.append(name)
        return f"{kw} {', '.join(parts)}"

    def _body(self, n: Node) -> str:
        """Statement in a single-statement slot (if/while/for bodies)."""
        return self._stmt(n)

    def _stmt(self, n: Node) -> str:
        kind = n.kind
        ch = n.children
        if kind is K.EXPR_STMT:
            text = self.expr(ch[0])
            if _STMT_START_RE.match(text):
                text = "(" + text + ")"
            return text + ";"
        if kind in (K.VAR_DECL, K.LET_DECL, K.CONST_DECL):
            return self._decl(n) + ";"
        if kind is K.FUNCTION_DECL:
            return self._function(n, "function")
        if kind is K.CLASS_DECL:
            return self._class(n)
        if kind is K.BLOCK:
            return self.block(n)
        if kind is K.RETURN:
            return "return " + self.expr(ch[0]) + ";" if ch else "return;"
        if kind is K.IF:
            text = f"if ({self.expr(ch[0])}) {self._body(ch[1])}"
            if len(ch) > 2:
                text += f" else {self._body(ch[2])}"
            return text
        if kind is K.WHILE:
            return f"while ({self.expr(ch[0])}) {self._body(ch[1])}"
        if kind is K.FOR:
            init, test, update, body = ch
            if init.kind is K.EMPTY:
                i_text = ""
            elif init.kind in (K.VAR_DECL, K.LET_DECL, K.CONST_DECL):
                i_text = self._decl(init)
            else:
                i_text = self.expr(init)
            t_text = "" if test.kind is K.EMPTY else " " + self.expr(test)
            u_text = "" if update.kind is K.EMPTY else " " + self.expr(update)
            return f"for ({i_text};{t_text};{u_text}) {self._body(body)}"
        if kind is K.SWITCH:
            pad = "  " * (self.indent + 1)
            lines = []
            for case in ch[1:]:
                test = case.children[0]
                label = "default:" if test.kind is K.EMPTY else f"case {self.expr(test)}:"
                lines.append(pad + label)
                self.indent += 2
                lines.extend(self.stmt(s) for s in case.children[1:])
                self.indent -= 2
            if not lines:
                return f"switch ({self.expr(ch[0])}) {{}}"
            return f"switch ({self.expr(ch[0])}) {{\n" + "\n".join(lines) + "\n" + "  " * self.indent + "}"
        if kind is K.BREAK:
            return "break;"
        if kind is K.CONTINUE:
            return "continue;"
        if kind is K.THROW:
            return f"throw {self.expr(ch[0])};"
        if kind is K.TRY_CATCH:
            text = f"try {self.block(ch[0])} catch ({ch[1].value}) {self.block(ch[2])}"
            if len(ch) > 3:
                text += f" finally {self.block(ch[3])}"
            return text
        if kind is K.EMPTY:
            return ";"
        raise TypeError(f"cannot print {kind.name} as a statement")

    def _class(self, n: Node) -> str:
        heritage = n.children[0]
        head = f"class {n.value}"
        if heritage.kind is not K.EMPTY:
            head += " extends " + self.expr(heritage, P_LHS)
        methods = n.children[1:]
        if not methods:
            return head + " {}"
        self.indent += 1
        lines = []
        for m in methods:
            prefix = ("static " if m.flags & NodeFlag.STATIC else "") + \
                     ("async " if m.flags & NodeFlag.ASYNC else "") + \
                     ("*" if m.flags & NodeFlag.GENERATOR else "")
            params, body = m.children
            lines.append("  " * self.indent + f"{prefix}{m.value}({self._params(params)}) {self.block(body)}")
        self.indent -= 1
        return head + " {\n" + "\n".join(lines) + "\n" + "  " * self.indent + "}"


def print_node(n: Node) -> str:
    """Print a statement or expression node (no trailing newline)."""
    p = Printer()
    if n.kind is K.SCRIPT:
        return "\n".join(p.stmt(s) for s in n.children)
    try:
        return p.stmt(n)
    except TypeError:
        return p.expr(n)


def print_script(script: ScriptNode, helpers: Optional[Iterable[str]] = None) -> str:
    """Canonical text for ``script``, preceded by the runtime helpers it needs.

    ``helpers`` defaults to the helpers recorded on the script by the passes.
    """
    from .passes.helpers import prelude

    body = print_node(script.root)
    chosen = script.helpers_used if helpers is None else set(helpers)
    head = prelude(chosen)
    text = head + body
    return text + "\n" if text else ""
