"""Recursive-descent parser for MiniES.

The script's feature set is accumulated while nodes are built: each anchor
construct records its feature exactly where the node is created, so no
second walk over the tree is needed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Optional

from .features import Feature, FeatureSet
from .jsnum import format_number
from .lexer import DiagnosticCode, ParseDiagnostic, ParseError, Token, TokenKind, lex
from .nodes import K, Node, NodeFlag, ScriptNode, Span

_TEMP_RE = re.compile(r"^\$t(\d+)$")

_BINARY_PREC = {
    "||": 1, "??": 1,
    "&&": 2,
    "==": 6, "!=": 6, "===": 6, "!==": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "instanceof": 7, "in": 7,
    "+": 9, "-": 9,
    "*": 10, "/": 10, "%": 10,
    "**": 11,
}
_ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "**="}
_UNSUPPORTED_OPS = {"&", "|", "^", "<<", ">>", ">>>", "~", "&=", "|=", "^=", "<<=", ">>=", ">>>=", "@", "#"}
_UNSUPPORTED_KEYWORDS = {"do": "do-while loops", "with": "with statements", "debugger": "debugger statements",
                         "import": "modules", "export": "modules", "enum": "enums", "delete": "delete operator"}


@dataclass(frozen=True)
class _Ctx:
    in_function: bool = False
    is_async: bool = False
    is_generator: bool = False
    in_loop: bool = False
    breakable: bool = False
    super_call: bool = False
    super_prop: bool = False


class Parser:
    def __init__(self, source: str, source_name: str, allow_reserved: bool = False) -> None:
        self.source_name = source_name
        self.tokens = lex(source)
        self.i = 0
        self.ctx = _Ctx()
        self.allow_reserved = allow_reserved
        self.mask = 0
        self.max_temp = -1
        # ids of nodes that were written inside parentheses
        self.parened: set[int] = set()

    # -- token helpers -----------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind is not TokenKind.EOF:
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in (TokenKind.PUNCT, TokenKind.KEYWORD)

    def eat(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r} but found {self.describe(self.tok)}")
        return self.advance()

    @staticmethod
    def describe(t: Token) -> str:
        return "end of input" if t.kind is TokenKind.EOF else repr(t.text)

    def error(self, message: str, tok: Optional[Token] = None,
              code: DiagnosticCode = DiagnosticCode.SYNTAX_ERROR) -> ParseError:
        t = tok or self.tok
        return ParseError([ParseDiagnostic(message, t.span, code)])

    def unsupported(self, what: str, tok: Optional[Token] = None) -> ParseError:
        return self.error(f"{what} are outside the supported subset", tok, DiagnosticCode.UNSUPPORTED_CONSTRUCT)

    def record(self, f: Feature) -> None:
        self.mask |= f.bit

    def semicolon(self) -> None:
        if not self.eat(";"):
            raise self.error(f"expected ';' but found {self.describe(self.tok)} (semicolons are mandatory)")

    def binding_name(self) -> str:
        t = self.tok
        if t.kind is not TokenKind.IDENT:
            if t.kind is TokenKind.PUNCT and t.text in ("[", "{"):
                raise self.unsupported("destructuring patterns", t)
            raise self.error(f"expected identifier but found {self.describe(t)}")
        self.check_ident(t)
        self.advance()
        return t.text

    def check_ident(self, t: Token) -> None:
        name = t.text
        if name.startswith("$"):
            if not self.allow_reserved:
                raise self.error(f"identifier {name!r}: names starting with '$' are reserved for the transpiler", t)
            m = _TEMP_RE.match(name)
            if m:
                self.max_temp = max(self.max_temp, int(m.group(1)))

    def with_ctx(self, **changes) -> _Ctx:
        old = self.ctx
        self.ctx = replace(old, **changes)
        return old

    # -- entry ------------------------------------------------------------

    def parse_script(self) -> ScriptNode:
        start = self.tok.span
        body = []
        while self.tok.kind is not TokenKind.EOF:
            body.append(self.statement())
        root = Node(K.SCRIPT, body, None, Span(1, 1, 0) if not body else start)
        script = ScriptNode(root, self.source_name, FeatureSet.from_mask(self.mask))
        script.next_temp = self.max_temp + 1
        return script

    # -- statements -------------------------------------------------------

    def statement(self, single: bool = False) -> Node:
        t = self.tok
        if t.kind is TokenKind.KEYWORD:
            w = t.text
            if w in ("var", "let", "const"):
                if single and w != "var":
                    raise self.error(f"lexical declaration '{w}' is not allowed as a single-statement body")
                node = self.declaration()
                self.semicolon()
                return node
            if w == "function":
                if single:
                    raise self.error("function declaration is not allowed as a single-statement body")
                return self.function_decl(is_async=False)
            if w == "class":
                if single:
                    raise self.error("class declaration is not allowed as a single-statement body")
                return self.class_decl()
            if w == "if":
                return self.if_statement()
            if w == "while":
                return self.while_statement()
            if w == "for":
                return self.for_statement()
            if w == "switch":
                return self.switch_statement()
            if w in ("break", "continue"):
                self.advance()
                if w == "continue" and not self.ctx.in_loop:
                    raise self.error("'continue' outside a loop", t)
                if w == "break" and not self.ctx.breakable:
                    raise self.error("'break' outside a loop or switch", t)
                if self.tok.kind is TokenKind.IDENT and not self.tok.newline_before:
                    raise self.unsupported("labeled statements")
                self.semicolon()
                return Node(K.BREAK if w == "break" else K.CONTINUE, [], None, t.span)
            if w == "return":
                if not self.ctx.in_function:
                    raise self.error("'return' outside a function", t)
                self.advance()
                children = [] if self.at(";") else [self.expression()]
                self.semicolon()
                return Node(K.RETURN, children, None, t.span)
            if w == "throw":
                self.advance()
                arg = self.expression()
                self.semicolon()
                return Node(K.THROW, [arg], None, t.span)
            if w == "try":
                return self.try_statement()
            if w in _UNSUPPORTED_KEYWORDS:
                raise self.unsupported(_UNSUPPORTED_KEYWORDS[w], t)
        elif t.kind is TokenKind.PUNCT:
            if t.text == "{":
                return self.block()
            if t.text == ";":
                self.advance()
                return Node(K.EMPTY, [], None, t.span)
        elif t.kind is TokenKind.IDENT and t.text == "async":
            nxt = self.peek()
            if nxt.text == "function" and nxt.kind is TokenKind.KEYWORD and not nxt.newline_before:
                if single:
                    raise self.error("function declaration is not allowed as a single-statement body")
                self.advance()
                return self.function_decl(is_async=True, start=t)
        if t.kind is TokenKind.IDENT and self.peek().text == ":" and self.peek().kind is TokenKind.PUNCT:
            raise self.unsupported("labeled statements", t)
        expr = self.expression()
        self.semicolon()
        return Node(K.EXPR_STMT, [expr], None, t.span)

    def block(self) -> Node:
        start = self.expect("{")
        body = []
        while not self.at("}"):
            if self.tok.kind is TokenKind.EOF:
                raise self.error("unterminated block", start)
            body.append(self.statement())
        self.advance()
        return Node(K.BLOCK, body, None, start.span)

    def declaration(self) -> Node:
        t = self.advance()
        kind = {"var": K.VAR_DECL, "let": K.LET_DECL, "const": K.CONST_DECL}[t.text]
        decls = []
        while True:
            name_tok = self.tok
            name = self.binding_name()
            target = Node(K.IDENTIFIER, [], name, name_tok.span)
            children = [target]
            if self.eat("="):
                children.append(self.assignment())
            elif kind is K.CONST_DECL:
                raise self.error("missing initializer in const declaration", name_tok)
            decls.append(Node(K.DECLARATOR, children, None, name_tok.span))
            if not self.eat(","):
                break
        if kind is not K.VAR_DECL:
            self.record(Feature.BLOCK_SCOPED_DECLARATIONS)
        return Node(kind, decls, None, t.span)

    def if_statement(self) -> Node:
        t = self.advance()
        self.expect("(")
        test = self.expression()
        self.expect(")")
        children = [test, self.statement(single=True)]
        if self.eat("else"):
            children.append(self.statement(single=True))
        return Node(K.IF, children, None, t.span)

    def loop_body(self) -> Node:
        old = self.with_ctx(in_loop=True, breakable=True)
        try:
            return self.statement(single=True)
        finally:
            self.ctx = old

    def while_statement(self) -> Node:
        t = self.advance()
        self.expect("(")
        test = self.expression()
        self.expect(")")
        return Node(K.WHILE, [test, self.loop_body()], None, t.span)

    def for_statement(self) -> Node:
        t = self.advance()
        if self.at("await"):
            raise self.unsupported("for-await loops")
        self.expect("(")
        empty = lambda: Node(K.EMPTY, [], None, self.tok.span)  # noqa: E731
        if self.tok.kind is TokenKind.IDENT and self.peek().text in ("in", "of"):
            raise self.unsupported(f"for-{self.peek().text} loops")
        if self.at(";"):
            init = empty()
        elif self.tok.kind is TokenKind.KEYWORD and self.tok.text in ("var", "let", "const"):
            init = self.declaration()
        else:
            init = self.expression()
        if self.at("in") or (self.tok.kind is TokenKind.IDENT and self.tok.text == "of"):
            raise self.unsupported(f"for-{self.tok.text} loops")
        self.semicolon()
        test = empty() if self.at(";") else self.expression()
        self.semicolon()
        update = empty() if self.at(")") else self.expression()
        self.expect(")")
        return Node(K.FOR, [init, test, update, self.loop_body()], None, t.span)

    def switch_statement(self) -> Node:
        t = self.advance()
        self.expect("(")
        disc = self.expression()
        self.expect(")")
        self.expect("{")
        cases = [disc]
        seen_default = False
        old = self.with_ctx(breakable=True)
        try:
            while not self.eat("}"):
                ct = self.tok
                if self.eat("case"):
                    test = self.expression()
                elif self.eat("default"):
                    if seen_default:
                        raise self.error("more than one default clause", ct)
                    seen_default = True
                    test = Node(K.EMPTY, [], None, ct.span)
                else:
                    raise self.error(f"expected 'case' or 'default' but found {self.describe(ct)}")
                self.expect(":")
                body = [test]
                while not (self.at("case") or self.at("default") or self.at("}")):
                    if self.tok.kind is TokenKind.EOF:
                        raise self.error("unterminated switch", t)
                    body.append(self.statement())
                cases.append(Node(K.CASE, body, None, ct.span))
        finally:
            self.ctx = old
        return Node(K.SWITCH, cases, None, t.span)

    def try_statement(self) -> Node:
        t = self.advance()
        body = self.block()
        if not self.at("catch"):
            raise self.unsupported("try statements without a catch clause")
        self.advance()
        if not self.at("("):
            raise self.unsupported("optional catch bindings")
        self.advance()
        pt = self.tok
        param = Node(K.IDENTIFIER, [], self.binding_name(), pt.span)
        self.expect(")")
        children = [body, param, self.block()]
        if self.eat("finally"):
            children.append(self.block())
        return Node(K.TRY_CATCH, children, None, t.span)

    # -- functions and classes -------------------------------------------

    def function_decl(self, is_async: bool, start: Optional[Token] = None) -> Node:
        t = self.expect("function")
        start = start or t
        is_gen = self.eat("*")
        if is_async and is_gen:
            raise self.unsupported("async generators", start)
        name = self.binding_name()
        params, body = self.function_rest(is_async, is_gen)
        return self.function_node(K.FUNCTION_DECL, name, params, body, is_async, is_gen, start.span)

    def function_node(self, kind, name, params, body, is_async, is_gen, span, static=False) -> Node:
        flags = NodeFlag.NONE
        if is_async:
            flags |= NodeFlag.ASYNC
            self.record(Feature.ASYNC_FUNCTIONS)
        if is_gen:
            flags |= NodeFlag.GENERATOR
            self.record(Feature.GENERATORS)
        if static:
            flags |= NodeFlag.STATIC
        return Node(kind, [params, body], name, span, flags)

    def function_rest(self, is_async: bool, is_gen: bool, **extra) -> tuple[Node, Node]:
        old = self.with_ctx(in_function=True, is_async=is_async, is_generator=is_gen,
                            in_loop=False, breakable=False, super_call=False, super_prop=False)
        if extra:
            self.ctx = replace(self.ctx, **extra)
        try:
            params = self.param_list()
            body = self.block()
        finally:
            self.ctx = old
        return params, body

    def param_list(self) -> Node:
        start = self.expect("(")
        params = []
        while not self.at(")"):
            pt = self.tok
            if self.eat("..."):
                name = self.binding_name()
                params.append(Node(K.REST_PARAM, [], name, pt.span))
                self.record(Feature.REST_PARAMETERS)
                if not self.at(")"):
                    raise self.error("rest parameter must be last")
                break
            name = self.binding_name()
            if self.eat("="):
                default = self.assignment()
                params.append(Node(K.DEFAULT_PARAM, [default], name, pt.span))
                self.record(Feature.DEFAULT_PARAMETERS)
            else:
                params.append(Node(K.PARAM, [], name, pt.span))
            if not self.eat(","):
                break
        self.expect(")")
        return Node(K.PARAM_LIST, params, None, start.span)

    def class_decl(self) -> Node:
        t = self.advance()
        name = self.binding_name()
        if self.eat("extends"):
            heritage = self.lhs_expression()
        else:
            heritage = Node(K.EMPTY, [], None, self.tok.span)
        derived = heritage.kind is not K.EMPTY
        self.expect("{")
        members = [heritage]
        seen_ctor = False
        while not self.eat("}"):
            if self.eat(";"):
                continue
            mt = self.tok
            static = False
            if mt.kind is TokenKind.IDENT and mt.text == "static" and self.peek().text != "(":
                self.advance()
                static = True
            is_async = False
            at = self.tok
            if at.kind is TokenKind.IDENT and at.text == "async" and self.peek().text not in ("(", "=") \
                    and not self.peek().newline_before:
                self.advance()
                is_async = True
            is_gen = self.eat("*")
            nt = self.tok
            if nt.kind is TokenKind.IDENT and nt.text in ("get", "set") and self.peek().text not in ("(", "=", ";", "}"):
                raise self.unsupported("getters and setters", nt)
            if nt.kind is TokenKind.PUNCT and nt.text == "[":
                raise self.unsupported("computed class members", nt)
            if nt.kind is TokenKind.PUNCT and nt.text == "#":
                raise self.unsupported("private class members", nt)
            if nt.kind not in (TokenKind.IDENT, TokenKind.KEYWORD):
                raise self.error(f"expected method name but found {self.describe(nt)}")
            self.advance()
            if not self.at("("):
                raise self.unsupported("class fields", nt)
            if is_async and is_gen:
                raise self.unsupported("async generators", mt)
            is_ctor = nt.text == "constructor" and not static
            if is_ctor:
                if seen_ctor:
                    raise self.error("duplicate constructor", nt)
                if is_async or is_gen:
                    raise self.error("constructor cannot be async or a generator", nt)
                seen_ctor = True
            params, body = self.function_rest(is_async, is_gen, super_prop=True,
                                              super_call=is_ctor and derived)
            members.append(self.function_node(K.METHOD, nt.text, params, body, is_async, is_gen,
                                              mt.span, static=static))
        self.record(Feature.CLASSES)
        return Node(K.CLASS_DECL, members, name, t.span)

    # -- expressions ------------------------------------------------------

    def expression(self) -> Node:
        node = self.assignment()
        if self.at(","):
            raise self.unsupported("comma expressions")
        return node

    def is_arrow_ahead(self) -> bool:
        """At IDENT or '(' that begins the parameters of an arrow function."""
        t = self.tok
        if t.kind is TokenKind.IDENT:
            nxt = self.peek()
            return nxt.kind is TokenKind.PUNCT and nxt.text == "=>"
        if not (t.kind is TokenKind.PUNCT and t.text == "("):
            return False
        depth, j = 0, self.i
        toks = self.tokens
        while j < len(toks):
            tk = toks[j]
            if tk.kind is TokenKind.EOF:
                return False
            if tk.kind is TokenKind.PUNCT:
                if tk.text in ("(", "[", "{"):
                    depth += 1
                elif tk.text in (")", "]", "}"):
                    depth -= 1
                    if depth == 0:
                        nxt = toks[j + 1]
                        return nxt.kind is TokenKind.PUNCT and nxt.text == "=>"
            elif tk.kind is TokenKind.TEMPLATE_HEAD:
                depth += 1
            elif tk.kind is TokenKind.TEMPLATE_TAIL:
                depth -= 1
            j += 1
        return False

    def assignment(self) -> Node:
        t = self.tok
        if t.kind is TokenKind.KEYWORD and t.text == "yield":
            return self.yield_expr()
        if t.kind is TokenKind.IDENT and t.text == "async":
            nxt = self.peek()
            if not nxt.newline_before:
                saved = self.i
                self.advance()
                if self.is_arrow_ahead():
                    return self.arrow(is_async=True, start=t)
                self.i = saved
        if self.is_arrow_ahead():
            return self.arrow(is_async=False, start=t)
        left = self.conditional()
        op_tok = self.tok
        if op_tok.kind is TokenKind.PUNCT:
            op = op_tok.text
            if op in _ASSIGN_OPS:
                self.check_target(left, op_tok)
                self.advance()
                value = self.assignment()
                if op == "**=":
                    self.record(Feature.EXPONENT_OPERATOR)
                return Node(K.ASSIGN, [left, value], op, op_tok.span)
            if op in _UNSUPPORTED_OPS:
                raise self.unsupported(f"'{op}' operators", op_tok)
        return left

    def check_target(self, node: Node, tok: Token) -> None:
        if id(node) in self.parened and node.kind is not K.IDENTIFIER:
            raise self.error("invalid assignment target", tok)
        if node.kind is K.IDENTIFIER:
            return
        if node.kind in (K.MEMBER_ACCESS, K.INDEX_ACCESS) and not node.has(NodeFlag.OPTIONAL):
            return
        if node.kind is K.OPTIONAL_CHAIN:
            raise self.error("optional chain is not a valid assignment target", tok)
        if node.kind in (K.ARRAY_LIT, K.OBJECT_LIT):
            raise self.unsupported("destructuring assignments", tok)
        raise self.error("invalid assignment target", tok)

    def yield_expr(self) -> Node:
        t = self.advance()
        if not self.ctx.is_generator:
            raise self.error("'yield' outside a generator function", t)
        if self.at("*"):
            raise self.unsupported("yield* delegation")
        nxt = self.tok
        if nxt.kind is TokenKind.EOF or (nxt.kind is TokenKind.PUNCT and nxt.text in (")", "]", "}", ",", ";", ":")):
            return Node(K.YIELD, [], None, t.span)
        return Node(K.YIELD, [self.assignment()], None, t.span)

    def arrow(self, is_async: bool, start: Token) -> Node:
        if self.tok.kind is TokenKind.IDENT:
            pt = self.tok
            name = self.binding_name()
            params = Node(K.PARAM_LIST, [Node(K.PARAM, [], name, pt.span)], None, pt.span)
            old = self.with_ctx(is_async=is_async, is_generator=False)
        else:
            old = self.with_ctx(is_async=is_async, is_generator=False)
            try:
                params = self.param_list()
            except BaseException:
                self.ctx = old
                raise
        try:
            self.expect("=>")
            if self.at("{"):
                self.ctx = replace(self.ctx, in_function=True, in_loop=False, breakable=False)
                body = self.block()
            else:
                body = self.assignment()
        finally:
            self.ctx = old
        self.record(Feature.ARROW_FUNCTIONS)
        flags = NodeFlag.NONE
        if is_async:
            flags = NodeFlag.ASYNC
            self.record(Feature.ASYNC_FUNCTIONS)
        return Node(K.ARROW_FUNCTION, [params, body], None, start.span, flags)

    def conditional(self) -> Node:
        test = self.binary(1)
        if self.at("?"):
            q = self.advance()
            cons = self.assignment()
            self.expect(":")
            alt = self.assignment()
            return Node(K.CONDITIONAL, [test, cons, alt], None, q.span)
        return test

    def binary(self, min_prec: int) -> Node:
        left = self.unary()
        while True:
            t = self.tok
            if t.kind not in (TokenKind.PUNCT, TokenKind.KEYWORD):
                break
            op = t.text
            prec = _BINARY_PREC.get(op)
            if prec is None:
                if op in _UNSUPPORTED_OPS and op not in ("~",) and not op.endswith("="):
                    raise self.unsupported(f"'{op}' operators", t)
                break
            if prec < min_prec:
                break
            self.advance()
            if op == "**":
                if left.kind in (K.UNARY_OP, K.AWAIT) and id(left) not in self.parened \
                        and not (left.kind is K.UNARY_OP and left.value in ("++", "--")):
                    raise self.error("unary expression cannot be the base of '**' without parentheses", t)
                right = self.binary(prec)
                self.record(Feature.EXPONENT_OPERATOR)
            else:
                right = self.binary(prec + 1)
            if op == "??":
                for side in (left, right):
                    if side.kind is K.BINARY_OP and side.value in ("&&", "||") and id(side) not in self.parened:
                        raise self.error("'??' cannot be mixed with '&&' or '||' without parentheses", t)
                self.record(Feature.NULLISH_COALESCING)
                left = Node(K.NULLISH, [left, right], None, t.span)
            else:
                if op in ("&&", "||"):
                    for side in (left, right):
                        if side.kind is K.NULLISH and id(side) not in self.parened:
                            raise self.error("'??' cannot be mixed with '&&' or '||' without parentheses", t)
                left = Node(K.BINARY_OP, [left, right], op, t.span)
        return left

    def unary(self) -> Node:
        t = self.tok
        if t.kind is TokenKind.PUNCT and t.text in ("!", "-", "+"):
            self.advance()
            return Node(K.UNARY_OP, [self.unary()], t.text, t.span)
        if t.kind is TokenKind.PUNCT and t.text in ("++", "--"):
            self.advance()
            operand = self.unary()
            self.check_target(operand, t)
            return Node(K.UNARY_OP, [operand], t.text, t.span)
        if t.kind is TokenKind.PUNCT and t.text == "~":
            raise self.unsupported("'~' operators", t)
        if t.kind is TokenKind.KEYWORD:
            if t.text in ("typeof", "void"):
                self.advance()
                operand = self.unary()
                if t.text == "void" and operand.kind is K.NUMBER_LIT and operand.value == "0":
                    return Node(K.UNDEFINED_LIT, [], None, t.span)
                return Node(K.UNARY_OP, [operand], t.text, t.span)
            if t.text == "await":
                if not self.ctx.is_async:
                    raise self.error("'await' outside an async function", t)
                self.advance()
                return Node(K.AWAIT, [self.unary()], None, t.span)
            if t.text == "delete":
                raise self.unsupported("delete operators", t)
        node = self.lhs_expression()
        nxt = self.tok
        if nxt.kind is TokenKind.PUNCT and nxt.text in ("++", "--") and not nxt.newline_before:
            self.check_target(node, nxt)
            self.advance()
            return Node(K.UNARY_OP, [node], nxt.text, nxt.span, NodeFlag.POSTFIX)
        return node

    def arguments(self) -> list[Node]:
        self.expect("(")
        args = []
        while not self.at(")"):
            st = self.tok
            if self.eat("..."):
                args.append(Node(K.SPREAD, [self.assignment()], None, st.span))
                self.record(Feature.SPREAD_EXPRESSIONS)
            else:
                args.append(self.assignment())
            if not self.eat(","):
                break
        self.expect(")")
        return args

    def member_name(self) -> str:
        t = self.tok
        if t.kind not in (TokenKind.IDENT, TokenKind.KEYWORD):
            if t.kind is TokenKind.PUNCT and t.text == "#":
                raise self.unsupported("private names", t)
            raise self.error(f"expected property name but found {self.describe(t)}")
        self.advance()
        return t.text

    def lhs_expression(self) -> Node:
        t = self.tok
        if t.kind is TokenKind.KEYWORD and t.text == "new":
            node = self.new_expression()
        elif t.kind is TokenKind.KEYWORD and t.text == "super":
            self.advance()
            sup = Node(K.SUPER, [], None, t.span)
            if self.at("("):
                if not self.ctx.super_call:
                    raise self.error("'super' call outside a derived class constructor", t)
                node = Node(K.CALL, [sup] + self.arguments(), None, t.span)
            elif self.at(".") or self.at("["):
                if not self.ctx.super_prop:
                    raise self.error("'super' property access outside a method", t)
                node = sup
            else:
                raise self.error("'super' must be called or accessed", t)
        else:
            node = self.primary()
        in_chain = False
        while True:
            t = self.tok
            if t.kind is TokenKind.PUNCT:
                if t.text == ".":
                    self.advance()
                    node = Node(K.MEMBER_ACCESS, [node], self.member_name(), t.span)
                    continue
                if t.text == "?.":
                    if node.kind is K.SUPER:
                        raise self.error("'super' cannot be optionally accessed", t)
                    self.advance()
                    in_chain = True
                    if self.at("("):
                        node = Node(K.CALL, [node] + self.arguments(), None, t.span, NodeFlag.OPTIONAL)
                    elif self.eat("["):
                        index = self.expression()
                        self.expect("]")
                        node = Node(K.INDEX_ACCESS, [node, index], None, t.span, NodeFlag.OPTIONAL)
                    else:
                        node = Node(K.MEMBER_ACCESS, [node], self.member_name(), t.span, NodeFlag.OPTIONAL)
                    continue
                if t.text == "[":
                    self.advance()
                    index = self.expression()
                    self.expect("]")
                    node = Node(K.INDEX_ACCESS, [node, index], None, t.span)
                    continue
                if t.text == "(":
                    node = Node(K.CALL, [node] + self.arguments(), None, t.span)
                    continue
            elif t.kind in (TokenKind.TEMPLATE_FULL, TokenKind.TEMPLATE_HEAD):
                raise self.unsupported("tagged templates", t)
            break
        if node.kind is K.SUPER:
            raise self.error("'super' must be called or accessed", t)
        if in_chain:
            self.record(Feature.OPTIONAL_CHAINING)
            node = Node(K.OPTIONAL_CHAIN, [node], None, node.span)
        return node

    def new_expression(self) -> Node:
        t = self.advance()
        if self.at("."):
            raise self.unsupported("new.target")
        if self.at("new"):
            callee = self.new_expression()
        else:
            callee = self.primary()
        while True:
            mt = self.tok
            if self.eat("."):
                callee = Node(K.MEMBER_ACCESS, [callee], self.member_name(), mt.span)
            elif self.eat("["):
                index = self.expression()
                self.expect("]")
                callee = Node(K.INDEX_ACCESS, [callee, index], None, mt.span)
            elif mt.text == "?." and mt.kind is TokenKind.PUNCT:
                raise self.error("optional chain in 'new' callee", mt)
            else:
                break
        args = self.arguments() if self.at("(") else []
        return Node(K.NEW, [callee] + args, None, t.span)

    def primary(self) -> Node:
        t = self.tok
        kind = t.kind
        if kind is TokenKind.IDENT:
            if t.text == "async" and self.peek().text == "function" and not self.peek().newline_before:
                self.advance()
                return self.function_expr(is_async=True, start=t)
            self.check_ident(t)
            self.advance()
            return Node(K.IDENTIFIER, [], t.text, t.span)
        if kind is TokenKind.NUMBER:
            self.advance()
            return Node(K.NUMBER_LIT, [], format_number(t.value), t.span)
        if kind is TokenKind.STRING:
            self.advance()
            return Node(K.STRING_LIT, [], t.value, t.span)
        if kind is TokenKind.TEMPLATE_FULL:
            self.advance()
            self.record(Feature.TEMPLATE_LITERALS)
            return Node(K.TEMPLATE_LIT, [Node(K.TEMPLATE_CHUNK, [], t.value, t.span)], None, t.span)
        if kind is TokenKind.TEMPLATE_HEAD:
            return self.template()
        if kind is TokenKind.KEYWORD:
            w = t.text
            if w == "this":
                self.advance()
                return Node(K.THIS, [], None, t.span)
            if w in ("true", "false"):
                self.advance()
                return Node(K.BOOL_LIT, [], w, t.span)
            if w == "null":
                self.advance()
                return Node(K.NULL_LIT, [], None, t.span)
            if w == "function":
                return self.function_expr(is_async=False, start=t)
            if w == "class":
                raise self.unsupported("class expressions", t)
            if w in _UNSUPPORTED_KEYWORDS:
                raise self.unsupported(_UNSUPPORTED_KEYWORDS[w], t)
            raise self.error(f"unexpected keyword {w!r}", t)
        if kind is TokenKind.PUNCT:
            p = t.text
            if p == "(":
                self.advance()
                inner = self.expression()
                self.expect(")")
                self.parened.add(id(inner))
                return inner
            if p == "[":
                return self.array_literal()
            if p == "{":
                return self.object_literal()
            if p in ("/", "/="):
                raise self.unsupported("regular expression literals", t)
        raise self.error(f"unexpected {self.describe(t)}", t)

    def function_expr(self, is_async: bool, start: Token) -> Node:
        self.expect("function")
        is_gen = self.eat("*")
        if is_async and is_gen:
            raise self.unsupported("async generators", start)
        name = self.binding_name() if self.tok.kind is TokenKind.IDENT else None
        params, body = self.function_rest(is_async, is_gen)
        return self.function_node(K.FUNCTION_EXPR, name, params, body, is_async, is_gen, start.span)

    def template(self) -> Node:
        t = self.advance()
        parts = [Node(K.TEMPLATE_CHUNK, [], t.value, t.span)]
        while True:
            parts.append(self.expression())
            nt = self.tok
            if nt.kind is TokenKind.TEMPLATE_MIDDLE:
                self.advance()
                parts.append(Node(K.TEMPLATE_CHUNK, [], nt.value, nt.span))
            elif nt.kind is TokenKind.TEMPLATE_TAIL:
                self.advance()
                parts.append(Node(K.TEMPLATE_CHUNK, [], nt.value, nt.span))
                break
            else:
                raise self.error(f"expected '}}' closing template substitution but found {self.describe(nt)}")
        self.record(Feature.TEMPLATE_LITERALS)
        return Node(K.TEMPLATE_LIT, parts, None, t.span)

    def array_literal(self) -> Node:
        t = self.advance()
        items = []
        while not self.at("]"):
            st = self.tok
            if self.at(","):
                raise self.unsupported("array holes", st)
            if self.eat("..."):
                items.append(Node(K.SPREAD, [self.assignment()], None, st.span))
                self.record(Feature.SPREAD_EXPRESSIONS)
            else:
                items.append(self.assignment())
            if not self.eat(","):
                break
        self.expect("]")
        return Node(K.ARRAY_LIT, items, None, t.span)

    def object_literal(self) -> Node:
        t = self.advance()
        props = []
        while not self.at("}"):
            kt = self.tok
            if kt.kind in (TokenKind.IDENT, TokenKind.KEYWORD):
                key = kt.text
            elif kt.kind is TokenKind.STRING:
                key = kt.value
            elif kt.kind is TokenKind.NUMBER:
                    key = format_number(kt.value)
            elif kt.kind is TokenKind.PUNCT and kt.text == "[":
                raise self.unsupported("computed property names", kt)
            elif kt.kind is TokenKind.PUNCT and kt.text == "...":
                raise self.unsupported("object spread", kt)
            else:
                raise self.error(f"expected property name but found {self.describe(kt)}")
            self.advance()
            if not self.at(":"):
                if self.at("("):
                    raise self.unsupported("method shorthand", kt)
                if kt.kind is TokenKind.IDENT and kt.text in ("get", "set") and self.tok.kind is not TokenKind.PUNCT:
                    raise self.unsupported("getters and setters", kt)
                if self.at(",") or self.at("}"):
                    raise self.unsupported("shorthand properties", kt)
            self.expect(":")
            props.append(Node(K.PROPERTY, [self.assignment()], key, kt.span))
            if not self.eat(","):
                break
        self.expect("}")
        return Node(K.OBJECT_LIT, props, None, t.span)


def parse(source: str, source_name: str = "<input>", allow_reserved: bool = False) -> ScriptNode:
    """Parse MiniES ``source``.

    Raises :class:`ParseError` carrying one or more diagnostics on failure.
    ``allow_reserved`` admits ``$``-prefixed names, which transpiler output
    and runtime helpers use.
    """
    return Parser(source, source_name, allow_reserved).parse_script()
