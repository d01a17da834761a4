"""Tokenizer for the MiniES subset."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .nodes import Span


class TokenKind(enum.Enum):
    IDENT = "IDENT"
    KEYWORD = "KEYWORD"
    NUMBER = "NUMBER"
    STRING = "STRING"
    # template pieces; `value` holds the cooked text
    TEMPLATE_FULL = "TEMPLATE_FULL"
    TEMPLATE_HEAD = "TEMPLATE_HEAD"
    TEMPLATE_MIDDLE = "TEMPLATE_MIDDLE"
    TEMPLATE_TAIL = "TEMPLATE_TAIL"
    PUNCT = "PUNCT"
    EOF = "EOF"


class DiagnosticCode(enum.Enum):
    SYNTAX_ERROR = "SYNTAX_ERROR"
    UNSUPPORTED_CONSTRUCT = "UNSUPPORTED_CONSTRUCT"
    UNTERMINATED_STRING = "UNTERMINATED_STRING"
    UNTERMINATED_TEMPLATE = "UNTERMINATED_TEMPLATE"
    UNKNOWN_CHARACTER = "UNKNOWN_CHARACTER"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: Span
    # cooked string/template text, or the numeric value for NUMBER
    value: object = None
    newline_before: bool = False


@dataclass(frozen=True)
class ParseDiagnostic:
    message: str
    span: Span
    code: DiagnosticCode

    def format(self, source_name: str) -> str:
        return f"{source_name}:{self.span.line}:{self.span.col}: {self.code.value}: {self.message}"


class ParseError(Exception):
    def __init__(self, diagnostics: list[ParseDiagnostic]) -> None:
        self.diagnostics = diagnostics
        super().__init__("; ".join(f"{d.code.value} at {d.span}: {d.message}" for d in diagnostics))


KEYWORDS = frozenset("""
    var let const function class extends return if else while for do switch
    case default break continue throw try catch finally new this super null
    true false typeof void instanceof in delete await yield with debugger
    import export enum
""".split())

PUNCTUATORS = sorted("""
    >>>= === !== **= ... <<= >>= >>> => == != <= >= && || ?? ?. ** ++ -- += -= *=
    /= %= &= |= ^= << >> { } ( ) [ ] ; , < > + - * / % ! = ? : . ~ & | ^ @ #
""".split(), key=len, reverse=True)

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "b": "\b", "f": "\f", "v": "\v", "0": "\0"}


def _is_id_start(ch: str) -> bool:
    return ch == "_" or ch == "$" or ch.isalpha()


def _is_id_part(ch: str) -> bool:
    return ch == "_" or ch == "$" or ch.isalnum()


class Lexer:
    def __init__(self, source: str) -> None:
        self.src = source
        self.pos = 0
        self.line = 1
        self.line_start = 0
        self.tokens: list[Token] = []
        # one entry per open `${`: count of `{` opened inside it
        self.template_depth: list[int] = []

    def span_at(self, pos: int) -> Span:
        return Span(self.line, pos - self.line_start + 1, pos)

    def fail(self, code: DiagnosticCode, message: str, pos: Optional[int] = None) -> ParseError:
        return ParseError([ParseDiagnostic(message, self.span_at(self.pos if pos is None else pos), code)])

    def _newline(self, pos: int) -> None:
        self.line += 1
        self.line_start = pos + 1

    def skip_trivia(self) -> bool:
        """Skip whitespace and comments; report whether a newline was crossed."""
        src, saw_newline = self.src, False
        while self.pos < len(src):
            ch = src[self.pos]
            if ch == "\n":
                self._newline(self.pos)
                saw_newline = True
                self.pos += 1
            elif ch in " \t\r\f\v﻿ ":
                self.pos += 1
            elif src.startswith("//", self.pos):
                end = src.find("\n", self.pos)
                self.pos = len(src) if end < 0 else end
            elif src.startswith("/*", self.pos):
                end = src.find("*/", self.pos + 2)
                if end < 0:
                    raise self.fail(DiagnosticCode.SYNTAX_ERROR, "unterminated comment")
                for i in range(self.pos, end):
                    if src[i] == "\n":
                        self._newline(i)
                        saw_newline = True
                self.pos = end + 2
            else:
                break
        return saw_newline

    def run(self) -> list[Token]:
        src = self.src
        while True:
            nl = self.skip_trivia()
            if self.pos >= len(src):
                if self.template_depth:
                    raise self.fail(DiagnosticCode.UNTERMINATED_TEMPLATE, "unterminated template substitution")
                self.tokens.append(Token(TokenKind.EOF, "", self.span_at(self.pos), None, nl))
                return self.tokens
            start = self.pos
            ch = src[start]
            if _is_id_start(ch):
                end = start + 1
                while end < len(src) and _is_id_part(src[end]):
                    end += 1
                word = src[start:end]
                kind = TokenKind.KEYWORD if word in KEYWORDS else TokenKind.IDENT
                self.pos = end
                self.tokens.append(Token(kind, word, self.span_at(start), word, nl))
            elif ch.isdigit() or (ch == "." and start + 1 < len(src) and src[start + 1].isdigit()):
                self.tokens.append(self.number(start, nl))
            elif ch in "\"'":
                self.tokens.append(self.string(start, nl))
            elif ch == "`":
                self.pos += 1
                self.tokens.append(self.template(start, nl, head=True))
            elif ch == "}" and self.template_depth and self.template_depth[-1] == 0:
                self.template_depth.pop()
                self.pos += 1
                self.tokens.append(self.template(start, nl, head=False))
            else:
                self.tokens.append(self.punct(start, nl))

    def punct(self, start: int, nl: bool) -> Token:
        src = self.src
        for p in PUNCTUATORS:
            if src.startswith(p, start):
                # `?.` before a digit is a conditional followed by a number
                if p == "?." and start + 2 < len(src) and src[start + 2].isdigit():
                    p = "?"
                self.pos = start + len(p)
                if self.template_depth:
                    if p == "{":
                        self.template_depth[-1] += 1
                    elif p == "}":
                        self.template_depth[-1] -= 1
                return Token(TokenKind.PUNCT, p, self.span_at(start), p, nl)
        raise self.fail(DiagnosticCode.UNKNOWN_CHARACTER, f"unexpected character {src[start]!r}", start)

    def number(self, start: int, nl: bool) -> Token:
        src, end = self.src, start
        radix = {"x": 16, "o": 8, "b": 2}
        if src[start] == "0" and start + 1 < len(src) and src[start + 1].lower() in radix:
            base = radix[src[start + 1].lower()]
            end = start + 2
            while end < len(src) and src[end].isalnum():
                end += 1
            text = src[start:end]
            try:
                value = float(int(text[2:], base))
            except ValueError:
                raise self.fail(DiagnosticCode.SYNTAX_ERROR, f"malformed number {text!r}", start) from None
        else:
            while end < len(src) and src[end].isdigit():
                end += 1
            if end < len(src) and src[end] == ".":
                end += 1
                while end < len(src) and src[end].isdigit():
                    end += 1
            if end < len(src) and src[end] in "eE":
                e = end + 1
                if e < len(src) and src[e] in "+-":
                    e += 1
                if e < len(src) and src[e].isdigit():
                    end = e
                    while end < len(src) and src[end].isdigit():
                        end += 1
            text = src[start:end]
            value = float(text)
        if end < len(src) and (_is_id_part(src[end])):
            raise self.fail(DiagnosticCode.SYNTAX_ERROR, "identifier directly after number", end)
        self.pos = end
        return Token(TokenKind.NUMBER, text, self.span_at(start), value, nl)

    def escape(self, i: int) -> tuple[str, int]:
        """Decode the escape whose backslash is at ``i``; return (text, next index)."""
        src = self.src
        if i + 1 >= len(src):
            return "", i + 1
        c = src[i + 1]
        if c in _ESCAPES and not (c == "0" and i + 2 < len(src) and src[i + 2].isdigit()):
            return _ESCAPES[c], i + 2
        if c == "x":
            digits = src[i + 2:i + 4]
            if len(digits) == 2 and all(d in "0123456789abcdefABCDEF" for d in digits):
                return chr(int(digits, 16)), i + 4
            raise self.fail(DiagnosticCode.SYNTAX_ERROR, "malformed \\x escape", i)
        if c == "u":
            if src.startswith("{", i + 2):
                close = src.find("}", i + 3)
                body = src[i + 3:close] if close > 0 else ""
                try:
                    return chr(int(body, 16)), close + 1
                except ValueError:
                    raise self.fail(DiagnosticCode.SYNTAX_ERROR, "malformed \\u escape", i) from None
            digits = src[i + 2:i + 6]
            try:
                return chr(int(digits, 16)), i + 6
            except ValueError:
                raise self.fail(DiagnosticCode.SYNTAX_ERROR, "malformed \\u escape", i) from None
        if c == "\r" and src.startswith("\n", i + 2):
            self._newline(i + 2)
            return "", i + 3
        if c == "\n":
            self._newline(i + 1)
            return "", i + 2
        if c.isdigit():
            raise self.fail(DiagnosticCode.UNSUPPORTED_CONSTRUCT, "octal escape", i)
        return c, i + 2

    def string(self, start: int, nl: bool) -> Token:
        src, quote = self.src, self.src[start]
        span = self.span_at(start)
        i, out = start + 1, []
        while True:
            if i >= len(src) or src[i] == "\n":
                raise self.fail(DiagnosticCode.UNTERMINATED_STRING, "unterminated string literal", start)
            ch = src[i]
            if ch == quote:
                break
            if ch == "\\":
                text, i = self.escape(i)
                out.append(text)
            else:
                out.append(ch)
                i += 1
        self.pos = i + 1
        return Token(TokenKind.STRING, src[start:i + 1], span, "".join(out), nl)

    def template(self, start: int, nl: bool, head: bool) -> Token:
        """Scan template characters from ``self.pos`` up to a closing backtick or `${`."""
        src = self.src
        span = self.span_at(start)
        i, out = self.pos, []
        while True:
            if i >= len(src):
                raise self.fail(DiagnosticCode.UNTERMINATED_TEMPLATE, "unterminated template literal", start)
            ch = src[i]
            if ch == "`":
                kind = TokenKind.TEMPLATE_FULL if head else TokenKind.TEMPLATE_TAIL
                i += 1
                break
            if ch == "$" and src.startswith("{", i + 1):
                kind = TokenKind.TEMPLATE_HEAD if head else TokenKind.TEMPLATE_MIDDLE
                self.template_depth.append(0)
                i += 2
                break
            if ch == "\\":
                text, i = self.escape(i)
                out.append(text)
                continue
            if ch == "\r":
                # template newlines normalize to LF
                if src.startswith("\n", i + 1):
                    i += 1
                ch = "\n"
            if ch == "\n":
                self._newline(i)
            out.append(ch)
            i += 1
        self.pos = i
        return Token(kind, src[start:i], span, "".join(out), nl)


def lex(source: str) -> list[Token]:
    """Tokenize ``source``; raises :class:`ParseError` on lexical errors."""
    return Lexer(source).run()
