"""Tokenizer for ``.egen`` sources."""
from __future__ import annotations

import bisect
import enum
import re
from dataclasses import dataclass
from typing import Union

from .model import Diagnostic, Severity, Span

KEYWORDS = frozenset({
    "AdaptationPolicy", "Condition", "then", "Adaptation", "AND",
    "BatteryState", "BatteryLevel", "AppState", "Threshold_High",
    "Threshold_Medium", "SensingInterval", "Decreasing_Factor",
    "DecreasingFactor", "BatteryAwareFunction", "Charging", "Discharging",
    "High", "Medium", "Low", "Foreground", "Background", "Linear",
    "Exponential",
})


class TokenKind(enum.Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    INTEGER = "integer"
    EQUALS = "'='"
    LBRACE = "'{'"
    RBRACE = "'}'"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: Span

    def is_keyword(self, name: str) -> bool:
        return self.kind is TokenKind.KEYWORD and self.lexeme == name

    def describe(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of input"
        if self.kind is TokenKind.INTEGER:
            return f"integer {self.lexeme}"
        return f"'{self.lexeme}'"


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n\f\v]+)
  | (?P<comment>//[^\n]*)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<punct>[={}])
""", re.VERBOSE | re.ASCII)

_PUNCT = {"=": TokenKind.EQUALS, "{": TokenKind.LBRACE, "}": TokenKind.RBRACE}


class SourceMap:
    """Maps character indices of decoded text to byte offsets and line/column."""

    def __init__(self, text: str):
        self.text = text
        self._newlines = [m.start() for m in re.finditer("\n", text)]
        if text.isascii():
            self._bytes = None
        else:
            offs = [0]
            for ch in text:
                offs.append(offs[-1] + len(ch.encode("utf-8", "surrogateescape")))
            self._bytes = offs

    def byte_offset(self, index: int) -> int:
        return index if self._bytes is None else self._bytes[index]

    def span(self, start: int, end: int) -> Span:
        line = bisect.bisect_left(self._newlines, start)
        line_start = self._newlines[line - 1] + 1 if line else 0
        return Span(self.byte_offset(start), self.byte_offset(end), line + 1,
                    start - line_start + 1)


def decode(source: Union[str, bytes]) -> str:
    if isinstance(source, bytes):
        # surrogateescape keeps invalid bytes addressable (and reportable as E001)
        return source.decode("utf-8", "surrogateescape")
    return source


def tokenize(source: Union[str, bytes]) -> tuple[list[Token], list[Diagnostic]]:
    """Split ``source`` into tokens; illegal characters yield E001 and are skipped."""
    text = decode(source)
    smap = SourceMap(text)
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    pos, n = 0, len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            ch = text[pos]
            shown = repr(ch) if ch.isprintable() else f"U+{ord(ch):04X}"
            diags.append(Diagnostic(Severity.ERROR, "E001",
                                    f"unexpected character {shown}",
                                    smap.span(pos, pos + 1)))
            pos += 1
            continue
        kind = m.lastgroup
        span = smap.span(m.start(), m.end())
        lexeme = m.group()
        if kind == "word":
            tk = TokenKind.KEYWORD if lexeme in KEYWORDS else TokenKind.IDENTIFIER
            tokens.append(Token(tk, lexeme, span))
        elif kind == "int":
            tokens.append(Token(TokenKind.INTEGER, lexeme, span))
        elif kind == "punct":
            tokens.append(Token(_PUNCT[lexeme], lexeme, span))
        pos = m.end()
    tokens.append(Token(TokenKind.EOF, "", smap.span(n, n)))
    return tokens, diags
