"""Recursive-descent parser for ``.egen`` policy files.

Accepted shape, per policy::

    AdaptationPolicy <int> {
        Condition { <ctx> AND <ctx> AND <ctx> AND <ctx> AND <ctx> } then
        Adaptation { <feat> AND <feat> AND <feat> }
    }

A syntax error abandons the current policy and resumes at the next
``AdaptationPolicy`` keyword.
"""
from __future__ import annotations

from typing import Union

from .lexer import Token, TokenKind, tokenize
from .model import (AdaptationPolicy, Binding, ContextBlock, ContextKey,
                    Diagnostic, FeatureBlock, FeatureKey, PolicyId,
                    PolicyModel, Severity, Span, VALUE_TYPES)

MAX_INT = 2**31 - 1
CONTEXT_ARITY = 5
FEATURE_ARITY = 3

CONTEXT_KEYWORDS = {k.value: k for k in ContextKey}
FEATURE_KEYWORDS = {k.value: k for k in FeatureKey}
FEATURE_KEYWORDS["DecreasingFactor"] = FeatureKey.DECREASING_FACTOR


class _Abandon(Exception):
    """Unwinds out of a policy after a fatal syntax error."""


class _Parser:
    def __init__(self, tokens: list[Token], diags: list[Diagnostic]):
        self.tokens = tokens
        self.pos = 0
        self.diags = diags
        self.policy_failed = False

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind is not TokenKind.EOF:
            self.pos += 1
        return tok

    def error(self, code: str, message: str, span: Span):
        self.diags.append(Diagnostic(Severity.ERROR, code, message, span))

    def fail_expected(self, what: str):
        tok = self.tok
        if tok.kind is TokenKind.IDENTIFIER:
            self.error("E002", f"unknown word '{tok.lexeme}' (expected {what})", tok.span)
        else:
            self.error("E010", f"expected {what}, found {tok.describe()}", tok.span)
        raise _Abandon

    def expect_keyword(self, name: str) -> Token:
        if not self.tok.is_keyword(name):
            self.fail_expected(f"'{name}'")
        return self.advance()

    def expect(self, kind: TokenKind) -> Token:
        if self.tok.kind is not kind:
            self.fail_expected(kind.value)
        return self.advance()

    def integer(self) -> tuple[int, str]:
        tok = self.expect(TokenKind.INTEGER)
        value = int(tok.lexeme)
        if value > MAX_INT:
            self.error("E012", f"integer {tok.lexeme} exceeds {MAX_INT}", tok.span)
            self.policy_failed = True
            return MAX_INT, str(MAX_INT)
        return value, tok.lexeme

    def sync(self):
        """Skip to the next ``AdaptationPolicy`` keyword (or EOF)."""
        while self.tok.kind is not TokenKind.EOF and not self.tok.is_keyword("AdaptationPolicy"):
            self.advance()

    def parse_model(self, source_name: str) -> PolicyModel:
        policies = []
        while self.tok.kind is not TokenKind.EOF:
            start = self.pos
            self.policy_failed = False
            try:
                policy = self.parse_policy()
            except _Abandon:
                if self.pos == start:
                    self.advance()
                self.sync()
                continue
            if not self.policy_failed:
                policies.append(policy)
        return PolicyModel(tuple(policies), source_name)

    def parse_policy(self) -> AdaptationPolicy:
        head = self.expect_keyword("AdaptationPolicy")
        value, raw = self.integer()
        self.expect(TokenKind.LBRACE)
        self.expect_keyword("Condition")
        self.expect(TokenKind.LBRACE)
        ctx = self.block(CONTEXT_KEYWORDS, FEATURE_KEYWORDS, CONTEXT_ARITY, "context")
        self.expect(TokenKind.RBRACE)
        self.expect_keyword("then")
        self.expect_keyword("Adaptation")
        self.expect(TokenKind.LBRACE)
        feats = self.block(FEATURE_KEYWORDS, CONTEXT_KEYWORDS, FEATURE_ARITY, "feature")
        self.expect(TokenKind.RBRACE)
        end = self.expect(TokenKind.RBRACE)
        span = Span(head.span.start, end.span.end, head.span.line, head.span.column)
        return AdaptationPolicy(PolicyId(value, raw), ContextBlock(ctx),
                                FeatureBlock(feats), span)

    def block(self, allowed, foreign, arity, label) -> tuple[Binding, ...]:
        bindings = [self.binding(allowed, foreign, label)]
        for _ in range(arity - 1):
            self.expect_keyword("AND")
            bindings.append(self.binding(allowed, foreign, label))
        return tuple(bindings)

    def binding(self, allowed, foreign, label) -> Binding:
        head = self.tok
        if head.kind is TokenKind.KEYWORD and head.lexeme in foreign:
            other = "feature" if label == "context" else "context"
            where = "Condition" if label == "context" else "Adaptation"
            self.error("E011", f"{other} binding '{head.lexeme}' is not allowed "
                               f"inside the {where} block", head.span)
            raise _Abandon
        if head.kind is not TokenKind.KEYWORD or head.lexeme not in allowed:
            self.fail_expected(f"a {label} binding")
        key = allowed[head.lexeme]
        self.advance()
        self.expect(TokenKind.EQUALS)
        vtype = VALUE_TYPES[key]
        if vtype is int:
            value, _ = self.integer()
            last = self.tokens[self.pos - 1]
        else:
            choices = [m.value for m in vtype]
            if self.tok.kind is not TokenKind.KEYWORD or self.tok.lexeme not in choices:
                self.fail_expected(" or ".join(f"'{c}'" for c in choices))
            last = self.advance()
            value = vtype(last.lexeme)
        span = Span(head.span.start, last.span.end, head.span.line, head.span.column)
        return Binding(key, value, span)


def parse(source: Union[str, bytes], source_name: str = "<input>") -> tuple[PolicyModel, list[Diagnostic]]:
    """Parse ``source`` into a model; never raises on malformed input."""
    tokens, diags = tokenize(source)
    parser = _Parser(tokens, diags)
    model = parser.parse_model(source_name)
    diags.sort(key=lambda d: (d.span.start, d.code))
    return model, diags

