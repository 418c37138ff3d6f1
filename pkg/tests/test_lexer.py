from egen.lexer import KEYWORDS, TokenKind, tokenize


def kinds(tokens):
    return [(t.kind, t.lexeme) for t in tokens]


def test_single_policy_binding_line():
    toks, diags = tokenize("SensingInterval = 3000 AND")
    assert diags == []
    assert kinds(toks) == [
        (TokenKind.KEYWORD, "SensingInterval"),
        (TokenKind.EQUALS, "="),
        (TokenKind.INTEGER, "3000"),
        (TokenKind.KEYWORD, "AND"),
        (TokenKind.EOF, ""),
    ]


def test_empty():
    toks, diags = tokenize("")
    assert kinds(toks) == [(TokenKind.EOF, "")]
    assert diags == []


def test_illegal_character():
    toks, diags = tokenize("@")
    assert [d.code for d in diags] == ["E001"]
    assert diags[0].span.start == 0 and diags[0].span.end == 1
    assert kinds(toks) == [(TokenKind.EOF, "")]


def test_reports_every_illegal_character_and_continues():
    toks, diags = tokenize("a @ b # c")
    assert [d.span.start for d in diags] == [2, 6]
    assert [t.lexeme for t in toks] == ["a", "b", "c", ""]


def test_comments_and_whitespace_skipped():
    toks, _ = tokenize("// header\n\tAND // trailing\n{}")
    assert kinds(toks) == [(TokenKind.KEYWORD, "AND"), (TokenKind.LBRACE, "{"),
                           (TokenKind.RBRACE, "}"), (TokenKind.EOF, "")]


def test_all_keywords_recognised():
    toks, diags = tokenize(" ".join(sorted(KEYWORDS)))
    assert diags == []
    assert all(t.kind is TokenKind.KEYWORD for t in toks[:-1])
    assert len(toks) == len(KEYWORDS) + 1


def test_unknown_words_are_identifiers():
    toks, _ = tokenize("linear Foo_1")
    assert [t.kind for t in toks[:-1]] == [TokenKind.IDENTIFIER, TokenKind.IDENTIFIER]


def test_leading_zero_integer():
    toks, _ = tokenize("007")
    assert toks[0].kind is TokenKind.INTEGER and toks[0].lexeme == "007"


def test_spans_line_column_tabs_one_column():
    toks, _ = tokenize("AND\n\tthen")
    then = toks[1]
    assert (then.span.start, then.span.end, then.span.line, then.span.column) == (5, 9, 2, 2)


def test_spans_are_byte_offsets():
    toks, diags = tokenize("é AND")
    assert diags[0].span.start == 0 and diags[0].span.end == 2
    assert toks[0].span.start == 3
    assert toks[0].span.column == 3


def test_invalid_utf8_bytes_reported_not_raised():
    toks, diags = tokenize(b"AND \xff\xfe then")
    assert [d.code for d in diags] == ["E001", "E001"]
    assert [d.span.start for d in diags] == [4, 5]
    assert [t.lexeme for t in toks] == ["AND", "then", ""]
