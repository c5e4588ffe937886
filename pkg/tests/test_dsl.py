import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from progen import garbage_lines, program, statement_lines

from mlguard.dsl import (
    LexError,
    TokenKind,
    format_pipeline,
    parse_source,
    parse_statement,
    tokenize,
)
from mlguard.dsl import ast


def slice_of(source: str, span) -> str:
    return source.encode("utf-8")[span.start_byte:span.end_byte].decode("utf-8")


def test_tokenize_listing_line():
    toks = tokenize('model = SVC(kernel="line")')
    assert [(t.kind, t.lexeme) for t in toks] == [
        (TokenKind.IDENTIFIER, "model"), (TokenKind.PUNCT, "="), (TokenKind.IDENTIFIER, "SVC"),
        (TokenKind.PUNCT, "("), (TokenKind.IDENTIFIER, "kernel"), (TokenKind.PUNCT, "="),
        (TokenKind.TEXT, '"line"'), (TokenKind.PUNCT, ")"), (TokenKind.EOF, ""),
    ]


def test_tokenize_empty_is_only_eof():
    toks = tokenize("")
    assert len(toks) == 1 and toks[0].kind is TokenKind.EOF


def test_unterminated_text_points_at_the_quote():
    with pytest.raises(LexError) as exc:
        tokenize('x = "unterminated')
    assert exc.value.span.start_col == 5
    assert "unterminated" in exc.value.message


def test_illegal_character():
    with pytest.raises(LexError) as exc:
        tokenize("x = 3 $")
    assert exc.value.span.start_col == 7


def test_literal_kinds():
    kinds = [t.kind for t in tokenize('true 3 -2 0.5 1e3 "s" fit')][:-1]
    assert kinds == [TokenKind.BOOL, TokenKind.INT, TokenKind.INT, TokenKind.FLOAT, TokenKind.FLOAT,
                     TokenKind.TEXT, TokenKind.KEYWORD]


@settings(max_examples=60, deadline=None)
@given(st.lists(statement_lines(), max_size=8), st.sampled_from(["", "  # note", "\t"]))
def test_tokens_and_gaps_reconstruct_the_source(lines, trailer):
    source = program([line + trailer for line in lines])
    toks = tokenize(source)
    raw = source.encode("utf-8")
    pos = 0
    for t in toks:
        assert slice_of(source, t.span) == t.lexeme
        gap = raw[pos:t.span.start_byte].decode()
        stripped = "\n".join(line.split("#", 1)[0] for line in gap.split("\n"))
        assert stripped.strip() == ""
        pos = t.span.end_byte
    assert toks[-1].kind is TokenKind.EOF and pos == len(raw)


def test_golden_parses_cleanly(golden_source):
    tree, diags = parse_source(golden_source, "titanic.mlp")
    assert diags == []
    assert tree.name.text == "titanic"
    assert len(tree.statements) == 13
    assert [type(s).__name__ for s in tree.statements[:3]] == ["Load", "Split", "TransformDecl"]


def test_empty_pipeline():
    tree, diags = parse_source("pipeline p { }")
    assert diags == [] and tree.statements == ()
    assert format_pipeline(tree) == "pipeline p {\n}\n"


def test_recovery_keeps_later_statements():
    src = program(['d = load "a.csv"', "fit m d", "m = SVC()"])
    tree, diags = parse_source(src)
    assert len(tree.statements) == 2
    assert len(diags) == 1 and diags[0].code == "E-SYN-001"
    assert diags[0].span.start_line == 3
    assert "expected" in diags[0].message


def test_truncated_statement_reports_end_of_line():
    tree, diags = parse_source(program(["m =", "m = SVC()"]))
    assert len(diags) == 1 and "end of line" in diags[0].message
    assert len(tree.statements) == 1


def test_missing_closing_brace():
    tree, diags = parse_source('pipeline p {\n  d = load "a"\n')
    assert len(tree.statements) == 1
    assert any("'}'" in d.message for d in diags)


def test_lex_error_becomes_a_diagnostic():
    tree, diags = parse_source('pipeline p {\n  d = load "a\n}\n')
    assert tree is None
    assert [d.code for d in diags] == ["E-SYN-002"]


def test_require_threshold_is_float():
    tree, _ = parse_source(program(["require accuracy > 1"]))
    assert tree.statements[0].threshold.value == 1.0 and tree.statements[0].op == ">"


def test_format_round_trip_golden(golden_source):
    tree, _ = parse_source(golden_source)
    text = format_pipeline(tree)
    assert text == golden_source
    again, _ = parse_source(text)
    assert again == tree


def test_format_normalises_spacing():
    messy = 'pipeline   p{\n d=load   "a.csv"   # hi\n\n  m=SVC( kernel = "rbf" ,degree=2 )\n}'
    tree, diags = parse_source(messy)
    assert diags == []
    assert format_pipeline(tree) == 'pipeline p {\n  d = load "a.csv"\n  m = SVC(kernel="rbf", degree=2)\n}\n'


@settings(max_examples=60, deadline=None)
@given(st.lists(statement_lines(), max_size=10))
def test_format_is_a_fixpoint(lines):
    tree, diags = parse_source(program(lines))
    assert diags == []
    once = format_pipeline(tree)
    tree2, _ = parse_source(once)
    assert tree2 == tree
    assert format_pipeline(tree2) == once


def _nodes(stmt):
    for value in vars(stmt).values():
        items = value if isinstance(value, tuple) else (value,)
        for item in items:
            if isinstance(item, ast.Arg):
                yield item.name
                yield item.value
            elif isinstance(item, (ast.Name, ast.Lit)):
                yield item


@settings(max_examples=60, deadline=None)
@given(st.lists(statement_lines(), min_size=1, max_size=8))
def test_spans_are_lossless(lines):
    source = program(lines)
    tree, _ = parse_source(source)
    for stmt in tree.statements:
        assert parse_statement(slice_of(source, stmt.span)) == stmt
        for node in _nodes(stmt):
            text = slice_of(source, node.span)
            if isinstance(node, ast.Name):
                assert text == node.text
            else:
                tok = tokenize(text)[0]
                assert tok.span.end_byte == len(text.encode())


def test_golden_spans_are_lossless(golden_source):
    tree, _ = parse_source(golden_source)
    for stmt in tree.statements:
        assert parse_statement(slice_of(golden_source, stmt.span)) == stmt


def _shifted(diags, at_line):
    return [(d.span.start_line + (d.span.start_line >= at_line), d.span.start_col, d.message) for d in diags]


@settings(max_examples=80, deadline=None)
@given(
    st.lists(statement_lines() | garbage_lines, max_size=8),
    statement_lines(),
    st.data(),
)
def test_adding_a_valid_statement_keeps_earlier_syntax_diagnostics(lines, extra, data):
    pos = data.draw(st.integers(0, len(lines)))
    _, before = parse_source(program(lines))
    _, after = parse_source(program(lines[:pos] + [extra] + lines[pos:]))
    inserted_line = pos + 2
    kept = set((d.span.start_line, d.span.start_col, d.message) for d in after)
    for item in _shifted(before, inserted_line):
        assert item in kept


@settings(max_examples=40, deadline=None)
@given(st.lists(statement_lines() | garbage_lines, max_size=8))
def test_parsing_is_deterministic(lines):
    src = program(lines)
    a, da = parse_source(src)
    b, db = parse_source(src)
    assert a == b and da == db
