from conftest import FIXTURES
from hypothesis import given, settings
from hypothesis import strategies as st
from progen import program, statement_lines
from typestate_oracle import replay

from mlguard.checker import check_temporal, resolve
from mlguard.dsl import parse_source


def both(source, spec):
    tree, diags = parse_source(source)
    assert diags == []
    program_, _ = resolve(tree, spec)
    return check_temporal(program_, spec), replay(tree, spec)


def test_oracle_agrees_on_fixture_corpus(spec):
    paths = [FIXTURES / "titanic.mlp", *sorted((FIXTURES / "errors").glob("*.mlp")),
             *sorted((FIXTURES / "practices").glob("*.mlp"))]
    for path in paths:
        tree, diags = parse_source(path.read_text())
        if diags:
            continue
        program_, _ = resolve(tree, spec)
        assert check_temporal(program_, spec) == replay(tree, spec), path.name


@settings(max_examples=100, deadline=None)
@given(st.lists(statement_lines(), min_size=5, max_size=15))
def test_oracle_agrees_on_generated_programs(spec, lines):
    got, want = both(program(lines), spec)
    assert got == want


def test_predict_before_fit(spec):
    got, _ = both(program(["m = SVC()", 'd = load "a"', "call m.predict d", 'fit m on d label "y"']), spec)
    assert [(d.code, d.message) for d in got] == [("E-TEMP-001", "fit must be called before predict on m")]


def test_rebinding_starts_a_fresh_typestate(spec):
    got, want = both(program([
        'd = load "a"', "m = SVC(probability=true)", 'fit m on d label "y"', "m = SVC()", "call m.predict d",
    ]), spec)
    assert [d.code for d in got] == ["E-TEMP-001"] and got == want
