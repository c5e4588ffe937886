import hashlib
import re

import pytest
from conftest import FIXTURES, GOLDEN, edit
from hypothesis import given, settings
from hypothesis import strategies as st
from progen import program

from mlguard.checker import check_source
from mlguard.codegen import (
    CONSTRUCTS,
    BackendErrors,
    RefusalError,
    emit_run_manifest,
    format_manifest,
    generate,
    load_backend,
    load_reference_backend,
    parse_manifest,
)
from mlguard.codegen.backend import bundled_backend_text

STAMP = "2024-01-01T00:00:00Z"


@pytest.fixture(scope="module")
def backend():
    return load_reference_backend()


def build(source, spec, backend):
    report = check_source(source, spec, "t.mlp")
    return report, generate(report.program, report, backend)


def test_reference_backend_loads(backend):
    assert backend.name == "reference"
    for construct in CONSTRUCTS:
        assert backend.lookup(construct) is not None
    assert backend.digest == hashlib.sha256(bundled_backend_text().encode()).hexdigest()


def _without(text, construct):
    return re.sub(rf"template {construct} \{{\n(\|.*\n)*\}}\n", "", text)


def test_backend_missing_split_is_rejected():
    with pytest.raises(BackendErrors) as exc:
        load_backend(_without(bundled_backend_text(), "split"))
    assert len(exc.value.errors) == 1
    assert "split" in str(exc.value.errors[0])


def test_backend_unknown_and_malformed_placeholders():
    base = bundled_backend_text()
    with pytest.raises(BackendErrors) as exc:
        load_backend(base + "template set Foo {\n| {modle}.x = 1\n}\n")
    assert "{modle}" in str(exc.value)
    with pytest.raises(BackendErrors) as exc:
        load_backend(base + "template fit Foo {\n| {model\n}\n")
    assert "malformed placeholder" in str(exc.value)
    with pytest.raises(BackendErrors) as exc:
        load_backend(base + "template fit Bar {\n| {model!r}\n}\n")
    assert "malformed placeholder" in str(exc.value)


def test_backend_reports_every_missing_construct():
    with pytest.raises(BackendErrors) as exc:
        load_backend('backend tiny version "0"\n')
    assert len(exc.value.errors) == len(CONSTRUCTS)


def test_golden_output(spec, golden_source, backend):
    _, text = build(golden_source, spec, backend)
    assert text == (GOLDEN / "titanic.out").read_text(encoding="utf-8")
    compile(text, "titanic.out", "exec")


def test_generation_refuses_on_errors(spec, backend):
    src = (FIXTURES / "errors" / "kernel_typo.mlp").read_text()
    report = check_source(src, spec, "t.mlp")
    with pytest.raises(RefusalError) as exc:
        generate(report.program, report, backend)
    assert exc.value.codes == ["E-TYPE-001"]


def test_warnings_do_not_block(spec, golden_source, backend):
    report, text = build(edit(golden_source, ' stratify "survived"', ""), spec, backend)
    assert report.codes == ["W-ML-002"] and text
    denied = check_source(edit(golden_source, ' stratify "survived"', ""), spec, "t.mlp", deny_warnings=True)
    with pytest.raises(RefusalError):
        generate(denied.program, denied, backend)


def test_empty_pipeline_is_preamble_and_postamble(spec, backend):
    _, text = build("pipeline empty {\n}\n", spec, backend)
    head = backend.preamble.format(pipeline="empty")
    tail = backend.postamble.format(pipeline="empty")
    assert text == head + tail


def test_specialised_templates_win(spec, backend, golden_source):
    _, text = build(golden_source, spec, backend)
    assert "SimpleImputer(strategy=\"mean\")" in text and "accuracy_score" in text


def test_statement_order_is_preserved(spec, backend, golden_source):
    _, text = build(golden_source, spec, backend)
    markers = [int(m) for m in re.findall(r"# \[(\d+)\] ", text)]
    assert markers == list(range(1, 14))


MODEL_FREE = st.sampled_from([
    'd = load "a.csv"', "tr, va, te = split d ratios (0.6, 0.2, 0.2) seed 3",
    'i = impute(strategy="median") fit on tr', "tr = apply i tr", "va = apply i va", "te = apply i te",
])


@settings(max_examples=40, deadline=None)
@given(st.lists(MODEL_FREE, max_size=8))
def test_order_property_on_generated_programs(spec, backend, lines):
    report = check_source(program(lines), spec, "t.mlp")
    if report.error_count:
        return
    text = generate(report.program, report, backend)
    markers = [int(m) for m in re.findall(r"# \[(\d+)\] ", text)]
    assert markers == list(range(1, len(lines) + 1))
    assert text == generate(report.program, report, backend)


def test_backend_choice_does_not_change_the_report(spec, golden_source, backend):
    other = load_backend(bundled_backend_text().replace('option true = "True"', 'option true = "1"'))
    a = check_source(golden_source, spec, "t.mlp")
    generate(a.program, a, other)
    b = check_source(golden_source, spec, "t.mlp")
    generate(b.program, b, backend)
    assert a.diagnostics == b.diagnostics


def test_manifest_golden(spec, specs, golden_source, backend):
    report = check_source(golden_source, spec, "t.mlp")
    m = emit_run_manifest(report.program, golden_source.encode(), specs, backend, timestamp=STAMP)
    assert m.seed == 42
    assert m.requirements == (("accuracy", ">=", 0.8),)
    assert m.source_sha256 == hashlib.sha256((FIXTURES / "titanic.mlp").read_bytes()).hexdigest()
    assert format_manifest(m) == (GOLDEN / "titanic.manifest").read_text(encoding="utf-8")
    assert parse_manifest(format_manifest(m)) == m


def test_manifest_without_require_or_seed(spec, specs, backend):
    src = program(['d = load "a.csv"', "tr, va, te = split d ratios (0.6, 0.2, 0.2)"])
    report = check_source(src, spec, "t.mlp")
    m = emit_run_manifest(report.program, src, specs, backend, timestamp=STAMP)
    assert m.requirements == () and m.seed is None
    assert parse_manifest(format_manifest(m)) == m


def test_manifest_is_byte_stable(spec, specs, golden_source, backend, monkeypatch):
    report = check_source(golden_source, spec, "t.mlp")
    one = format_manifest(emit_run_manifest(report.program, golden_source, specs, backend, {"p.profile": b"x"}, STAMP))
    two = format_manifest(emit_run_manifest(report.program, golden_source, specs, backend, {"p.profile": b"x"}, STAMP))
    assert one == two
    assert f"profile = p.profile {hashlib.sha256(b'x').hexdigest()}" in one
    monkeypatch.setenv("MLGUARD_TIMESTAMP", STAMP)
    three = format_manifest(emit_run_manifest(report.program, golden_source, specs, backend, {"p.profile": b"x"}))
    assert three == one
