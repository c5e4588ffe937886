"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` (or ``python3 tests/test_acceptance.py``)
to see the lines.
"""
import math
import random
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import FIXTURES, GOLDEN, TITANIC, edit  # noqa: E402
from progen import program, random_lines  # noqa: E402
from typestate_oracle import replay  # noqa: E402

from mlguard.apispec import load_bundled_specs, merge_specs  # noqa: E402
from mlguard.checker import check_source, check_temporal, resolve  # noqa: E402
from mlguard.cli import main  # noqa: E402
from mlguard.dsl import ast, format_pipeline, parse_source  # noqa: E402
from mlguard.profiler import audit_split, entropy, profile_csv  # noqa: E402

SPEC = merge_specs(load_bundled_specs())
GOLDEN_SRC = TITANIC.read_text(encoding="utf-8")
KERNELS = ("linear", "poly", "rbf", "sigmoid", "precomputed")
STAMP = "2024-01-01T00:00:00Z"


def check(src, **kw):
    return check_source(src, SPEC, "t.mlp", **kw)


def quiet_main(argv):
    from contextlib import redirect_stderr, redirect_stdout
    from io import StringIO

    out, err = StringIO(), StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue()


def criterion_1():
    """misspelled kernel: one E-TYPE-001 at the declaration, literals listed, "linear" offered, exit 1"""
    path = FIXTURES / "errors" / "kernel_typo.mlp"
    src = path.read_text()
    r = check(src)
    errors = [d for d in r.diagnostics if d.is_error]
    assert [d.code for d in errors] == ["E-TYPE-001"], r.codes
    decl = next(s for s in r.program.ast.statements if isinstance(s, ast.ModelDecl))
    fit = next(s for s in r.program.ast.statements if isinstance(s, ast.Fit))
    d = errors[0]
    assert decl.span.start_byte <= d.span.start_byte and d.span.end_byte <= decl.span.end_byte
    assert not (fit.span.start_byte <= d.span.start_byte < fit.span.end_byte)
    assert all(f'"{k}"' in d.message for k in KERNELS)
    assert [f.replacement for f in d.suggestions] == ['"linear"']
    assert quiet_main(["check", path, "--spec", "@bundled"])[0] == 1


def criterion_2():
    """irrelevant degree: rbf+degree=5 gives exactly one W-DEP-001, poly+degree=5 gives nothing"""
    rbf = check(edit(GOLDEN_SRC, 'SVC(kernel="poly", degree=3)', 'SVC(kernel="rbf", degree=5)'))
    assert rbf.codes == ["W-DEP-001"], rbf.codes
    poly = check(edit(GOLDEN_SRC, 'SVC(kernel="poly", degree=3)', 'SVC(kernel="poly", degree=5)'))
    assert poly.codes == [], poly.codes


def criterion_3():
    """probability ordering: golden passes, deleting or moving the set gives E-TEMP-002 at predict_proba"""
    assert check(GOLDEN_SRC).codes == []
    deleted = check(edit(GOLDEN_SRC, "  set model.probability = true\n", ""))
    assert deleted.codes == ["E-TEMP-002"], deleted.codes
    call = next(s for s in deleted.program.ast.statements if isinstance(s, ast.Call))
    assert call.method.text == "predict_proba" and deleted.diagnostics[0].span == call.span
    moved = check(edit(GOLDEN_SRC, '  set model.probability = true\n  fit model on train label "survived"\n',
                       '  fit model on train label "survived"\n  set model.probability = true\n'))
    assert "E-TEMP-002" in moved.codes, moved.codes


def criterion_4():
    """verbose=true flags W-CTX-001 iff the multithreaded context is given"""
    src = edit(GOLDEN_SRC, "degree=3)", "degree=3, verbose=true)")
    assert check(src, contexts={"multithreaded"}).codes == ["W-CTX-001"]
    assert check(src).codes == []


def criterion_5():
    """fraction 1.5 against a float(0,1) parameter: E-TYPE-002 mentioning "between 0 and 1" """
    r = check(edit(GOLDEN_SRC, "ratios (0.7,", "ratios (1.5,"))
    d = [d for d in r.diagnostics if d.code == "E-TYPE-002"]
    assert len(d) == 1 and "between 0 and 1" in d[0].message


def criterion_6():
    """best-practice matrix: six pass/fail fixture pairs"""
    for code in ("W-ML-001", "W-ML-002", "E-ML-003", "W-ML-004", "E-ML-005", "E-ML-006"):
        ok = check((FIXTURES / "practices" / f"{code}_pass.mlp").read_text()).codes
        bad = check((FIXTURES / "practices" / f"{code}_fail.mlp").read_text()).codes
        assert ok == [], (code, ok)
        assert bad == [code], (code, bad)


def criterion_7():
    """entropy: exact examples within 1e-9 and bounds over 1000 random count vectors"""
    assert abs(entropy([1, 1, 1, 1]) - 2.0) <= 1e-9
    assert abs(entropy([8, 4, 4]) - 1.5) <= 1e-9
    assert abs(entropy([5]) - 0.0) <= 1e-9
    rng = random.Random(1000)
    for _ in range(1000):
        k = rng.randint(1, 20)
        counts = [rng.randint(1, 500) for _ in range(k)]
        h = entropy(counts)
        assert -1e-12 <= h <= math.log2(k) + 1e-9
        uniform = entropy([counts[0]] * k)
        assert abs(uniform - math.log2(k)) <= 1e-9


def criterion_8():
    """split audit: stratified fixture at distance 0, skewed fixture at 0.4 with threshold 0.05"""
    def audit(kind):
        paths = [FIXTURES / "audit" / kind / f"{n}.csv" for n in ("full", "train", "val", "test")]
        full, *splits = (profile_csv(p, label="survived") for p in paths)
        return audit_split(full, splits, "survived", 0.05)

    ok = audit("stratified")
    assert ok.verdict == "stratified" and all(r.tv_distance_to_full == 0 for r in ok.splits)
    bad = audit("skewed")
    assert bad.verdict == "skewed" and bad.threshold == 0.05
    assert abs(max(r.tv_distance_to_full for r in bad.splits) - 0.4) <= 1e-9


def criterion_9():
    """typestate oracle: checker equals brute-force replay on 500 random 5-15 statement programs"""
    rng = random.Random(20240601)
    fired = 0
    for _ in range(500):
        lines = random_lines(rng, rng.randint(5, 15))
        tree, diags = parse_source(program(lines))
        assert diags == []
        resolved, _ = resolve(tree, SPEC)
        got = check_temporal(resolved, SPEC)
        assert got == replay(tree, SPEC), lines
        fired += bool(got)
    assert fired > 100, f"only {fired} programs triggered an ordering rule"


def criterion_10():
    """formatter idempotence on fixtures, byte-identical records across runs, golden build output"""
    corpus = [TITANIC, *sorted((FIXTURES / "practices").glob("*.mlp")), *sorted((FIXTURES / "errors").glob("*.mlp"))]
    for path in corpus:
        tree, diags = parse_source(path.read_text())
        if diags:
            continue
        once = format_pipeline(tree)
        assert format_pipeline(parse_source(once)[0]) == once, path.name
    cmd = [sys.executable, "-m", "mlguard", "check", *map(str, corpus), "--spec", "@bundled", "--format=records"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.stdout and a.stdout == b.stdout
    with tempfile.TemporaryDirectory() as out:
        code, _ = quiet_main(["build", TITANIC, "--spec", "@bundled", "--backend", "@reference",
                              "--out-dir", out, "--timestamp", STAMP])
        assert code == 0
        assert (Path(out) / "titanic.out").read_bytes() == (GOLDEN / "titanic.out").read_bytes()
        assert (Path(out) / "titanic.manifest").read_bytes() == (GOLDEN / "titanic.manifest").read_bytes()


def criterion_11():
    """gating: every error fixture builds nothing and exits 1; golden writes both files and exits 0"""
    for path in sorted((FIXTURES / "errors").glob("*.mlp")):
        with tempfile.TemporaryDirectory() as out:
            code, _ = quiet_main(["build", path, "--spec", "@bundled", "--backend", "@reference", "--out-dir", out])
            assert code == 1 and list(Path(out).iterdir()) == [], path.name
    with tempfile.TemporaryDirectory() as out:
        code, _ = quiet_main(["build", TITANIC, "--spec", "@bundled", "--backend", "@reference", "--out-dir", out])
        assert code == 0
        assert sorted(p.name for p in Path(out).iterdir()) == ["titanic.manifest", "titanic.out"]


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def evaluate(fn):
    n = fn.__name__.split("_")[1]
    try:
        fn()
    except AssertionError as exc:
        return False, f"FAIL criterion {n}: {fn.__doc__.strip()} ({exc})"
    return True, f"PASS criterion {n}: {fn.__doc__.strip()}"


@pytest.mark.parametrize("fn", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(fn, capsys):
    ok, line = evaluate(fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(fn) for fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
