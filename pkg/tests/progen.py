"""Hypothesis strategies producing pipeline programs."""
from hypothesis import strategies as st

MODEL_VARS = ("m", "n")
DATA_VARS = ("d", "tr", "va", "te")


@st.composite
def statement_lines(draw):
    """One syntactically valid statement, not necessarily meaningful."""
    m = draw(st.sampled_from(MODEL_VARS))
    d = draw(st.sampled_from(DATA_VARS))
    kind = draw(st.sampled_from(["decl", "set", "fit", "call", "eval", "load", "split", "transform", "apply", "require"]))
    if kind == "decl":
        args = draw(st.sampled_from(['', 'probability=true', 'kernel="poly", degree=2', 'kernel="rbf"', "verbose=false"]))
        return f"{m} = SVC({args})"
    if kind == "set":
        return f"set {m}.probability = {draw(st.sampled_from(['true', 'false']))}"
    if kind == "fit":
        return f'fit {m} on {d} label "y"'
    if kind == "call":
        method = draw(st.sampled_from(["predict", "predict_proba", "score"]))
        target = draw(st.sampled_from(["", "r = "]))
        return f"{target}call {m}.{method} {d}"
    if kind == "eval":
        return f"s = evaluate accuracy {m} on {d}"
    if kind == "load":
        return f'{d} = load "x.csv"'
    if kind == "split":
        return "tr, va, te = split d ratios (0.6, 0.2, 0.2) seed 1"
    if kind == "transform":
        return f'i = impute(strategy="median") fit on {d}'
    if kind == "apply":
        return f"{d} = apply i {d}"
    return "require accuracy >= 0.5"


garbage_lines = st.sampled_from([
    "fit m d", "= = =", "x = SVC(kernel=)", "set m probability true", "call", "x = split d ratios (1, 2)",
    "require accuracy", "m = ", "evaluate on",
])


def program(lines, name="p") -> str:
    return f"pipeline {name} {{\n" + "".join(f"  {line}\n" for line in lines) + "}\n"


def random_lines(rng, n: int) -> list[str]:
    """``n`` statements drawn with a plain RNG (used for the fixed 500-program sweep)."""
    out = []
    for i in range(n):
        m = rng.choice(MODEL_VARS)
        d = rng.choice(("d", "tr", "va"))
        r = rng.random()
        if i == 0 or r < 0.15:
            args = rng.choice(["", "probability=true", "probability=false", 'kernel="poly", degree=2', "verbose=true"])
            out.append(f"{m} = SVC({args})")
        elif r < 0.35:
            out.append(f"set {m}.probability = {rng.choice(['true', 'false'])}")
        elif r < 0.55:
            out.append(f'fit {m} on {d} label "y"')
        elif r < 0.85:
            method = rng.choice(["predict", "predict_proba", "predict_proba", "score"])
            out.append(f"{rng.choice(['', 'r = '])}call {m}.{method} {d}")
        elif r < 0.95:
            out.append(f"s = evaluate accuracy {m} on {d}")
        else:
            out.append(f'{d} = load "x.csv"')
    return out
