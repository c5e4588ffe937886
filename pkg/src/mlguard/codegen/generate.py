"""Template-driven code generation, gated on the checker's verdict."""
from __future__ import annotations

from mlguard._scan import quote
from mlguard.checker import CheckReport
from mlguard.checker.resolve import ModelBinding, ResolvedProgram
from mlguard.codegen.backend import BackendTemplate
from mlguard.dsl import ast


class RefusalError(Exception):
    """Raised when the checked program still has errors."""

    def __init__(self, codes: list[str]) -> None:
        super().__init__("refusing to generate code: blocking diagnostics " + ", ".join(codes))
        self.codes = codes


def _value(v, backend: BackendTemplate) -> str:
    if v is None:
        return backend.options["none"]
    if isinstance(v, bool):
        return backend.options["true" if v else "false"]
    if isinstance(v, str):
        return quote(v)
    return repr(v)


def _args(args: tuple[ast.Arg, ...], backend: BackendTemplate) -> str:
    return ", ".join(f"{a.name.text}={_value(a.value.value, backend)}" for a in args)


def _statement_fields(rs, program: ResolvedProgram, labels: dict, backend: BackendTemplate):
    s = rs.stmt
    lit = lambda node: _value(node.value if node is not None else None, backend)  # noqa: E731
    base = {"index": str(rs.index + 1), "line": str(s.span.start_line) if s.span else "0", "pipeline": program.ast.name.text}
    if isinstance(s, ast.Load):
        return "load", None, {**base, "var": s.var.text, "path": lit(s.path), "schema": lit(s.schema)}
    if isinstance(s, ast.Split):
        return "split", None, {
            **base, "train": s.train.text, "val": s.val.text, "test": s.test.text, "source": s.source.text,
            "train_ratio": lit(s.ratios[0]), "val_ratio": lit(s.ratios[1]), "test_ratio": lit(s.ratios[2]),
            "stratify": lit(s.stratify), "seed": lit(s.seed),
        }
    if isinstance(s, ast.TransformDecl):
        return "transform", s.entity.text, {
            **base, "var": s.var.text, "entity": s.entity.text, "args": _args(s.args, backend), "fit_on": s.fit_on.text,
        }
    if isinstance(s, ast.Apply):
        return "apply", None, {**base, "var": s.var.text, "transform": s.transform.text, "dataset": s.dataset.text}
    if isinstance(s, ast.ModelDecl):
        return "model", s.entity.text, {**base, "var": s.var.text, "entity": s.entity.text, "args": _args(s.args, backend)}
    if isinstance(s, ast.SetParam):
        return "set", None, {**base, "model": s.model.text, "param": s.param.text, "value": lit(s.value)}
    label = _value(labels.get(id(rs.refs.get("model"))), backend)
    if isinstance(s, ast.Fit):
        return "fit", None, {**base, "model": s.model.text, "dataset": s.dataset.text, "label": lit(s.label)}
    if isinstance(s, ast.Call):
        var = s.var.text if s.var else ""
        return "call", s.method.text, {
            **base, "var": var, "assign": f"{var} = " if var else "", "model": s.model.text,
            "method": s.method.text, "dataset": s.dataset.text, "label": label,
        }
    if isinstance(s, ast.Evaluate):
        return "evaluate", s.metric.text, {
            **base, "var": s.var.text, "metric": s.metric.text, "model": s.model.text,
            "dataset": s.dataset.text, "label": label,
        }
    if isinstance(s, ast.Require):
        return "require", None, {**base, "metric": s.metric.text, "op": s.op, "threshold": lit(s.threshold)}
    raise TypeError(f"not a statement: {s!r}")


def generate(program: ResolvedProgram, report: CheckReport, backend: BackendTemplate) -> str:
    """Render the program with ``backend``; refuses while ``report`` has errors."""
    if report.error_count > 0:
        blocking = sorted({d.code for d in report.diagnostics if d.severity == "error"})
        raise RefusalError(blocking)
    labels: dict[int, str] = {}
    for rs in program.statements:
        model = rs.refs.get("model")
        if isinstance(rs.stmt, ast.Fit) and isinstance(model, ModelBinding):
            labels.setdefault(id(model), rs.stmt.label.value)
    head = {"pipeline": program.ast.name.text}
    parts = [backend.preamble.format_map(head)]
    for rs in program.statements:
        construct, specialised, fields = _statement_fields(rs, program, labels, backend)
        parts.append(backend.lookup(construct, specialised).format_map(fields))
    parts.append(backend.postamble.format_map(head))
    return "".join(parts)
