"""ML best-practice rules: splitting, test-set hiding, leakage, metrics, data-aware lints."""
from __future__ import annotations

import os

from mlguard import diagnostics
from mlguard.apispec import ApiSpec, format_literal
from mlguard.checker.passes import insert_before
from mlguard.checker.resolve import DatasetBinding, ModelBinding, ResolvedProgram, TransformBinding
from mlguard.diagnostics import Diagnostic, Quickfix
from mlguard.dsl import ast
from mlguard.dsl.tokens import SourceSpan

RATIO_TOLERANCE = 1e-9
PROFILE_RULES = ("W-ML-008", "W-ML-009", "W-ML-010")


def _after(span: SourceSpan) -> SourceSpan:
    return span.at_end()


def _split_rules(program: ResolvedProgram, spec: ApiSpec) -> list[Diagnostic]:
    out = []
    stmts = [rs.stmt for rs in program.statements]
    classification = any(isinstance(s, ast.Require) for s in stmts) or any(
        m.entity is not None and m.entity.task == "classification" for m in program.models()
    ) or any(rs.metric is not None and rs.metric.task == "classification" for rs in program.statements)
    label = next((s.label.value for s in stmts if isinstance(s, ast.Fit)), None)
    for s in stmts:
        if not isinstance(s, ast.Split):
            continue
        total = sum(r.value for r in s.ratios)
        if abs(total - 1.0) > RATIO_TOLERANCE:
            span = s.ratios[0].span.cover(s.ratios[-1].span)
            out.append(diagnostics.make("W-ML-001", span, f"split ratios sum to {total:.10g}, not 1"))
        if s.stratify is None and classification:
            fixes = []
            if label is not None and s.seed is None:
                text = f" stratify {format_literal(label)}"
                fixes.append(Quickfix(_after(s.span), text, f"add 'stratify {format_literal(label)}'"))
            out.append(diagnostics.make(
                "W-ML-002", s.span,
                "split is not stratified although the pipeline solves a classification task or states a requirement",
                fixes,
            ))
    return out


def _test_hiding(program: ResolvedProgram) -> list[Diagnostic]:
    out = []
    evaluates = [rs.index for rs in program.statements if isinstance(rs.stmt, ast.Evaluate)]
    last_eval = evaluates[-1] if evaluates else -1
    for rs in program.statements:
        s = rs.stmt
        if isinstance(s, (ast.Apply, ast.TransformDecl)):
            continue  # applying fitted transforms is required; fitting on test is leakage (E-ML-005)
        if isinstance(s, ast.Evaluate) and rs.index == last_eval:
            continue
        for key, node in (("source", getattr(s, "source", None)), ("dataset", getattr(s, "dataset", None))):
            b = rs.refs.get(key)
            if isinstance(b, DatasetBinding) and b.role == "test":
                what = {
                    ast.Fit: "fitting a model",
                    ast.Call: "a prediction",
                    ast.Evaluate: "an intermediate evaluation",
                    ast.Split: "a split",
                }[type(s)]
                out.append(diagnostics.make(
                    "E-ML-003", node.span,
                    f"test set {node.text} is used for {what} before the final evaluation; "
                    "keep the test set hidden and use the validation set instead",
                    _val_fix(program, node),
                ))
    return out


def _val_fix(program: ResolvedProgram, node: ast.Name) -> list[Quickfix]:
    val = program.split_names.get("val")
    if val is None:
        return []
    return [Quickfix(node.span, val, f"use the validation set {val}")]


def _transform_rules(program: ResolvedProgram) -> list[Diagnostic]:
    out = []
    has_split = any(isinstance(rs.stmt, ast.Split) for rs in program.statements)
    train_name = program.split_names.get("train")
    for rs in program.statements:
        s = rs.stmt
        if not isinstance(s, ast.TransformDecl):
            continue
        data = rs.refs.get("fit_on")
        if not isinstance(data, DatasetBinding):
            continue
        fixes = [Quickfix(s.fit_on.span, train_name, f"fit on the training set {train_name}")] if train_name else []
        if data.role in ("val", "test"):
            role = {"val": "validation", "test": "test"}[data.role]
            out.append(diagnostics.make(
                "E-ML-005", s.fit_on.span,
                f"transform {s.var.text} is fitted on the {role} set {s.fit_on.text}; fit transforms on the training set only",
                fixes,
            ))
        elif data.role == "raw" and has_split:
            out.append(diagnostics.make(
                "E-ML-005", s.fit_on.span,
                f"transform {s.var.text} is fitted on {s.fit_on.text} before it is split, so held-out rows leak into training",
                fixes,
            ))

    # which roles each transform reaches
    applied: dict[int, tuple[TransformBinding, dict[str, ast.Stmt]]] = {}
    for rs in program.statements:
        if not isinstance(rs.stmt, ast.Apply):
            continue
        tr, data = rs.refs.get("transform"), rs.refs.get("dataset")
        if isinstance(tr, TransformBinding) and isinstance(data, DatasetBinding) and data.role:
            applied.setdefault(id(tr), (tr, {}))[1].setdefault(data.role, rs.stmt)
    for tr, roles in applied.values():
        if "train" not in roles:
            continue
        for role in ("val", "test"):
            if role in roles or role not in program.split_names:
                continue
            var = program.split_names[role]
            out.append(diagnostics.make(
                "W-ML-004", roles["train"].span,
                f"transform {tr.name} is applied to the training set but never to {var}",
                [insert_before(roles["train"], f"{var} = apply {tr.name} {var}", f'add "{var} = apply {tr.name} {var}"')],
            ))
    return out


def _metric_rules(program: ResolvedProgram, spec: ApiSpec) -> list[Diagnostic]:
    out = []
    evaluated = set()
    for rs in program.statements:
        s = rs.stmt
        if isinstance(s, ast.Evaluate):
            evaluated.add(s.metric.text)
            model = rs.refs.get("model")
            met = rs.metric
            if met is None or not isinstance(model, ModelBinding) or model.entity is None:
                continue
            task = model.entity.task
            if task in ("classification", "regression") and task != met.task:
                fits = [m.name for m in spec.metrics.values() if m.task == task]
                msg = f"metric {met.name} assesses {met.task}, but {model.entity.name} is a {task} model"
                msg += f"; compatible metrics: {', '.join(fits)}" if fits else "; no loaded metric fits this task"
                fixes = [Quickfix(s.metric.span, f, f"use {f}") for f in fits[:1]]
                out.append(diagnostics.make("E-ML-006", s.metric.span, msg, fixes))
    for rs in program.statements:
        s = rs.stmt
        if isinstance(s, ast.Require) and s.metric.text not in evaluated and rs.metric is not None:
            out.append(diagnostics.make(
                "W-ML-007", s.metric.span,
                f"requirement on {s.metric.text} can never be checked: no statement evaluates {s.metric.text}",
            ))
    return out


def _find_profile(profiles, origin: str | None):
    if origin is None:
        return None
    for prof in profiles:
        if prof.source == origin:
            return prof
    base = os.path.basename(origin)
    for prof in profiles:
        if os.path.basename(prof.source) == base:
            return prof
    return None


def _profile_rules(program: ResolvedProgram, profiles) -> list[Diagnostic]:
    out = []
    for rs in program.statements:
        s = rs.stmt
        if not isinstance(s, ast.Fit):
            continue
        data = rs.refs.get("dataset")
        if not isinstance(data, DatasetBinding):
            continue
        prof = _find_profile(profiles, data.origin)
        if prof is None:
            continue
        caps = {c for tr in data.provenance if tr.entity is not None for c in tr.entity.handles}
        features = [c for c in prof.columns if c.name != s.label.value]
        missing = [c for c in features if c.missing_count > 0]
        if missing and "missing" not in caps:
            cols = ", ".join(f"{c.name} ({c.missing_count} missing)" for c in missing)
            out.append(diagnostics.make(
                "W-ML-008", s.dataset.span, f"missing values reach fit without imputation: {cols}",
            ))
        raw_numeric = [c for c in features if c.inferred_kind == "numeric" and c.normalization == "none"]
        if raw_numeric and "scale" not in caps:
            cols = ", ".join(c.name for c in raw_numeric)
            out.append(diagnostics.make(
                "W-ML-009", s.dataset.span, f"numeric features are neither unit-range nor standardized: {cols}",
            ))
        categorical = [c for c in features if c.inferred_kind == "categorical"]
        if categorical and "categorical" not in caps:
            cols = ", ".join(
                f"{c.name} ({'label encoding, ordered' if c.ordered else 'one-hot encoding'})" for c in categorical
            )
            out.append(diagnostics.make(
                "W-ML-010", s.dataset.span, f"categorical features reach fit without encoding: {cols}",
            ))
    return out


def check_best_practices(program: ResolvedProgram, spec: ApiSpec, profiles=None, strict: bool = False) -> list[Diagnostic]:
    out = _split_rules(program, spec) + _test_hiding(program) + _transform_rules(program) + _metric_rules(program, spec)
    if profiles:
        out += _profile_rules(program, profiles)
    elif strict:
        out.append(diagnostics.make(
            "W-ML-000", program.ast.name.span,
            f"no dataset profile supplied; skipped {', '.join(PROFILE_RULES)}",
        ))
    return out
