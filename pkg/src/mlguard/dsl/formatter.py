from __future__ import annotations

from mlguard.apispec import format_literal
from mlguard.dsl import ast


def _lit(lit: ast.Lit) -> str:
    return format_literal(lit.value)


def _args(args: tuple[ast.Arg, ...]) -> str:
    return ", ".join(f"{a.name.text}={_lit(a.value)}" for a in args)


def format_statement(stmt: ast.Stmt) -> str:
    if isinstance(stmt, ast.Load):
        schema = f" schema {_lit(stmt.schema)}" if stmt.schema else ""
        return f"{stmt.var.text} = load {_lit(stmt.path)}{schema}"
    if isinstance(stmt, ast.Split):
        ratios = ", ".join(_lit(r) for r in stmt.ratios)
        text = f"{stmt.train.text}, {stmt.val.text}, {stmt.test.text} = split {stmt.source.text} ratios ({ratios})"
        if stmt.stratify:
            text += f" stratify {_lit(stmt.stratify)}"
        if stmt.seed:
            text += f" seed {_lit(stmt.seed)}"
        return text
    if isinstance(stmt, ast.TransformDecl):
        return f"{stmt.var.text} = {stmt.entity.text}({_args(stmt.args)}) fit on {stmt.fit_on.text}"
    if isinstance(stmt, ast.Apply):
        return f"{stmt.var.text} = apply {stmt.transform.text} {stmt.dataset.text}"
    if isinstance(stmt, ast.ModelDecl):
        return f"{stmt.var.text} = {stmt.entity.text}({_args(stmt.args)})"
    if isinstance(stmt, ast.SetParam):
        return f"set {stmt.model.text}.{stmt.param.text} = {_lit(stmt.value)}"
    if isinstance(stmt, ast.Fit):
        return f"fit {stmt.model.text} on {stmt.dataset.text} label {_lit(stmt.label)}"
    if isinstance(stmt, ast.Call):
        prefix = f"{stmt.var.text} = " if stmt.var else ""
        return f"{prefix}call {stmt.model.text}.{stmt.method.text} {stmt.dataset.text}"
    if isinstance(stmt, ast.Evaluate):
        return f"{stmt.var.text} = evaluate {stmt.metric.text} {stmt.model.text} on {stmt.dataset.text}"
    if isinstance(stmt, ast.Require):
        return f"require {stmt.metric.text} {stmt.op} {_lit(stmt.threshold)}"
    raise TypeError(f"not a statement: {stmt!r}")


def format_pipeline(pipeline: ast.Pipeline) -> str:
    """Canonical source text: two-space indent, one statement per line."""
    body = "".join(f"  {format_statement(s)}\n" for s in pipeline.statements)
    return f"pipeline {pipeline.name.text} {{\n{body}}}\n"
