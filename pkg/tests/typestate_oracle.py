"""Brute-force replay interpreter for ordering rules.

Unlike the checker, which threads a typestate forward, this answers every
question by re-scanning the statement prefix from the start.
"""
from mlguard import diagnostics
from mlguard.apispec import MustPrecede, RequireSetBefore, format_literal, literal_kind
from mlguard.diagnostics import Quickfix
from mlguard.dsl import ast


def _instance(stmts, i, var):
    """Index of the declaration of the model ``var`` refers to at statement ``i``, or None."""
    for j in range(i - 1, -1, -1):
        s = stmts[j]
        bound = ast.bound_name(s)
        if isinstance(s, ast.Split):
            if var in (s.train.text, s.val.text, s.test.text):
                return None
        elif bound is not None and bound.text == var:
            return j if isinstance(s, ast.ModelDecl) else None
    return None


def _target(s):
    if isinstance(s, (ast.Fit, ast.Call, ast.Evaluate, ast.SetParam)):
        return s.model.text
    return None


def _method(s, ent):
    if isinstance(s, ast.Fit):
        return "fit"
    if isinstance(s, ast.Call):
        return s.method.text
    if isinstance(s, ast.Evaluate) and ent.method("predict") is not None:
        return "predict"
    return None


def _calls(stmts, spec, decl, upto, method):
    """Indices j < upto of statements invoking ``method`` on the instance declared at ``decl``."""
    ent = spec.entities[stmts[decl].entity.text]
    return [j for j in range(decl + 1, upto)
            if _target(stmts[j]) is not None and _instance(stmts, j, _target(stmts[j])) == decl
            and _method(stmts[j], ent) == method]


def _value_at(stmts, spec, decl, upto, param):
    value = None
    found = False
    for a in stmts[decl].args:
        if a.name.text == param:
            value, found = a.value.value, True
    for j in range(decl + 1, upto):
        s = stmts[j]
        if isinstance(s, ast.SetParam) and s.param.text == param and _instance(stmts, j, s.model.text) == decl:
            value, found = s.value.value, True
    if found:
        return value
    p = spec.entities[stmts[decl].entity.text].param(param)
    return p.default if p else None


def _equal(a, b):
    return a is not None and literal_kind(a) == literal_kind(b) and a == b


def _insert(stmt, text, description):
    return Quickfix(stmt.span.at_start(), text + "\n" + " " * (stmt.span.start_col - 1), description)


def replay(pipeline: ast.Pipeline, spec) -> list:
    stmts = list(pipeline.statements)
    out = []
    for i, s in enumerate(stmts):
        var = _target(s)
        if var is None or isinstance(s, ast.SetParam):
            continue
        decl = _instance(stmts, i, var)
        if decl is None or stmts[decl].entity.text not in spec.entities:
            continue
        ent = spec.entities[stmts[decl].entity.text]
        method = _method(s, ent)
        if method is None:
            continue
        for rule in ent.temporal:
            if isinstance(rule, MustPrecede) and rule.second == method and not _calls(stmts, spec, decl, i, rule.first):
                out.append(diagnostics.make("E-TEMP-001", s.span, f"{rule.first} must be called before {method} on {var}"))
        for rule in ent.temporal:
            if not isinstance(rule, RequireSetBefore) or rule.method != method:
                continue
            want = rule.required_value
            setter = f"set {var}.{rule.param} = {format_literal(want)}"
            prereqs = [r.first for r in ent.temporal if isinstance(r, MustPrecede) and r.second == method]
            if not prereqs:
                if not _equal(_value_at(stmts, spec, decl, i, rule.param), want):
                    out.append(diagnostics.make(
                        "E-TEMP-002", s.span, f"{rule.param} must be set to {format_literal(want)} before calling {method}",
                        [_insert(s, setter, f'add "{setter}" before this statement')]))
                continue
            for pre in prereqs:
                earlier = _calls(stmts, spec, decl, i, pre)
                if not earlier:
                    continue
                first = earlier[0]
                if not _equal(_value_at(stmts, spec, decl, first, rule.param), want):
                    out.append(diagnostics.make(
                        "E-TEMP-002", s.span,
                        f"{rule.param} must be set to {format_literal(want)} prior to the first call of {pre} "
                        f"(line {stmts[first].span.start_line}) to use {method}",
                        [_insert(stmts[first], setter, f'add "{setter}" before the first {pre}')]))
                    break
    return out
