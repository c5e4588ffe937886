"""Constraint passes over a resolved program: types, dependencies, order, context."""
from __future__ import annotations

from dataclasses import dataclass, field

from mlguard import diagnostics
from mlguard.apispec import (
    ApiSpec,
    EntitySpec,
    MustPrecede,
    NumericRange,
    RequireSetBefore,
    format_literal,
    literal_kind,
    satisfies,
    violation,
)
from mlguard.checker.resolve import ModelBinding, ResolvedProgram, TransformBinding
from mlguard.checker.suggest import suggest_fix
from mlguard.diagnostics import Diagnostic, Quickfix
from mlguard.dsl import ast

SPLIT_FRACTION = NumericRange("float", 0, 1)


@dataclass(frozen=True)
class Setting:
    """A parameter value written in the program, by constructor argument or ``set``."""

    param: str
    value: ast.Lit
    stmt_index: int
    node: object  # Arg or SetParam, for the diagnostic span
    via_set: bool


def _span(node):
    if isinstance(node, ast.Arg):
        return node.name.span.cover(node.value.span)
    return node.span


def explicit_settings(program: ResolvedProgram, owner) -> list[Setting]:
    out: list[Setting] = [Setting(a.name.text, a.value, owner.stmt_index, a, False) for a in owner.args]
    for rs in program.statements:
        if isinstance(rs.stmt, ast.SetParam) and rs.refs.get("model") is owner:
            out.append(Setting(rs.stmt.param.text, rs.stmt.value, rs.index, rs.stmt, True))
    return out


def _owners(program: ResolvedProgram) -> list[ModelBinding | TransformBinding]:
    owners: list = []
    for rs in program.statements:
        owners.extend(b for b in rs.defines if isinstance(b, (ModelBinding, TransformBinding)))
    return owners


# ---------------------------------------------------------------- types


def _value_diag(lit: ast.Lit, ty, subject: str) -> Diagnostic | None:
    v = violation(ty, lit.value)
    if v is None:
        return None
    shown = format_literal(lit.value)
    if v.kind == "enum":
        allowed = list(v.enum.values)
        near = suggest_fix(lit.value, allowed)
        msg = f"invalid value {shown} for {subject}: expected {v.expected}"
        if not near:
            msg += f"; no allowed literal is close to {shown}"
        fixes = [Quickfix(lit.span, format_literal(c), f"did you mean {format_literal(c)}?") for c in near]
        return diagnostics.make("E-TYPE-001", lit.span, msg, fixes)
    if v.kind == "range":
        rng = v.range
        fixes = []
        if rng.min is not None and lit.value < rng.min and rng.min_inclusive:
            fixes.append(Quickfix(lit.span, format_literal(rng.min), f"use {format_literal(rng.min)}, the nearest allowed value"))
        elif rng.max is not None and lit.value > rng.max and rng.max_inclusive:
            fixes.append(Quickfix(lit.span, format_literal(rng.max), f"use {format_literal(rng.max)}, the nearest allowed value"))
        return diagnostics.make("E-TYPE-002", lit.span, f"value {shown} for {subject} must be {v.expected}", fixes)
    fixes = []
    if literal_kind(lit.value) == "text" and lit.value in ("true", "false") and violation(ty, lit.value == "true") is None:
        fixes.append(Quickfix(lit.span, lit.value, f"use the bool literal {lit.value}"))
    return diagnostics.make(
        "E-TYPE-003", lit.span, f"{subject} expects {v.expected}, got {literal_kind(lit.value)} {shown}", fixes,
    )


def check_types(program: ResolvedProgram, spec: ApiSpec) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    for owner in _owners(program):
        ent = owner.entity
        if ent is None:
            continue
        for s in explicit_settings(program, owner):
            p = ent.param(s.param)
            if p is None:
                continue
            d = _value_diag(s.value, p.ty, f"parameter {p.name} of {ent.name}")
            if d:
                out.append(d)
    for rs in program.statements:
        if isinstance(rs.stmt, ast.Split):
            for lit in rs.stmt.ratios:
                d = _value_diag(lit, SPLIT_FRACTION, "split ratio")
                if d:
                    out.append(d)
    return out


# ---------------------------------------------------------------- dependencies


def _first_use(program: ResolvedProgram, owner) -> int:
    if isinstance(owner, TransformBinding):
        return owner.stmt_index
    for rs in program.statements:
        if isinstance(rs.stmt, (ast.Fit, ast.Call, ast.Evaluate)) and rs.refs.get("model") is owner:
            return rs.index
    return len(program.statements)


def effective_value(program: ResolvedProgram, owner, ent: EntitySpec, param: str):
    """Constructor argument, else last ``set`` before first use, else the spec default."""
    settings = explicit_settings(program, owner)
    for s in settings:
        if not s.via_set and s.param == param:
            return s.value.value
    first_use = _first_use(program, owner)
    chosen = None
    for s in settings:
        if s.via_set and s.param == param and s.stmt_index < first_use:
            chosen = s.value.value
    if chosen is not None:
        return chosen
    p = ent.param(param)
    return p.default if p else None


def check_dependencies(program: ResolvedProgram, spec: ApiSpec) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    for owner in _owners(program):
        ent = owner.entity
        if ent is None:
            continue
        for s in explicit_settings(program, owner):
            p = ent.param(s.param)
            if p is None or p.relevant_when is None:
                continue
            cond = p.relevant_when
            actual = effective_value(program, owner, ent, cond.param)
            if actual is None or cond.holds(actual):
                continue
            controller = ent.param(cond.param)
            if controller is not None and not satisfies(controller.ty, actual):
                continue  # the type pass already reports the invalid controlling value
            msg = (
                f"{p.name} is only relevant when {cond} ({cond.param} is {format_literal(actual)}); "
                f"the value {format_literal(s.value.value)} is ignored"
            )
            out.append(diagnostics.make("W-DEP-001", _span(s.node), msg))
    return out


# ---------------------------------------------------------------- temporal


@dataclass
class ModelTypestate:
    params_set: dict[str, object] = field(default_factory=dict)
    methods_called: list[str] = field(default_factory=list)
    # parameter values at the first call of each method
    snapshots: dict[str, dict[str, object]] = field(default_factory=dict)


def invoked_method(stmt: ast.Stmt, ent: EntitySpec) -> str | None:
    """Method a statement invokes on its model; ``evaluate`` predicts implicitly."""
    if isinstance(stmt, ast.Fit):
        return "fit"
    if isinstance(stmt, ast.Call):
        return stmt.method.text
    if isinstance(stmt, ast.Evaluate) and ent.method("predict") is not None:
        return "predict"
    return None


def insert_before(stmt: ast.Stmt, text: str, description: str) -> Quickfix:
    """Quickfix adding a new statement line just above ``stmt``."""
    return Quickfix(stmt.span.at_start(), text + "\n" + " " * (stmt.span.start_col - 1), description)


def check_temporal(program: ResolvedProgram, spec: ApiSpec) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    states: dict[int, ModelTypestate] = {}
    first_call_stmt: dict[tuple[int, str], ast.Stmt] = {}
    for rs in program.statements:
        stmt = rs.stmt
        if isinstance(stmt, ast.ModelDecl):
            owner = rs.defines[0]
            states[id(owner)] = ModelTypestate({a.name.text: a.value.value for a in stmt.args})
            continue
        model = rs.refs.get("model")
        if not isinstance(model, ModelBinding) or model.entity is None:
            continue
        ent = model.entity
        st = states[id(model)]
        if isinstance(stmt, ast.SetParam):
            st.params_set[stmt.param.text] = stmt.value.value
            continue
        method = invoked_method(stmt, ent)
        if method is None:
            continue

        def value_at(snapshot: dict, param: str):
            if param in snapshot:
                return snapshot[param]
            p = ent.param(param)
            return p.default if p else None

        for rule in ent.temporal:
            if isinstance(rule, MustPrecede) and rule.second == method and rule.first not in st.methods_called:
                out.append(diagnostics.make(
                    "E-TEMP-001", stmt.span,
                    f"{rule.first} must be called before {method} on {model.name}",
                ))
        for rule in ent.temporal:
            if not isinstance(rule, RequireSetBefore) or rule.method != method:
                continue
            want = rule.required_value
            prereqs = [r.first for r in ent.temporal if isinstance(r, MustPrecede) and r.second == method]
            setter = f"set {model.name}.{rule.param} = {format_literal(want)}"
            if not prereqs:
                have = value_at(st.params_set, rule.param)
                if not _same(have, want):
                    out.append(diagnostics.make(
                        "E-TEMP-002", stmt.span,
                        f"{rule.param} must be set to {format_literal(want)} before calling {method}",
                        [insert_before(stmt, setter, f'add "{setter}" before this statement')],
                    ))
                continue
            for pre in prereqs:
                if pre not in st.snapshots:
                    continue
                have = value_at(st.snapshots[pre], rule.param)
                if not _same(have, want):
                    first = first_call_stmt[(id(model), pre)]
                    out.append(diagnostics.make(
                        "E-TEMP-002", stmt.span,
                        f"{rule.param} must be set to {format_literal(want)} prior to the first call of {pre} "
                        f"(line {first.span.start_line}) to use {method}",
                        [insert_before(first, setter, f'add "{setter}" before the first {pre}')],
                    ))
                    break
        if method not in st.snapshots:
            st.snapshots[method] = dict(st.params_set)
            first_call_stmt[(id(model), method)] = stmt
        st.methods_called.append(method)
    return out


def _same(a, b) -> bool:
    return a is not None and literal_kind(a) == literal_kind(b) and a == b


# ---------------------------------------------------------------- context


def check_context(program: ResolvedProgram, spec: ApiSpec, contexts) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    contexts = set(contexts or ())
    for owner in _owners(program):
        ent = owner.entity
        if ent is None:
            continue
        for s in explicit_settings(program, owner):
            p = ent.param(s.param)
            if p is None or p.context_warning is None:
                continue
            tag, text = p.context_warning
            if tag not in contexts:
                continue
            if p.default is not None and _same(s.value.value, p.default):
                continue
            msg = f"{p.name}={format_literal(s.value.value)} in a {tag} context: {text}"
            out.append(diagnostics.make("W-CTX-001", _span(s.node), msg))
    return out
