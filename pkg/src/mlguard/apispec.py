"""Declarative API constraint specifications (``.mlspec`` files).

An :class:`ApiSpec` records, for every entity of a host ML API, which
parameters it takes (with refined types), which parameters only matter when
another one has a given value, which methods must be called in which order,
and which parameters are unsafe in some execution context.

Example::

    entity SVC model task classification {
      param kernel: enum("linear","poly","rbf") | callable(arity=1) = "rbf"
      param degree: int(min=0) = 3 relevant_when kernel == "poly"
      method fit(table, column)
      order fit before predict
    }
    metric accuracy task classification
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from importlib import resources
from typing import Union as _U

from mlguard._scan import Cursor, ScanError, quote, scan_line

PRIMITIVE_KINDS = ("bool", "int", "float", "text", "table", "column")
ENTITY_KINDS = ("model", "transform")
ENTITY_TASKS = ("classification", "regression", "both", "none")
METRIC_TASKS = ("classification", "regression")
# What a transform does to the data; consulted by the data-aware lints.
CAPABILITIES = ("missing", "categorical", "scale")

Literal = _U[bool, int, float, str]


# ---------------------------------------------------------------- refined types


@dataclass(frozen=True)
class Primitive:
    kind: str


@dataclass(frozen=True)
class EnumLiterals:
    values: tuple[str, ...]


@dataclass(frozen=True)
class NumericRange:
    kind: str  # int | float
    min: int | float | None = None
    max: int | float | None = None
    min_inclusive: bool = True
    max_inclusive: bool = True


@dataclass(frozen=True)
class CallableSig:
    arity: int
    note: str = ""


@dataclass(frozen=True)
class UnionOf:
    members: tuple["RefinedType", ...]


RefinedType = _U[Primitive, EnumLiterals, NumericRange, CallableSig, UnionOf]


def literal_kind(value: Literal) -> str:
    if isinstance(value, bool):
        return "bool"
    if isinstance(value, int):
        return "int"
    if isinstance(value, float):
        return "float"
    return "text"


def format_literal(value: Literal) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return quote(value)
    return repr(value)


def _format_number(value: int | float) -> str:
    return repr(value)


@dataclass(frozen=True)
class Violation:
    """Why a literal does not inhabit a refined type."""

    kind: str  # enum | range | kind
    expected: str
    enum: EnumLiterals | None = None
    range: NumericRange | None = None


def _accepts_kind(ty: RefinedType, value: Literal) -> bool:
    lk = literal_kind(value)
    if isinstance(ty, Primitive):
        if ty.kind == "float":
            return lk in ("int", "float")
        if ty.kind == "column":
            return lk == "text"
        return ty.kind == lk
    if isinstance(ty, EnumLiterals):
        return lk == "text"
    if isinstance(ty, NumericRange):
        return lk == "int" if ty.kind == "int" else lk in ("int", "float")
    if isinstance(ty, CallableSig):
        return False
    return any(_accepts_kind(m, value) for m in ty.members)


def accepts_kind(ty: RefinedType, value: Literal) -> bool:
    """True if the literal's primitive kind fits ``ty``, ignoring bounds and literal sets."""
    return _accepts_kind(ty, value)


def _in_range(ty: NumericRange, value: int | float) -> bool:
    if ty.min is not None:
        if value < ty.min or (value == ty.min and not ty.min_inclusive):
            return False
    if ty.max is not None:
        if value > ty.max or (value == ty.max and not ty.max_inclusive):
            return False
    return True


def violation(ty: RefinedType, value: Literal) -> Violation | None:
    """Return None if ``value`` inhabits ``ty``, else the most specific reason it does not."""
    if isinstance(ty, UnionOf):
        if any(violation(m, value) is None for m in ty.members):
            return None
        reasons = [violation(m, value) for m in ty.members]
        for wanted in ("enum", "range"):
            for r in reasons:
                if r.kind == wanted:
                    return Violation(r.kind, describe(ty), r.enum, r.range)
        return Violation("kind", describe(ty))
    if not _accepts_kind(ty, value):
        return Violation("kind", describe(ty))
    if isinstance(ty, EnumLiterals) and value not in ty.values:
        return Violation("enum", describe(ty), enum=ty)
    if isinstance(ty, NumericRange) and not _in_range(ty, value):
        return Violation("range", describe(ty), range=ty)
    return None


def satisfies(ty: RefinedType, value: Literal) -> bool:
    return violation(ty, value) is None


def describe(ty: RefinedType) -> str:
    """Human phrase for a type, e.g. ``a float between 0 and 1``."""
    if isinstance(ty, Primitive):
        return {"int": "an int", "text": "a text", "table": "a table"}.get(ty.kind, f"a {ty.kind}")
    if isinstance(ty, EnumLiterals):
        return "one of " + ", ".join(quote(v) for v in ty.values)
    if isinstance(ty, CallableSig):
        return f"a callable taking {ty.arity} argument" + ("" if ty.arity == 1 else "s")
    if isinstance(ty, UnionOf):
        return " or ".join(describe(m) for m in ty.members)
    article = "an int" if ty.kind == "int" else "a float"
    lo, hi = ty.min, ty.max
    if lo is not None and hi is not None and ty.min_inclusive and ty.max_inclusive:
        return f"{article} between {_format_number(lo)} and {_format_number(hi)}"
    parts = []
    if lo is not None:
        parts.append(f"{'>=' if ty.min_inclusive else '>'} {_format_number(lo)}")
    if hi is not None:
        parts.append(f"{'<=' if ty.max_inclusive else '<'} {_format_number(hi)}")
    return article + (" " + " and ".join(parts) if parts else "")


# ---------------------------------------------------------------- spec records


@dataclass(frozen=True)
class Condition:
    param: str
    op: str  # == | !=
    value: Literal

    def holds(self, actual: Literal) -> bool:
        same = literal_kind(actual) == literal_kind(self.value) and actual == self.value
        return same if self.op == "==" else not same

    def __str__(self) -> str:
        return f"{self.param} {self.op} {format_literal(self.value)}"


@dataclass(frozen=True)
class ParameterSpec:
    name: str
    ty: RefinedType
    default: Literal | None = None
    relevant_when: Condition | None = None
    context_warning: tuple[str, str] | None = None


@dataclass(frozen=True)
class MethodSpec:
    name: str
    params: tuple[str, ...] = ()
    returns: str | None = None


@dataclass(frozen=True)
class MustPrecede:
    first: str
    second: str


@dataclass(frozen=True)
class RequireSetBefore:
    param: str
    required_value: Literal
    method: str


TemporalRule = _U[MustPrecede, RequireSetBefore]


@dataclass(frozen=True)
class EntitySpec:
    name: str
    kind: str
    task: str
    params: tuple[ParameterSpec, ...] = ()
    methods: tuple[MethodSpec, ...] = ()
    temporal: tuple[TemporalRule, ...] = ()
    handles: tuple[str, ...] = ()

    def param(self, name: str) -> ParameterSpec | None:
        return next((p for p in self.params if p.name == name), None)

    def method(self, name: str) -> MethodSpec | None:
        return next((m for m in self.methods if m.name == name), None)


@dataclass(frozen=True)
class MetricSpec:
    name: str
    task: str


@dataclass(frozen=True)
class ApiSpec:
    entities: dict[str, EntitySpec] = field(default_factory=dict)
    metrics: dict[str, MetricSpec] = field(default_factory=dict)
    version: str = ""
    # provenance only; not part of the value
    name: str = field(default="", compare=False)
    digest: str = field(default="", compare=False)


@dataclass(frozen=True)
class SpecError:
    reason: str
    line: int = 0
    entity: str = ""
    field: str = ""

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line else ""
        subject = ".".join(x for x in (self.entity, self.field) if x)
        return f"{where}{subject + ': ' if subject else ''}{self.reason}"


class SpecErrors(Exception):
    """Raised when a spec cannot be loaded; carries every problem found."""

    def __init__(self, errors: list[SpecError]) -> None:
        super().__init__("\n".join(str(e) for e in errors))
        self.errors = errors


def lookup_entity(spec: ApiSpec, name: str) -> EntitySpec | None:
    return spec.entities.get(name)


# ---------------------------------------------------------------- parsing


def _type_invariant_errors(ty: RefinedType) -> list[str]:
    if isinstance(ty, EnumLiterals):
        if not ty.values:
            return ["enum must list at least one literal"]
        if len(set(ty.values)) != len(ty.values):
            return ["enum lists a literal more than once"]
    elif isinstance(ty, NumericRange):
        if ty.kind not in ("int", "float"):
            return [f"range kind must be int or float, not {ty.kind}"]
        if ty.min is not None and ty.max is not None:
            if ty.min > ty.max or (ty.min == ty.max and not (ty.min_inclusive and ty.max_inclusive)):
                return ["range minimum exceeds maximum"]
    elif isinstance(ty, CallableSig):
        if ty.arity < 0:
            return ["callable arity must be non-negative"]
    elif isinstance(ty, UnionOf):
        errs = []
        if len(ty.members) < 2:
            errs.append("union needs at least two members")
        if any(isinstance(m, UnionOf) for m in ty.members):
            errs.append("union must not nest another union")
        if len(set(ty.members)) != len(ty.members):
            errs.append("union lists the same member twice")
        for m in ty.members:
            errs.extend(_type_invariant_errors(m))
        return errs
    elif ty.kind not in PRIMITIVE_KINDS:
        return [f"unknown type keyword '{ty.kind}'"]
    return []


def _parse_kwargs(cur: Cursor) -> dict:
    args: dict = {}
    cur.expect("(")
    if cur.accept(")"):
        return args
    while True:
        key = cur.take("ident", "argument name").text
        cur.expect("=")
        if key in args:
            raise ScanError(cur.lineno, f"argument '{key}' given twice")
        args[key] = cur.literal()
        if cur.accept(")"):
            return args
        cur.expect(",")


def _parse_atom(cur: Cursor) -> RefinedType:
    tok = cur.take("ident", "a type")
    word = tok.text
    if word == "enum":
        cur.expect("(")
        values: list[str] = []
        if not cur.accept(")"):
            while True:
                values.append(cur.take("text", "a text literal").value)
                if cur.accept(")"):
                    break
                cur.expect(",")
        return EnumLiterals(tuple(values))
    if word == "callable":
        kw = _parse_kwargs(cur)
        unknown = set(kw) - {"arity", "note"}
        if unknown:
            raise ScanError(cur.lineno, f"unknown callable argument '{sorted(unknown)[0]}'")
        arity = kw.get("arity", 0)
        if literal_kind(arity) != "int":
            raise ScanError(cur.lineno, "callable arity must be an int")
        return CallableSig(arity, str(kw.get("note", "")))
    if word in ("int", "float") and cur.at("("):
        kw = _parse_kwargs(cur)
        unknown = set(kw) - {"min", "max", "min_exclusive", "max_exclusive"}
        if unknown:
            raise ScanError(cur.lineno, f"unknown range argument '{sorted(unknown)[0]}'")
        for bound in ("min", "max"):
            if bound in kw and literal_kind(kw[bound]) not in ("int", "float"):
                raise ScanError(cur.lineno, f"range {bound} must be a number")
            if word == "int" and bound in kw and literal_kind(kw[bound]) != "int":
                raise ScanError(cur.lineno, f"int range {bound} must be an int")
        return NumericRange(
            word,
            kw.get("min"),
            kw.get("max"),
            not kw.get("min_exclusive", False),
            not kw.get("max_exclusive", False),
        )
    if word in PRIMITIVE_KINDS:
        return Primitive(word)
    raise ScanError(cur.lineno, f"unknown type keyword '{word}'")


def _parse_type(cur: Cursor) -> RefinedType:
    members = [_parse_atom(cur)]
    while cur.accept("|"):
        members.append(_parse_atom(cur))
    if len(members) == 1:
        return members[0]
    return UnionOf(tuple(members))


def _parse_param(cur: Cursor) -> ParameterSpec:
    name = cur.take("ident", "parameter name").text
    cur.expect(":")
    ty = _parse_type(cur)
    for msg in _type_invariant_errors(ty):
        raise ScanError(cur.lineno, msg)
    default = None
    condition = None
    ctx = None
    if cur.accept("="):
        default = cur.literal()
    while not cur.done():
        if cur.accept("relevant_when"):
            pname = cur.take("ident", "parameter name").text
            tok = cur.peek()
            if tok is None or tok.text not in ("==", "!="):
                raise ScanError(cur.lineno, "expected '==' or '!=' in condition")
            cur.i += 1
            condition = Condition(pname, tok.text, cur.literal())
        elif cur.accept("context_warning"):
            cur.expect("(")
            tag = cur.take("ident", "context tag").text
            cur.expect(",")
            msg = cur.take("text", "warning message").value
            cur.expect(")")
            ctx = (tag, msg)
        else:
            cur.end()
    return ParameterSpec(name, ty, default, condition, ctx)


def _parse_method(cur: Cursor) -> MethodSpec:
    name = cur.take("ident", "method name").text
    cur.expect("(")
    kinds: list[str] = []
    if not cur.accept(")"):
        while True:
            kinds.append(cur.take("ident", "parameter kind").text)
            if cur.accept(")"):
                break
            cur.expect(",")
    returns = None
    if cur.accept("->"):
        returns = cur.take("ident", "return kind").text
    cur.end()
    for k in kinds + ([returns] if returns else []):
        if k not in PRIMITIVE_KINDS:
            raise ScanError(cur.lineno, f"unknown type keyword '{k}'")
    return MethodSpec(name, tuple(kinds), returns)


def _parse_entity_header(cur: Cursor) -> tuple[str, str, str, tuple[str, ...]]:
    name = cur.take("ident", "entity name").text
    kind = cur.take("ident", "entity kind").text
    if kind not in ENTITY_KINDS:
        raise ScanError(cur.lineno, f"entity kind must be model or transform, not '{kind}'")
    cur.expect("task")
    task = cur.take("ident", "task").text
    if task not in ENTITY_TASKS:
        raise ScanError(cur.lineno, f"unknown task '{task}'")
    handles: list[str] = []
    if cur.accept("handles"):
        while True:
            cap = cur.take("ident", "capability").text
            if cap not in CAPABILITIES:
                raise ScanError(cur.lineno, f"unknown capability '{cap}'")
            handles.append(cap)
            if not cur.accept(","):
                break
    cur.expect("{")
    cur.end()
    return name, kind, task, tuple(handles)


class _EntityBuilder:
    def __init__(self, name: str, kind: str, task: str, handles: tuple[str, ...], line: int) -> None:
        self.name, self.kind, self.task, self.handles, self.line = name, kind, task, handles, line
        self.params: list[ParameterSpec] = []
        self.methods: list[MethodSpec] = []
        self.temporal: list[TemporalRule] = []

    def build(self) -> EntitySpec:
        return EntitySpec(
            self.name, self.kind, self.task, tuple(self.params), tuple(self.methods),
            tuple(self.temporal), self.handles,
        )


def parse_api_spec(source: str, name: str = "") -> ApiSpec:
    """Parse ``.mlspec`` text.

    Raises :class:`SpecErrors` listing every syntax and consistency problem;
    a returned spec always passes :func:`validate_spec`.
    """
    errors: list[SpecError] = []
    entities: dict[str, EntitySpec] = {}
    metrics: dict[str, MetricSpec] = {}
    version = ""
    current: _EntityBuilder | None = None

    for lineno, line in enumerate(source.splitlines(), start=1):
        try:
            toks = scan_line(line, lineno)
            if not toks:
                continue
            cur = Cursor(toks, lineno)
            if current is not None:
                if cur.accept("}"):
                    cur.end()
                    entities[current.name] = current.build()
                    current = None
                elif cur.accept("param"):
                    p = _parse_param(cur)
                    if any(q.name == p.name for q in current.params):
                        raise ScanError(lineno, f"duplicate parameter '{p.name}' in entity {current.name}")
                    current.params.append(p)
                elif cur.accept("method"):
                    m = _parse_method(cur)
                    if any(q.name == m.name for q in current.methods):
                        raise ScanError(lineno, f"duplicate method '{m.name}' in entity {current.name}")
                    current.methods.append(m)
                elif cur.accept("order"):
                    first = cur.take("ident", "method name").text
                    cur.expect("before")
                    second = cur.take("ident", "method name").text
                    cur.end()
                    current.temporal.append(MustPrecede(first, second))
                elif cur.accept("requires_set"):
                    pname = cur.take("ident", "parameter name").text
                    cur.expect("==")
                    value = cur.literal()
                    cur.expect("before")
                    method = cur.take("ident", "method name").text
                    cur.end()
                    current.temporal.append(RequireSetBefore(pname, value, method))
                else:
                    tok = cur.peek()
                    raise ScanError(lineno, f"unknown declaration '{tok.text}' inside entity")
                continue
            if cur.accept("entity"):
                ename, kind, task, handles = _parse_entity_header(cur)
                if ename in entities:
                    errors.append(SpecError(f"duplicate entity '{ename}'", lineno, ename))
                current = _EntityBuilder(ename, kind, task, handles, lineno)
            elif cur.accept("metric"):
                mname = cur.take("ident", "metric name").text
                cur.expect("task")
                task = cur.take("ident", "task").text
                cur.end()
                if task not in METRIC_TASKS:
                    raise ScanError(lineno, f"metric task must be classification or regression, not '{task}'")
                if mname in metrics:
                    raise ScanError(lineno, f"duplicate metric '{mname}'")
                metrics[mname] = MetricSpec(mname, task)
            elif cur.accept("version"):
                version = cur.take("text", "version text").value
                cur.end()
            else:
                tok = cur.peek()
                raise ScanError(lineno, f"unknown declaration '{tok.text}'")
        except ScanError as exc:
            errors.append(SpecError(exc.reason, exc.line, current.name if current else ""))

    if current is not None:
        errors.append(SpecError(f"entity {current.name} is missing its closing '}}'", current.line, current.name))
    spec = ApiSpec(entities, metrics, version, name, hashlib.sha256(source.encode()).hexdigest())
    if not errors:
        errors = validate_spec(spec)
    if errors:
        raise SpecErrors(errors)
    return spec


# ---------------------------------------------------------------- validation


def validate_spec(spec: ApiSpec) -> list[SpecError]:
    errors: list[SpecError] = []
    for name in spec.entities:
        if name in spec.metrics:
            errors.append(SpecError(f"name '{name}' is both an entity and a metric", entity=name))
    for key, ent in spec.entities.items():
        err = lambda reason, fld="": errors.append(SpecError(reason, entity=ent.name, field=fld))  # noqa: E731
        if key != ent.name:
            err(f"registered under a different name '{key}'")
        if ent.kind not in ENTITY_KINDS:
            err(f"unknown entity kind '{ent.kind}'", "kind")
        if ent.task not in ENTITY_TASKS:
            err(f"unknown task '{ent.task}'", "task")
        pnames = [p.name for p in ent.params]
        mnames = [m.name for m in ent.methods]
        for dup in sorted({n for n in pnames if pnames.count(n) > 1}):
            err("duplicate parameter", dup)
        for dup in sorted({n for n in mnames if mnames.count(n) > 1}):
            err("duplicate method", dup)
        if ent.kind == "model" and "fit" not in mnames:
            err("a model entity must declare a fit method", "methods")
        for p in ent.params:
            for msg in _type_invariant_errors(p.ty):
                err(msg, p.name)
            if p.default is not None:
                v = violation(p.ty, p.default)
                if v is not None:
                    what = {"range": "declared range", "enum": "allowed literals", "kind": "declared type"}[v.kind]
                    err(f"default violates {what}", p.name)
            if p.relevant_when is not None:
                cond = p.relevant_when
                other = ent.param(cond.param)
                if other is None or cond.param == p.name:
                    err(f"relevant_when references unknown parameter '{cond.param}'", p.name)
                elif not accepts_kind(other.ty, cond.value):
                    err(f"condition value {format_literal(cond.value)} does not match the kind of '{cond.param}'", p.name)
                if cond.op not in ("==", "!="):
                    err(f"unknown condition operator '{cond.op}'", p.name)
        for rule in ent.temporal:
            if isinstance(rule, MustPrecede):
                for m in (rule.first, rule.second):
                    if m not in mnames:
                        err(f"order rule references unknown method '{m}'", "temporal")
            else:
                if rule.method not in mnames:
                    err(f"requires_set references unknown method '{rule.method}'", "temporal")
                target = ent.param(rule.param)
                if target is None:
                    err(f"requires_set references unknown parameter '{rule.param}'", "temporal")
                elif not satisfies(target.ty, rule.required_value):
                    err(f"required value {format_literal(rule.required_value)} violates the type of '{rule.param}'", "temporal")
    for key, met in spec.metrics.items():
        if key != met.name:
            errors.append(SpecError(f"registered under a different name '{key}'", entity=met.name))
        if met.task not in METRIC_TASKS:
            errors.append(SpecError(f"unknown task '{met.task}'", entity=met.name, field="task"))
    return errors


# ---------------------------------------------------------------- printing


def format_type(ty: RefinedType) -> str:
    if isinstance(ty, Primitive):
        return ty.kind
    if isinstance(ty, EnumLiterals):
        return "enum(" + ",".join(quote(v) for v in ty.values) + ")"
    if isinstance(ty, NumericRange):
        args = []
        if ty.min is not None:
            args.append(f"min={_format_number(ty.min)}")
        if ty.max is not None:
            args.append(f"max={_format_number(ty.max)}")
        if not ty.min_inclusive:
            args.append("min_exclusive=true")
        if not ty.max_inclusive:
            args.append("max_exclusive=true")
        return f"{ty.kind}({', '.join(args)})"
    if isinstance(ty, CallableSig):
        note = f", note={quote(ty.note)}" if ty.note else ""
        return f"callable(arity={ty.arity}{note})"
    return " | ".join(format_type(m) for m in ty.members)


def print_spec(spec: ApiSpec) -> str:
    """Canonical ``.mlspec`` text; ``parse_api_spec(print_spec(s)) == s``."""
    out: list[str] = []
    if spec.version:
        out.append(f"version {quote(spec.version)}")
    for ent in spec.entities.values():
        handles = f" handles {', '.join(ent.handles)}" if ent.handles else ""
        out.append(f"entity {ent.name} {ent.kind} task {ent.task}{handles} {{")
        for p in ent.params:
            line = f"  param {p.name}: {format_type(p.ty)}"
            if p.default is not None:
                line += f" = {format_literal(p.default)}"
            if p.relevant_when is not None:
                line += f" relevant_when {p.relevant_when}"
            if p.context_warning is not None:
                line += f" context_warning({p.context_warning[0]}, {quote(p.context_warning[1])})"
            out.append(line)
        for m in ent.methods:
            ret = f" -> {m.returns}" if m.returns else ""
            out.append(f"  method {m.name}({', '.join(m.params)}){ret}")
        for rule in ent.temporal:
            if isinstance(rule, MustPrecede):
                out.append(f"  order {rule.first} before {rule.second}")
            else:
                out.append(f"  requires_set {rule.param} == {format_literal(rule.required_value)} before {rule.method}")
        out.append("}")
    for met in spec.metrics.values():
        out.append(f"metric {met.name} task {met.task}")
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------- merging


def merge_specs(specs: list[ApiSpec]) -> ApiSpec:
    """Union of several specs; raises :class:`SpecErrors` on a name collision."""
    owner: dict[str, str] = {}
    entities: dict[str, EntitySpec] = {}
    metrics: dict[str, MetricSpec] = {}
    errors: list[SpecError] = []
    for idx, spec in enumerate(specs):
        label = spec.name or f"spec #{idx + 1}"
        for name in list(spec.entities) + list(spec.metrics):
            if name in owner:
                errors.append(SpecError(f"'{name}' is defined in both {owner[name]} and {label}", entity=name))
            else:
                owner[name] = label
        entities.update(spec.entities)
        metrics.update(spec.metrics)
    if errors:
        raise SpecErrors(errors)
    versions = sorted({s.version for s in specs if s.version})
    names = [s.name for s in specs if s.name]
    return ApiSpec(
        {k: entities[k] for k in sorted(entities)},
        {k: metrics[k] for k in sorted(metrics)},
        "+".join(versions),
        "+".join(names),
        "",
    )


# ---------------------------------------------------------------- bundled specs

BUNDLED_SPECS = ("svc.mlspec", "transforms.mlspec", "metrics.mlspec")


def load_spec_file(path) -> ApiSpec:
    from pathlib import Path

    p = Path(path)
    # decode without newline translation so the digest covers the exact bytes
    return parse_api_spec(p.read_bytes().decode("utf-8"), name=p.stem)


def bundled_spec_texts() -> dict[str, str]:
    base = resources.files("mlguard") / "data"
    return {n: (base / n).read_bytes().decode("utf-8") for n in BUNDLED_SPECS}


def load_bundled_specs() -> list[ApiSpec]:
    return [parse_api_spec(text, name=n.rsplit(".", 1)[0]) for n, text in bundled_spec_texts().items()]
