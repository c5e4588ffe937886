"""Name resolution: binds every variable reference to what it denotes."""
from __future__ import annotations

from dataclasses import dataclass, field

from mlguard import diagnostics
from mlguard.apispec import ApiSpec, EntitySpec, MetricSpec
from mlguard.checker.suggest import suggest_fix
from mlguard.diagnostics import Diagnostic, Quickfix
from mlguard.dsl import ast

ROLES = ("raw", "train", "val", "test")


@dataclass(eq=False)
class DatasetBinding:
    name: str
    role: str | None  # None when the source could not be resolved
    provenance: tuple["TransformBinding", ...] = ()
    origin: str | None = None  # path of the load statement the rows come from
    stmt_index: int = -1


@dataclass(eq=False)
class TransformBinding:
    name: str
    entity: EntitySpec | None
    args: tuple[ast.Arg, ...]
    fitted_on: DatasetBinding | None
    stmt_index: int = -1


@dataclass(eq=False)
class ModelBinding:
    name: str
    entity: EntitySpec | None
    args: tuple[ast.Arg, ...]
    stmt_index: int = -1


@dataclass(eq=False)
class ResultBinding:
    """Output of ``call`` or ``evaluate``; not usable as a dataset."""

    name: str
    stmt_index: int = -1


Binding = DatasetBinding | TransformBinding | ModelBinding | ResultBinding


@dataclass
class ResolvedStmt:
    index: int
    stmt: ast.Stmt
    refs: dict[str, Binding | None] = field(default_factory=dict)
    entity: EntitySpec | None = None
    metric: MetricSpec | None = None
    defines: tuple[Binding, ...] = ()


@dataclass
class ResolvedProgram:
    ast: ast.Pipeline
    statements: list[ResolvedStmt]
    bindings: dict[str, Binding]  # final binding of every variable
    split_names: dict[str, str] = field(default_factory=dict)  # role -> variable name of the first split

    def models(self) -> list[ModelBinding]:
        seen: list[ModelBinding] = []
        for rs in self.statements:
            seen.extend(b for b in rs.defines if isinstance(b, ModelBinding))
        return seen

    def transforms(self) -> list[TransformBinding]:
        seen: list[TransformBinding] = []
        for rs in self.statements:
            seen.extend(b for b in rs.defines if isinstance(b, TransformBinding))
        return seen


_KIND_WORD = {
    DatasetBinding: "a dataset",
    TransformBinding: "a transform",
    ModelBinding: "a model",
    ResultBinding: "a result",
}


def name_fixes(name: ast.Name, candidates: list[str]) -> list[Quickfix]:
    return [Quickfix(name.span, c, f"did you mean {c}?") for c in suggest_fix(name.text, candidates)]


class _Resolver:
    def __init__(self, spec: ApiSpec) -> None:
        self.spec = spec
        self.env: dict[str, Binding] = {}
        self.diags: list[Diagnostic] = []

    def report(self, code: str, node, message: str, fixes=()) -> None:
        self.diags.append(diagnostics.make(code, node.span, message, fixes))

    def use(self, name: ast.Name, want: type) -> Binding | None:
        b = self.env.get(name.text)
        if b is None:
            self.report(
                "E-NAME-002", name, f"variable {name.text} is used before it is bound",
                name_fixes(name, [n for n, v in self.env.items() if isinstance(v, want)]),
            )
            return None
        if not isinstance(b, want):
            self.report(
                "E-NAME-006", name, f"{name.text} is {_KIND_WORD[type(b)]}, but {_KIND_WORD[want]} is expected here",
                name_fixes(name, [n for n, v in self.env.items() if isinstance(v, want) and n != name.text]),
            )
            return None
        return b

    def entity(self, name: ast.Name, kind: str) -> EntitySpec | None:
        ent = self.spec.entities.get(name.text)
        if ent is None:
            candidates = [e.name for e in self.spec.entities.values() if e.kind == kind]
            candidates += [e.name for e in self.spec.entities.values() if e.kind != kind]
            self.report("E-NAME-001", name, f"unknown entity {name.text}", name_fixes(name, candidates))
            return None
        if ent.kind != kind:
            if kind == "model":
                msg = f"{ent.name} is a transform; declare it with 'fit on <dataset>'"
            else:
                msg = f"{ent.name} is a model; models are fitted with a separate 'fit' statement"
            self.report("E-NAME-007", name, msg)
        return ent

    def args(self, ent: EntitySpec | None, args: tuple[ast.Arg, ...]) -> None:
        if ent is None:
            return
        seen: set[str] = set()
        for arg in args:
            if arg.name.text in seen:
                self.report("E-NAME-005", arg.name, f"parameter {arg.name.text} of {ent.name} is given twice")
            seen.add(arg.name.text)
            if ent.param(arg.name.text) is None:
                self.report(
                    "E-NAME-005", arg.name, f"{ent.name} has no parameter {arg.name.text}",
                    name_fixes(arg.name, [p.name for p in ent.params]),
                )

    def metric(self, name: ast.Name) -> MetricSpec | None:
        met = self.spec.metrics.get(name.text)
        if met is None:
            self.report("E-NAME-003", name, f"unknown metric {name.text}", name_fixes(name, list(self.spec.metrics)))
        return met

    def bind(self, name: ast.Name, b: Binding) -> Binding:
        self.env[name.text] = b
        return b


def resolve(pipeline: ast.Pipeline, spec: ApiSpec) -> tuple[ResolvedProgram, list[Diagnostic]]:
    r = _Resolver(spec)
    out: list[ResolvedStmt] = []
    split_names: dict[str, str] = {}
    for i, stmt in enumerate(pipeline.statements):
        rs = ResolvedStmt(i, stmt)
        if isinstance(stmt, ast.Load):
            rs.defines = (r.bind(stmt.var, DatasetBinding(stmt.var.text, "raw", (), stmt.path.value, i)),)
        elif isinstance(stmt, ast.Split):
            src = r.use(stmt.source, DatasetBinding)
            rs.refs["source"] = src
            defs = []
            for role, name in (("train", stmt.train), ("val", stmt.val), ("test", stmt.test)):
                split_names.setdefault(role, name.text)
                prov = src.provenance if src else ()
                origin = src.origin if src else None
                defs.append(r.bind(name, DatasetBinding(name.text, role, prov, origin, i)))
            rs.defines = tuple(defs)
        elif isinstance(stmt, ast.TransformDecl):
            ent = rs.entity = r.entity(stmt.entity, "transform")
            r.args(ent, stmt.args)
            data = rs.refs["fit_on"] = r.use(stmt.fit_on, DatasetBinding)
            rs.defines = (r.bind(stmt.var, TransformBinding(stmt.var.text, ent, stmt.args, data, i)),)
        elif isinstance(stmt, ast.Apply):
            tr = rs.refs["transform"] = r.use(stmt.transform, TransformBinding)
            data = rs.refs["dataset"] = r.use(stmt.dataset, DatasetBinding)
            role = data.role if data else None
            prov = (data.provenance if data else ()) + ((tr,) if tr else ())
            origin = data.origin if data else None
            rs.defines = (r.bind(stmt.var, DatasetBinding(stmt.var.text, role, prov, origin, i)),)
        elif isinstance(stmt, ast.ModelDecl):
            ent = rs.entity = r.entity(stmt.entity, "model")
            r.args(ent, stmt.args)
            rs.defines = (r.bind(stmt.var, ModelBinding(stmt.var.text, ent, stmt.args, i)),)
        elif isinstance(stmt, ast.SetParam):
            model = rs.refs["model"] = r.use(stmt.model, ModelBinding)
            if model is not None and model.entity is not None:
                rs.entity = model.entity
                if model.entity.param(stmt.param.text) is None:
                    r.report(
                        "E-NAME-005", stmt.param, f"{model.entity.name} has no parameter {stmt.param.text}",
                        name_fixes(stmt.param, [p.name for p in model.entity.params]),
                    )
        elif isinstance(stmt, ast.Fit):
            model = rs.refs["model"] = r.use(stmt.model, ModelBinding)
            rs.refs["dataset"] = r.use(stmt.dataset, DatasetBinding)
            if model is not None and model.entity is not None:
                rs.entity = model.entity
                if model.entity.method("fit") is None:
                    r.report("E-NAME-004", stmt.model, f"{model.entity.name} has no method fit")
        elif isinstance(stmt, ast.Call):
            model = rs.refs["model"] = r.use(stmt.model, ModelBinding)
            rs.refs["dataset"] = r.use(stmt.dataset, DatasetBinding)
            if model is not None and model.entity is not None:
                rs.entity = model.entity
                if model.entity.method(stmt.method.text) is None:
                    r.report(
                        "E-NAME-004", stmt.method, f"{model.entity.name} has no method {stmt.method.text}",
                        name_fixes(stmt.method, [m.name for m in model.entity.methods]),
                    )
            if stmt.var is not None:
                rs.defines = (r.bind(stmt.var, ResultBinding(stmt.var.text, i)),)
        elif isinstance(stmt, ast.Evaluate):
            rs.metric = r.metric(stmt.metric)
            model = rs.refs["model"] = r.use(stmt.model, ModelBinding)
            rs.refs["dataset"] = r.use(stmt.dataset, DatasetBinding)
            if model is not None:
                rs.entity = model.entity
            rs.defines = (r.bind(stmt.var, ResultBinding(stmt.var.text, i)),)
        elif isinstance(stmt, ast.Require):
            rs.metric = r.metric(stmt.metric)
        out.append(rs)
    return ResolvedProgram(pipeline, out, dict(r.env), split_names), r.diags
