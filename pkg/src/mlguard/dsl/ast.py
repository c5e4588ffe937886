"""Pipeline syntax tree.

Spans are excluded from equality, so ``==`` compares structure only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from mlguard.apispec import Literal
from mlguard.dsl.tokens import SourceSpan

_span = lambda: field(default=None, compare=False, repr=False)  # noqa: E731


@dataclass(frozen=True)
class Name:
    text: str
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Lit:
    value: Literal
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Arg:
    name: Name
    value: Lit


@dataclass(frozen=True)
class Load:
    var: Name
    path: Lit
    schema: Lit | None = None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Split:
    train: Name
    val: Name
    test: Name
    source: Name
    ratios: tuple[Lit, Lit, Lit]
    stratify: Lit | None = None
    seed: Lit | None = None
    span: SourceSpan = _span()


@dataclass(frozen=True)
class TransformDecl:
    var: Name
    entity: Name
    args: tuple[Arg, ...]
    fit_on: Name
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Apply:
    var: Name
    transform: Name
    dataset: Name
    span: SourceSpan = _span()


@dataclass(frozen=True)
class ModelDecl:
    var: Name
    entity: Name
    args: tuple[Arg, ...]
    span: SourceSpan = _span()


@dataclass(frozen=True)
class SetParam:
    model: Name
    param: Name
    value: Lit
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Fit:
    model: Name
    dataset: Name
    label: Lit
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Call:
    var: Name | None
    model: Name
    method: Name
    dataset: Name
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Evaluate:
    var: Name
    metric: Name
    model: Name
    dataset: Name
    span: SourceSpan = _span()


@dataclass(frozen=True)
class Require:
    metric: Name
    op: str
    threshold: Lit
    span: SourceSpan = _span()


Stmt = Union[Load, Split, TransformDecl, Apply, ModelDecl, SetParam, Fit, Call, Evaluate, Require]


@dataclass(frozen=True)
class Pipeline:
    name: Name
    statements: tuple[Stmt, ...] = ()
    span: SourceSpan = _span()


def bound_name(stmt: Stmt) -> Name | None:
    """The variable a statement binds (Split binds three; this returns None for it)."""
    return getattr(stmt, "var", None) if not isinstance(stmt, Split) else None
