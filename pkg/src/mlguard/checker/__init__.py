"""Static checker: name resolution plus the constraint and best-practice passes."""
from __future__ import annotations

from dataclasses import dataclass

from mlguard.apispec import ApiSpec
from mlguard.checker.passes import check_context, check_dependencies, check_temporal, check_types
from mlguard.checker.practices import check_best_practices
from mlguard.checker.resolve import ResolvedProgram, resolve
from mlguard.checker.suggest import damerau_levenshtein, suggest_fix
from mlguard.diagnostics import Diagnostic, escalate
from mlguard.dsl import ast
from mlguard.dsl.parser import parse_source

PASSES = ("names", "types", "dependencies", "temporal", "context", "practices")
ORDER_SENSITIVE = frozenset({"temporal", "practices"})


@dataclass(frozen=True)
class CheckReport:
    diagnostics: tuple[Diagnostic, ...]
    error_count: int
    warning_count: int
    program: ResolvedProgram | None = None

    @classmethod
    def build(cls, diags, program=None) -> "CheckReport":
        unique = {(d.code, d.span, d.message): d for d in diags}
        ordered = tuple(sorted(unique.values(), key=Diagnostic.sort_key))
        return cls(
            ordered,
            sum(d.severity == "error" for d in ordered),
            sum(d.severity == "warning" for d in ordered),
            program,
        )

    @property
    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]


def check_program(
    pipeline: ast.Pipeline | None,
    spec: ApiSpec,
    contexts=(),
    profiles=None,
    *,
    syntax_diagnostics=(),
    strict: bool = False,
    deny_warnings: bool = False,
    disabled=frozenset(),
) -> CheckReport:
    """Run every pass and merge the findings into one sorted, de-duplicated report.

    ``disabled`` names passes to skip (see :data:`PASSES`); it exists for tests.
    """
    diags = list(syntax_diagnostics)
    program = None
    if pipeline is not None:
        program, name_diags = resolve(pipeline, spec)
        runs = {
            "names": lambda: name_diags,
            "types": lambda: check_types(program, spec),
            "dependencies": lambda: check_dependencies(program, spec),
            "temporal": lambda: check_temporal(program, spec),
            "context": lambda: check_context(program, spec, contexts),
            "practices": lambda: check_best_practices(program, spec, profiles, strict),
        }
        skipped = set(disabled)
        if any(d.is_error for d in syntax_diagnostics):
            # statements dropped by recovery would make order-based findings spurious
            skipped |= ORDER_SENSITIVE
        for name in PASSES:
            if name not in skipped:
                diags.extend(runs[name]())
    if deny_warnings:
        diags = [escalate(d) for d in diags]
    return CheckReport.build(diags, program)


def check_source(source: str, spec: ApiSpec, file: str = "<input>", **kwargs) -> CheckReport:
    pipeline, syntax = parse_source(source, file)
    return check_program(pipeline, spec, syntax_diagnostics=syntax, **kwargs)


__all__ = [
    "CheckReport", "PASSES", "check_best_practices", "check_context", "check_dependencies",
    "check_program", "check_source", "check_temporal", "check_types", "damerau_levenshtein",
    "resolve", "suggest_fix",
]
