"""Rule-table advisor: metrics, algorithm families, encodings, validation strategy."""
from __future__ import annotations

from dataclasses import dataclass

from mlguard.apispec import ApiSpec
from mlguard.profiler.profile import DataProfile
from mlguard.profiler.schema import SchemaMeta

HIGH_MISSING_FRACTION = 0.5
CROSS_VALIDATION_ROWS = 1000


@dataclass(frozen=True)
class Suggestion:
    topic: str  # metric | algorithm | encoding | missing | scaling | validation | split | schema
    subject: str
    text: str

    def __str__(self) -> str:
        return f"[{self.topic}] {self.subject}: {self.text}"


def _is_ordered(name: str, profile_ordered: bool, schema: SchemaMeta | None) -> bool:
    meta = schema.get(name) if schema is not None else None
    return meta.ordered if meta is not None else profile_ordered


def advise(task: str, profile: DataProfile, schema: SchemaMeta | None, spec: ApiSpec) -> list[Suggestion]:
    out: list[Suggestion] = []
    for met in spec.metrics.values():
        if met.task == task:
            out.append(Suggestion("metric", met.name, f"suitable quality metric for {task}"))
    for ent in spec.entities.values():
        if ent.kind == "model" and ent.task in (task, "both"):
            out.append(Suggestion("algorithm", ent.name, f"learning algorithm supporting {task}"))

    label = profile.label_column
    for col in profile.columns:
        if col.name == label:
            continue
        present = col.row_count - col.missing_count
        if col.row_count and col.missing_count / col.row_count > HIGH_MISSING_FRACTION:
            out.append(Suggestion(
                "missing", col.name,
                f"{col.missing_count} of {col.row_count} values are missing; consider dropping the column",
            ))
        elif col.missing_count:
            out.append(Suggestion("missing", col.name, f"{col.missing_count} missing value{'' if col.missing_count == 1 else 's'}; impute before fitting"))
        if col.inferred_kind == "categorical":
            if _is_ordered(col.name, col.ordered, schema):
                out.append(Suggestion("encoding", col.name, "label encoding (ordered categories become increasing integers)"))
            else:
                out.append(Suggestion("encoding", col.name, "one-hot encoding (one indicator column per category)"))
            meta = schema.get(col.name) if schema is not None else None
            order = meta.order if meta is not None and meta.order is not None else col.order
            if order is not None and col.value_counts:
                gaps = sorted(set(col.value_counts) - set(order))
                if gaps:
                    out.append(Suggestion(
                        "schema", col.name, "values missing from the declared order: " + ", ".join(gaps),
                    ))
        elif col.inferred_kind == "numeric" and present >= 2 and col.normalization == "none":
            out.append(Suggestion("scaling", col.name, "values are not normalized; consider standardizing or scaling to [0, 1]"))

    if profile.row_count < CROSS_VALIDATION_ROWS:
        out.append(Suggestion(
            "validation", "strategy",
            f"only {profile.row_count} rows; prefer cross-validation over a single held-out validation set",
        ))
    else:
        out.append(Suggestion("validation", "strategy", f"{profile.row_count} rows; a held-out validation set is adequate"))
    out.append(Suggestion(
        "split", "ratios", "70/15/15 for train/validation/test is a common convention, not a rule; "
        "stratify on the label for classification",
    ))
    return out
