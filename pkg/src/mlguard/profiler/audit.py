from __future__ import annotations

from dataclasses import dataclass

from mlguard.profiler.profile import DataProfile, ProfileError
from mlguard.profiler.stats import distribution_distance, normalize

DEFAULT_THRESHOLD = 0.05


@dataclass(frozen=True)
class SplitResult:
    source: str
    distribution: dict[str, float]
    tv_distance_to_full: float


@dataclass(frozen=True)
class SplitAudit:
    label: str
    full_distribution: dict[str, float]
    splits: tuple[SplitResult, ...]
    verdict: str  # stratified | skewed
    threshold: float


def label_distribution(profile: DataProfile, label: str) -> dict[str, float]:
    col = profile.column(label)
    if col is None:
        raise ProfileError(f"label column {label} is missing from {profile.source or 'the profile'}")
    if not col.value_counts:
        raise ProfileError(f"label column {label} in {profile.source or 'the profile'} has no value counts")
    return normalize(col.value_counts)


def audit_split(full: DataProfile, splits, label: str, threshold: float = DEFAULT_THRESHOLD) -> SplitAudit:
    """Compare each split's label distribution with the full data set's.

    The split is called stratified when no split is further than ``threshold``
    (total variation distance) from the full distribution.
    """
    reference = label_distribution(full, label)
    results = []
    for prof in splits:
        dist = label_distribution(prof, label)
        results.append(SplitResult(prof.source, dist, distribution_distance(reference, dist)))
    verdict = "stratified" if all(r.tv_distance_to_full <= threshold for r in results) else "skewed"
    return SplitAudit(label, reference, tuple(results), verdict, threshold)


def format_audit(audit: SplitAudit) -> str:
    lines = [
        f"  {r.source or '<split>'}: distance {r.tv_distance_to_full:.4f}" for r in audit.splits
    ]
    lines.append(f"split audit: {audit.verdict} (label {audit.label}, threshold {audit.threshold:g})")
    return "\n".join(lines)
