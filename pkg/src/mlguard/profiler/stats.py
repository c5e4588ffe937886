from __future__ import annotations

import math
from collections.abc import Mapping

NORMALIZATION_TOLERANCE = 0.1
DISTRIBUTION_TOLERANCE = 1e-9


def entropy(counts) -> float:
    """Shannon entropy in bits of the distribution given by ``counts``."""
    counts = list(counts)
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    total = sum(counts)
    if total <= 0:
        raise ValueError("entropy needs at least one positive count")
    h = -math.fsum((c / total) * math.log2(c / total) for c in counts if c > 0)
    return max(h, 0.0)


def normalize(counts: Mapping[str, int]) -> dict[str, float]:
    total = sum(counts.values())
    if total <= 0:
        raise ValueError("cannot normalize an empty distribution")
    return {k: v / total for k, v in counts.items()}


def distribution_distance(p: Mapping[str, float], q: Mapping[str, float]) -> float:
    """Total variation distance; categories missing from one side count as 0."""
    for name, dist in (("p", p), ("q", q)):
        if any(v < 0 for v in dist.values()):
            raise ValueError(f"{name} has a negative probability")
        if abs(math.fsum(dist.values()) - 1.0) > DISTRIBUTION_TOLERANCE:
            raise ValueError(f"{name} does not sum to 1")
    keys = set(p) | set(q)
    d = 0.5 * math.fsum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)
    return min(max(d, 0.0), 1.0)


def detect_normalization(col) -> str:
    """Classify a numeric column profile as ``unit_range``, ``zscore`` or ``none``."""
    if col.inferred_kind != "numeric":
        raise ValueError(f"column {col.name} is not numeric")
    if col.row_count - col.missing_count < 2:
        raise ValueError(f"column {col.name} needs at least two values")
    if col.min >= 0 and col.max <= 1:
        return "unit_range"
    if abs(col.mean) <= NORMALIZATION_TOLERANCE and abs(col.std - 1) <= NORMALIZATION_TOLERANCE:
        return "zscore"
    return "none"
