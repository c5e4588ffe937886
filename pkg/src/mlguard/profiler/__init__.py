"""Dataset profiling, split auditing and the data-aware advisor."""
from mlguard.profiler.advise import Suggestion, advise
from mlguard.profiler.audit import (
    DEFAULT_THRESHOLD,
    SplitAudit,
    SplitResult,
    audit_split,
    format_audit,
    label_distribution,
)
from mlguard.profiler.profile import (
    ColumnProfile,
    DataProfile,
    ProfileError,
    format_profile,
    load_profile,
    parse_profile,
    profile_csv,
    profile_table,
)
from mlguard.profiler.schema import ColumnMeta, SchemaError, SchemaMeta, format_schema, parse_schema
from mlguard.profiler.stats import detect_normalization, distribution_distance, entropy

__all__ = [
    "DEFAULT_THRESHOLD", "label_distribution",
    "ColumnMeta", "ColumnProfile", "DataProfile", "ProfileError", "SchemaError", "SchemaMeta",
    "SplitAudit", "SplitResult", "Suggestion", "advise", "audit_split", "detect_normalization",
    "distribution_distance", "entropy", "format_audit", "format_profile", "format_schema",
    "load_profile", "parse_profile", "parse_schema", "profile_csv", "profile_table",
]
