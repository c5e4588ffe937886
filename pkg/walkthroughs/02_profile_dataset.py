"""
Profiling a data set
====================

Column statistics feed both the advisor and the data-aware checks.
"""
from pathlib import Path

from mlguard.apispec import load_bundled_specs, merge_specs
from mlguard.profiler import advise, audit_split, format_audit, parse_schema, profile_csv

DATA = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

schema = parse_schema((DATA / "data" / "passengers.schema").read_text())
profile = profile_csv(DATA / "data" / "passengers.csv", schema, label="survived")

# missing counts, entropy in bits and the guessed normalisation per column
for col in profile.columns:
    print(f"{col.name:10} {col.inferred_kind:12} missing={col.missing_count:<3} entropy={col.entropy_bits:.3f}")

# the advisor combines the profile, the schema and the specs
spec = merge_specs(load_bundled_specs())
for suggestion in advise("classification", profile, schema, spec):
    print(suggestion)

# a split is stratified when each part keeps the label proportions of the whole
for case in ("stratified", "skewed"):
    folder = DATA / "audit" / case
    full = profile_csv(folder / "full.csv", label="survived")
    parts = [profile_csv(folder / f"{p}.csv", label="survived") for p in ("train", "val", "test")]
    print(format_audit(audit_split(full, parts, "survived")))
