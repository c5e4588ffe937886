"""
Generating code from a checked pipeline
=======================================

Code is only generated for a program without errors. A manifest records
digests of every input so a run can be traced back to them.
"""
from pathlib import Path

from mlguard.apispec import load_bundled_specs, merge_specs
from mlguard.checker import check_source
from mlguard.codegen import RefusalError, emit_run_manifest, format_manifest, generate, load_reference_backend

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

specs = load_bundled_specs()
spec = merge_specs(specs)
backend = load_reference_backend()

source = (FIXTURES / "titanic.mlp").read_text()
report = check_source(source, spec, file="titanic.mlp")

# the report carries the resolved program that the templates are filled from
code = generate(report.program, report, backend)
print("\n".join(code.splitlines()[:24]))
compile(code, "titanic.py", "exec")

# a fixed timestamp makes the manifest reproducible
manifest = emit_run_manifest(report.program, source.encode(), specs, backend, timestamp="2024-01-01T00:00:00Z")
print(format_manifest(manifest))

# a ratio outside (0, 1) is an error, so generation is refused
bad = source.replace("(0.7, 0.15, 0.15)", "(1.5, 0.15, 0.15)")
bad_report = check_source(bad, spec, file="bad.mlp")
try:
    generate(bad_report.program, bad_report, backend)
except RefusalError as exc:
    print(exc)
