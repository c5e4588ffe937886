"""
Checking a pipeline before it runs
==================================

A pipeline is checked against API specs that describe which parameters a
model takes, which values they accept and which calls must come first.
"""
from pathlib import Path

from mlguard.apispec import load_bundled_specs, merge_specs
from mlguard.checker import check_source
from mlguard.diagnostics import lookup, render_human

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# the bundled specs cover SVC, a handful of transforms and two metrics
spec = merge_specs(load_bundled_specs())
print(sorted(spec.entities))

# a clean program produces an empty report
source = (FIXTURES / "titanic.mlp").read_text()
report = check_source(source, spec, file="titanic.mlp")
print(report.error_count, report.warning_count)

# misspell the kernel: the checker names the allowed values and proposes a fix
typo = source.replace('kernel="poly"', 'kernel="ploy"')
for diag in check_source(typo, spec, file="typo.mlp").diagnostics:
    print(render_human(diag))

# predicting before fitting breaks an ordering rule of the model
swapped = source.replace(
    '  fit model on train label "survived"\n  preds = call model.predict_proba val\n',
    '  preds = call model.predict_proba val\n  fit model on train label "survived"\n',
)
report = check_source(swapped, spec, file="swapped.mlp")
for diag in report.diagnostics:
    print(render_human(diag))

# every code has a longer explanation
print(lookup(report.codes[0]).summary)
