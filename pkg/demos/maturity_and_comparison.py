"""Classify repositories as developing or established and compare stacks.

The maturity rule works from plain metadata (commit count, contributor
count, releases, recency). Once several projects are analyzed, their reports
aggregate into one comparison table per stack.

Run from the repository root:

    python demos/maturity_and_comparison.py
"""

import datetime as dt

from javasmell.repometa import RepoMetadata, classify
from javasmell.report import build_report, comparison, format_pct
from javasmell.repometa import Maturity, MaturityClass
from javasmell.smells import SmellFinding, SmellKind

analysis_day = dt.date(2024, 6, 1)

# A young, small project: few commits, few contributors, recent activity.
young = RepoMetadata(
    commits=412, contributors=10, releases=1,
    last_commit_date=dt.date(2024, 5, 1), analysis_date=analysis_day,
)
# A long-lived one: thousands of commits, a large contributor base.
veteran = RepoMetadata(
    commits=5531, contributors=240, releases=25,
    last_commit_date=dt.date(2024, 5, 20), analysis_date=analysis_day,
)
# And a gap case the two criteria sets do not cover.
odd = RepoMetadata(
    commits=2500, contributors=10, releases=1,
    last_commit_date=dt.date(2024, 5, 20), analysis_date=analysis_day,
)

for name, meta in [("young", young), ("veteran", veteran), ("odd", odd)]:
    verdict = classify(meta)
    print(f"{name}: {verdict.label.value}")
    for line in verdict.rationale:
        print(f"    {line}")
print()


# Build two tiny synthetic reports and aggregate them by stack. In real use
# these come from `javasmell analyze` via report.json files.
def fake_report(name, label, counts):
    findings = [
        SmellFinding(kind, f"{name}.T{i}", "T.java", i + 1, {"n": "1"})
        for kind, n in counts.items()
        for i in range(n)
    ]
    maturity = MaturityClass(label, [])
    return build_report(name, findings, maturity=maturity)


dev = fake_report(
    "young", Maturity.DEVELOPING,
    {SmellKind.DEFICIENT_ENCAPSULATION: 9, SmellKind.BROKEN_HIERARCHY: 5},
)
est = fake_report(
    "veteran", Maturity.ESTABLISHED,
    {SmellKind.CYCLIC_DEPENDENT_MODULARIZATION: 12, SmellKind.UNNECESSARY_ABSTRACTION: 4},
)

comp = comparison([dev, est])
print("stack totals:")
for label, totals in comp.totals.items():
    nonzero = {k.value: v for k, v in totals.items() if v}
    print(f"  {label}: {nonzero}")
print()
print("developing mean percentages:")
for kind, mean in comp.mean_pct["Developing"].items():
    if mean:
        print(f"  {kind.value}: {format_pct(mean)}%")
