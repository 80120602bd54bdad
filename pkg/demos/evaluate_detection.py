"""Score detector output against manually reviewed ground truth.

The fixture corpus ships with a verdict file marking every finding as a true
positive, so precision and recall both come out at 100%. Flipping one
verdict to a false positive and annotating one miss shows how the numbers
respond.

Run from the repository root:

    python demos/evaluate_detection.py
"""

from pathlib import Path

from javasmell.evaluation import evaluate, load_ground_truth
from javasmell.pipeline import analyze_tree
from javasmell.report import evaluation_lines
from javasmell.smells import SmellKind

fixtures = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

result = analyze_tree(fixtures / "corpus")
truth = load_ground_truth(fixtures / "corpus_truth.tsv")

print("clean ground truth:")
for line in evaluation_lines(evaluate(result.findings, truth)):
    print(f"  {line}")
print()

# Reviewers disagree with one WideHierarchy finding and report one
# BrokenHierarchy occurrence the detector did not see.
truth.entries[("sample.Shape", SmellKind.WIDE_HIERARCHY)] = "fp"
truth.missed.add(("sample.HiddenCase", SmellKind.BROKEN_HIERARCHY))

print("after review adjustments:")
for line in evaluation_lines(evaluate(result.findings, truth)):
    print(f"  {line}")
