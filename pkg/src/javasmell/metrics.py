"""Per-method, per-type, and project-level design metrics.

Cyclomatic complexity is decision-point counting: 1 + if + for + enhanced-for
+ while + do + case label + catch clause + conditional operator + '&&' + '||'.
Lambda bodies are opaque and contribute nothing. DIT follows the resolved
project-internal extends chain only; NC is the number of direct internal
subtypes, so summing NC over all types equals the number of types that have
an internal supertype. LCOM is 1 minus the mean fraction of methods touching
each own field, computed as (nom*nof - accesses) / (nom*nof) so that exact
threshold boundaries like 0.8 compare cleanly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .model import PseudoModel, TypeInfo
from .parser import Node

_DECISION_KINDS = frozenset(
    {"If", "While", "DoWhile", "For", "ForEach", "Case", "Catch", "Ternary"}
)

CC_BUCKETS = ((1, 19), (20, 39), (40, None))  # sustainable / complex / unmaintainable
DIT_BUCKETS = ((0, 6), (7, None))


@dataclass
class MethodMetrics:
    qualified_name: str
    cc: int | None  # None when there is no parsed body
    loc: int
    visibility: str
    is_override: bool


@dataclass
class TypeMetrics:
    qualified_name: str
    loc: int
    nof: int
    nopf: int
    nopf_nonconst: int
    nom: int
    nopm: int
    nc: int
    dit: int
    wmc: int
    max_cc: int
    lcom: float | None
    types_in_file: int


@dataclass
class ProjectMetrics:
    total_types: int
    total_fields: int
    total_methods: int
    total_loc: int
    pct_child_classes: float | None
    pct_public_fields: float | None
    pct_public_methods: float | None
    cc_histogram: tuple  # counts for CC_BUCKETS
    dit_histogram: tuple  # counts for DIT_BUCKETS


class InheritanceCycle(Exception):
    pass


def cyclomatic_complexity(method_node: Node) -> int | None:
    """Decision-point count for a method with a parsed body, else None."""
    if not method_node.attrs.get("has_body"):
        return None
    body = next((c for c in method_node.children if c.kind == "Block"), None)
    if body is None:
        return None
    count = 1
    stack = [body]
    while stack:
        n = stack.pop()
        if n.kind == "Lambda":
            continue
        if n.kind in _DECISION_KINDS:
            count += 1
        elif n.kind == "Binary" and n.attrs.get("op") in ("&&", "||"):
            count += 1
        stack.extend(n.children)
    return count


def dit(model: PseudoModel, qname: str) -> int:
    """Length of the resolved internal extends chain; cycles yield the
    acyclic prefix (plus a diagnostic left to the model builder)."""
    depth = 0
    seen = {qname}
    cur = model.types[qname].supertype
    while cur is not None:
        if cur in seen:
            break
        seen.add(cur)
        depth += 1
        cur = model.types[cur].supertype
    return depth


def _shadowed_names(method_node: Node) -> set[str]:
    names: set[str] = set()
    for _, pname in method_node.attrs.get("params", ()):
        names.add(pname)
    for n in method_node.walk():
        if n.kind == "LocalVar":
            names.update(n.attrs.get("names", ()))
        elif n.kind == "ForEach":
            names.add(n.attrs["var_name"])
        elif n.kind == "Catch":
            names.add(n.attrs["name"])
    return names


def _accessed_fields(method_node: Node, field_names: set[str]) -> set[str]:
    """Own fields read or written in the body; bare names lose to shadowing
    locals/params, ``this.f`` always counts."""
    shadowed = _shadowed_names(method_node)
    hit: set[str] = set()
    body = next((c for c in method_node.children if c.kind == "Block"), None)
    if body is None:
        return hit
    for n in body.walk():
        if n.kind == "Name":
            ident = n.attrs["id"]
            if ident in field_names and ident not in shadowed:
                hit.add(ident)
        elif n.kind == "FieldAccess" and n.children and n.children[0].kind == "This":
            if n.attrs["name"] in field_names:
                hit.add(n.attrs["name"])
    return hit


def lcom(model: PseudoModel, info: TypeInfo) -> float | None:
    methods = [m for m in info.methods if not m.is_ctor and m.has_body]
    field_names = {f.name for f in info.fields}
    nom = len(methods)
    nof = len(field_names)
    if nom == 0 or nof == 0:
        return None
    accesses = sum(len(_accessed_fields(m.node, field_names)) for m in methods)
    denom = nom * nof
    return (denom - accesses) / denom


def is_override(model: PseudoModel, qname: str, method) -> bool:
    if method.is_ctor:
        return False
    return model.find_ancestor_method(qname, method.name, method.arity) is not None


def _span_loc(model: PseudoModel, file: str, start_line: int, end_line: int) -> int:
    code = model.file_code_lines.get(file, set())
    return sum(1 for ln in code if start_line <= ln <= end_line)


def compute_method_metrics(model: PseudoModel) -> list[MethodMetrics]:
    out: list[MethodMetrics] = []
    for qname in sorted(model.types):
        info = model.types[qname]
        for m in info.methods:
            if m.is_ctor:
                continue
            out.append(
                MethodMetrics(
                    qualified_name=f"{qname}.{m.name}({','.join(m.param_types)})",
                    cc=cyclomatic_complexity(m.node),
                    loc=_span_loc(model, info.file, m.node.line, m.node.end_line),
                    visibility=m.visibility,
                    is_override=is_override(model, qname, m),
                )
            )
    return out


def compute_type_metrics(model: PseudoModel) -> dict:
    out: dict = {}
    for qname in sorted(model.types):
        info = model.types[qname]
        methods = [m for m in info.methods if not m.is_ctor]
        ccs = [cyclomatic_complexity(m.node) for m in methods]
        ccs = [c for c in ccs if c is not None]
        nof = len(info.fields)
        nopf = sum(1 for f in info.fields if f.visibility == "public")
        nopf_nonconst = sum(
            1 for f in info.fields if f.visibility == "public" and not f.is_constant
        )
        out[qname] = TypeMetrics(
            qualified_name=qname,
            loc=_span_loc(model, info.file, info.line, info.end_line),
            nof=nof,
            nopf=nopf,
            nopf_nonconst=nopf_nonconst,
            nom=len(methods),
            nopm=sum(1 for m in methods if m.visibility == "public"),
            nc=len(model.subtypes.get(qname, ())),
            dit=dit(model, qname),
            wmc=sum(ccs),
            max_cc=max(ccs, default=0),
            lcom=lcom(model, info),
            types_in_file=model.file_top_level.get(info.file, 0),
        )
    return out


def _bucket_index(value: int, buckets) -> int | None:
    for i, (lo, hi) in enumerate(buckets):
        if value >= lo and (hi is None or value <= hi):
            return i
    return None


def project_metrics(model: PseudoModel, type_metrics: dict | None = None) -> ProjectMetrics:
    tm = type_metrics if type_metrics is not None else compute_type_metrics(model)
    total_types = len(model.types)
    total_fields = sum(t.nof for t in tm.values())
    total_methods = sum(t.nom for t in tm.values())
    total_loc = sum(stats.code for stats in model.file_stats.values())

    children = sum(1 for q in model.types if model.types[q].supertype is not None)
    total_public_fields = sum(t.nopf for t in tm.values())
    total_public_methods = sum(t.nopm for t in tm.values())

    def pct(num, den):
        return 100.0 * num / den if den else None

    cc_hist = [0] * len(CC_BUCKETS)
    for qname in model.types:
        for m in model.types[qname].methods:
            if m.is_ctor:
                continue
            cc = cyclomatic_complexity(m.node)
            if cc is None:
                continue
            idx = _bucket_index(cc, CC_BUCKETS)
            if idx is not None:
                cc_hist[idx] += 1
    dit_hist = [0] * len(DIT_BUCKETS)
    for t in tm.values():
        idx = _bucket_index(t.dit, DIT_BUCKETS)
        if idx is not None:
            dit_hist[idx] += 1

    return ProjectMetrics(
        total_types=total_types,
        total_fields=total_fields,
        total_methods=total_methods,
        total_loc=total_loc,
        pct_child_classes=pct(children, total_types),
        pct_public_fields=pct(total_public_fields, total_fields),
        pct_public_methods=pct(total_public_methods, total_methods),
        cc_histogram=tuple(cc_hist),
        dit_histogram=tuple(dit_hist),
    )


# Fixed column order for metrics.csv.
CSV_COLUMNS = (
    "qualified_name",
    "loc",
    "nof",
    "nopf",
    "nopf_nonconst",
    "nom",
    "nopm",
    "nc",
    "dit",
    "wmc",
    "max_cc",
    "lcom",
    "types_in_file",
)


def write_metrics_csv(type_metrics: dict, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for qname in sorted(type_metrics):
            t = type_metrics[qname]
            row = []
            for col in CSV_COLUMNS:
                value = getattr(t, col)
                if value is None:
                    row.append("")
                elif isinstance(value, float):
                    row.append(f"{value:.6g}")
                else:
                    row.append(str(value))
            writer.writerow(row)
