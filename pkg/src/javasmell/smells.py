"""Rule engine for the ten design smells.

Every threshold is configurable through a plain ``key = value`` file; unknown
keys are rejected so typos cannot silently disable a rule. Evidence on each
finding records the metric values that fired the rule. Detectors are pure
readers of the model/metrics, and ``detect_all`` sorts canonically so output
is byte-stable across runs and file orderings.

Rule summary (defaults in parentheses):

* UnutilizedAbstraction: project type with zero incoming dependency edges,
  no main-style method, not allowlisted.
* InsufficientModularization: loc >= 1000, or methods >= 30, or wmc >= 100,
  or max method cc >= 20, or >= 2 top-level types in the file; each clause
  independently configurable.
* BrokenHierarchy: subtype overriding at least one inherited concrete method
  with an empty or throw-only body (rejected bequest).
* DeficientEncapsulation: any public non-constant field ("constant" means
  static final).
* CyclicDependentModularization: membership in a dependency-graph strongly
  connected component of size >= 2; one finding per member type.
* UnnecessaryAbstraction: class with fields but no methods, or an interface
  with no members at all.
* WideHierarchy: >= 10 direct internal subtypes.
* ImperativeAbstraction: class with exactly one method, that method public,
  and at most 2 fields.
* MultifacetedAbstraction: lcom >= 0.8 and methods >= 10 and fields >= 5.
* MissingHierarchy: an if/else-if ladder of >= 3 branches testing instanceof
  on one expression, or a switch of >= 3 cases whose selector's terminal name
  matches the tag pattern (default: contains "type" or "kind"). Weakest rule
  of the set; tune the pattern per codebase.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, fields as dc_fields
from enum import Enum

from .model import PseudoModel
from .parser import Node


class SmellKind(Enum):
    UNUTILIZED_ABSTRACTION = "UnutilizedAbstraction"
    INSUFFICIENT_MODULARIZATION = "InsufficientModularization"
    BROKEN_HIERARCHY = "BrokenHierarchy"
    DEFICIENT_ENCAPSULATION = "DeficientEncapsulation"
    CYCLIC_DEPENDENT_MODULARIZATION = "CyclicDependentModularization"
    UNNECESSARY_ABSTRACTION = "UnnecessaryAbstraction"
    WIDE_HIERARCHY = "WideHierarchy"
    IMPERATIVE_ABSTRACTION = "ImperativeAbstraction"
    MULTIFACETED_ABSTRACTION = "MultifacetedAbstraction"
    MISSING_HIERARCHY = "MissingHierarchy"


_KIND_ORDER = {kind: i for i, kind in enumerate(SmellKind)}
_KIND_BY_NAME = {kind.value: kind for kind in SmellKind}


def kind_from_name(name: str) -> SmellKind:
    try:
        return _KIND_BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown smell kind {name!r}") from None


@dataclass
class SmellFinding:
    kind: SmellKind
    subject: str  # qualified type name
    file: str
    line: int
    evidence: dict  # str -> str, non-empty
    cycle_members: tuple = ()

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.subject, self.file, self.line)


class ConfigError(Exception):
    pass


@dataclass
class RuleConfig:
    entry_points: tuple = ()
    im_min_loc: int = 1000
    im_min_methods: int = 30
    im_min_wmc: int = 100
    im_min_max_cc: int = 20
    im_min_types_in_file: int = 2
    wh_min_children: int = 10
    ma_min_lcom: float = 0.8
    ma_min_methods: int = 10
    ma_min_fields: int = 5
    ia_max_fields: int = 2
    mh_min_branches: int = 3
    mh_tag_pattern: str = "type|kind"

    _KEYS = {
        "unutilized_abstraction.entry_points": "entry_points",
        "insufficient_modularization.min_loc": "im_min_loc",
        "insufficient_modularization.min_methods": "im_min_methods",
        "insufficient_modularization.min_wmc": "im_min_wmc",
        "insufficient_modularization.min_max_cc": "im_min_max_cc",
        "insufficient_modularization.min_types_in_file": "im_min_types_in_file",
        "wide_hierarchy.min_children": "wh_min_children",
        "multifaceted_abstraction.min_lcom": "ma_min_lcom",
        "multifaceted_abstraction.min_methods": "ma_min_methods",
        "multifaceted_abstraction.min_fields": "ma_min_fields",
        "imperative_abstraction.max_fields": "ia_max_fields",
        "missing_hierarchy.min_branches": "mh_min_branches",
        "missing_hierarchy.tag_pattern": "mh_tag_pattern",
    }

    def __post_init__(self):
        self.validate()

    def validate(self):
        for f in dc_fields(self):
            if f.name.startswith("_"):
                continue
            value = getattr(self, f.name)
            if f.name == "entry_points":
                continue
            if f.name == "mh_tag_pattern":
                try:
                    re.compile(value, re.IGNORECASE)
                except re.error as err:
                    raise ConfigError(f"bad tag pattern {value!r}: {err}") from None
                continue
            if f.name == "ma_min_lcom":
                if not (0.0 < value <= 1.0):
                    raise ConfigError("multifaceted_abstraction.min_lcom must be in (0, 1]")
                continue
            if value <= 0:
                raise ConfigError(f"threshold {f.name} must be strictly positive")

    @classmethod
    def from_file(cls, path) -> "RuleConfig":
        values: dict = {}
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key = value")
                key, _, value = line.partition("=")
                key = key.strip()
                value = value.strip()
                attr = cls._KEYS.get(key)
                if attr is None:
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
                if attr == "entry_points":
                    values[attr] = tuple(
                        part.strip() for part in value.split(",") if part.strip()
                    )
                elif attr == "mh_tag_pattern":
                    values[attr] = value
                elif attr == "ma_min_lcom":
                    values[attr] = float(value)
                else:
                    try:
                        values[attr] = int(value)
                    except ValueError:
                        raise ConfigError(
                            f"{path}:{lineno}: {key} expects an integer"
                        ) from None
        return cls(**values)

    def echo_lines(self) -> list[str]:
        """Effective configuration in canonical key order."""
        lines = []
        for key in sorted(self._KEYS):
            value = getattr(self, self._KEYS[key])
            if key == "unutilized_abstraction.entry_points":
                value = ",".join(value)
            lines.append(f"{key} = {value}")
        return lines

    def digest(self) -> str:
        return hashlib.sha256("\n".join(self.echo_lines()).encode("utf-8")).hexdigest()[:12]


# ----------------------------------------------------------------------
# helpers


def _is_main_style(method) -> bool:
    return (
        method.name == "main"
        and not method.is_ctor
        and method.arity == 1
        and "static" in method.modifiers
        and "public" in method.modifiers
    )


def _finding(kind, info, evidence, line=None, cycle=()):
    return SmellFinding(
        kind=kind,
        subject=info.qname,
        file=info.file,
        line=line if line is not None else info.line,
        evidence=evidence,
        cycle_members=tuple(cycle),
    )


def strongly_connected_components(adjacency: dict) -> list[list]:
    """Iterative Tarjan over an adjacency mapping node -> iterable of nodes."""
    index: dict = {}
    lowlink: dict = {}
    on_stack: set = set()
    stack: list = []
    counter = [0]
    sccs: list[list] = []

    for root in sorted(adjacency):
        if root in index:
            continue
        work = [(root, iter(sorted(adjacency.get(root, ()))))]
        index[root] = lowlink[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in adjacency:
                    continue
                if succ not in index:
                    index[succ] = lowlink[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(sorted(adjacency.get(succ, ())))))
                    advanced = True
                    break
                if succ in on_stack:
                    lowlink[node] = min(lowlink[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
            if lowlink[node] == index[node]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == node:
                        break
                sccs.append(sorted(component))
    return sccs


_EMPTYISH = frozenset({"Empty"})


def _body_statements(method_node: Node):
    body = next((c for c in method_node.children if c.kind == "Block"), None)
    if body is None:
        return None
    return [c for c in body.children if c.kind not in _EMPTYISH]


def _is_rejected_body(method_node: Node) -> bool:
    """Empty body, or a body whose only statement is a throw."""
    stmts = _body_statements(method_node)
    if stmts is None:
        return False
    if len(stmts) == 0:
        return True
    return len(stmts) == 1 and stmts[0].kind == "Throw"


# ----------------------------------------------------------------------
# detectors


def detect_unutilized_abstraction(model: PseudoModel, config: RuleConfig):
    allow = set(config.entry_points)
    findings = []
    for qname in sorted(model.types):
        info = model.types[qname]
        if qname in allow:
            continue
        if any(_is_main_style(m) for m in info.methods):
            continue
        if model.incoming_count(qname) == 0:
            findings.append(
                _finding(
                    SmellKind.UNUTILIZED_ABSTRACTION,
                    info,
                    {"incoming_edges": "0"},
                )
            )
    return findings


def detect_insufficient_modularization(model, type_metrics, config: RuleConfig):
    findings = []
    for qname in sorted(type_metrics):
        t = type_metrics[qname]
        fired = []
        if t.loc >= config.im_min_loc:
            fired.append("loc")
        if t.nom >= config.im_min_methods:
            fired.append("nom")
        if t.wmc >= config.im_min_wmc:
            fired.append("wmc")
        if t.max_cc >= config.im_min_max_cc:
            fired.append("max_cc")
        if t.types_in_file >= config.im_min_types_in_file:
            fired.append("types_in_file")
        if fired:
            evidence = {"fired": ",".join(fired)}
            for name in fired:
                evidence[name] = str(getattr(t, name))
            findings.append(
                _finding(SmellKind.INSUFFICIENT_MODULARIZATION, model.types[qname], evidence)
            )
    return findings


def detect_broken_hierarchy(model: PseudoModel, config: RuleConfig):
    findings = []
    for qname in sorted(model.types):
        info = model.types[qname]
        if info.supertype is None:
            continue
        rejected = []
        for m in info.methods:
            if m.is_ctor or not m.has_body or not _is_rejected_body(m.node):
                continue
            hit = model.find_ancestor_method(qname, m.name, m.arity)
            if hit is not None and hit[1].has_body:
                rejected.append(m.name)
        if rejected:
            findings.append(
                _finding(
                    SmellKind.BROKEN_HIERARCHY,
                    info,
                    {
                        "rejected_methods": ";".join(sorted(rejected)),
                        "supertype": info.supertype,
                    },
                )
            )
    return findings


def detect_deficient_encapsulation(model, type_metrics, config: RuleConfig):
    findings = []
    for qname in sorted(type_metrics):
        if type_metrics[qname].nopf_nonconst < 1:
            continue
        info = model.types[qname]
        offenders = sorted(
            f.name
            for f in info.fields
            if f.visibility == "public" and not f.is_constant
        )
        findings.append(
            _finding(
                SmellKind.DEFICIENT_ENCAPSULATION,
                info,
                {"fields": ";".join(offenders), "nopf_nonconst": str(len(offenders))},
            )
        )
    return findings


def detect_cyclic_modularization(model: PseudoModel, config: RuleConfig):
    graph = model.internal_dep_graph()
    for qname in model.types:
        graph.setdefault(qname, set())
    findings = []
    for component in strongly_connected_components(graph):
        if len(component) < 2:
            continue
        members = tuple(sorted(component))
        for qname in members:
            findings.append(
                _finding(
                    SmellKind.CYCLIC_DEPENDENT_MODULARIZATION,
                    model.types[qname],
                    {"scc_size": str(len(members))},
                    cycle=members,
                )
            )
    return findings


def detect_unnecessary_abstraction(model, type_metrics, config: RuleConfig):
    findings = []
    for qname in sorted(type_metrics):
        t = type_metrics[qname]
        info = model.types[qname]
        if info.kind == "interface":
            members = t.nom + t.nof + len(info.nested)
            if members == 0:
                findings.append(
                    _finding(
                        SmellKind.UNNECESSARY_ABSTRACTION, info, {"members": "0"}
                    )
                )
        elif t.nom == 0 and t.nof >= 1:
            findings.append(
                _finding(
                    SmellKind.UNNECESSARY_ABSTRACTION,
                    info,
                    {"nom": "0", "nof": str(t.nof)},
                )
            )
    return findings


def detect_wide_hierarchy(model, type_metrics, config: RuleConfig):
    findings = []
    for qname in sorted(type_metrics):
        nc = type_metrics[qname].nc
        if nc >= config.wh_min_children:
            findings.append(
                _finding(SmellKind.WIDE_HIERARCHY, model.types[qname], {"nc": str(nc)})
            )
    return findings


def detect_imperative_abstraction(model, type_metrics, config: RuleConfig):
    findings = []
    for qname in sorted(type_metrics):
        info = model.types[qname]
        if info.kind != "class":
            continue
        t = type_metrics[qname]
        if t.nom != 1 or t.nof > config.ia_max_fields:
            continue
        the_method = next(m for m in info.methods if not m.is_ctor)
        if the_method.visibility != "public":
            continue
        findings.append(
            _finding(
                SmellKind.IMPERATIVE_ABSTRACTION,
                info,
                {"method": the_method.name, "nom": "1", "nof": str(t.nof)},
            )
        )
    return findings


def detect_multifaceted_abstraction(model, type_metrics, config: RuleConfig):
    findings = []
    for qname in sorted(type_metrics):
        t = type_metrics[qname]
        if t.lcom is None:
            continue
        if (
            t.lcom >= config.ma_min_lcom
            and t.nom >= config.ma_min_methods
            and t.nof >= config.ma_min_fields
        ):
            findings.append(
                _finding(
                    SmellKind.MULTIFACETED_ABSTRACTION,
                    model.types[qname],
                    {"lcom": f"{t.lcom:.6g}", "nom": str(t.nom), "nof": str(t.nof)},
                )
            )
    return findings


def _unwrap_paren(node: Node) -> Node:
    while node.kind == "Paren" and node.children:
        node = node.children[0]
    return node


def _ladder_conditions(if_node: Node):
    """Conditions of a maximal if/else-if chain starting at *if_node*."""
    conds = []
    cur = if_node
    while True:
        conds.append(cur.children[0])
        if cur.attrs.get("has_else") and len(cur.children) == 3:
            tail = cur.children[2]
            if tail.kind == "If":
                cur = tail
                continue
        return conds


def detect_missing_hierarchy(model: PseudoModel, config: RuleConfig):
    tag_re = re.compile(config.mh_tag_pattern, re.IGNORECASE)
    findings = []
    for qname in sorted(model.types):
        info = model.types[qname]
        for m in info.methods:
            if not m.has_body:
                continue
            chained: set = set()
            for node in m.node.walk():
                if node.kind == "Switch":
                    cases = node.attrs.get("case_count", 0)
                    terminal = node.attrs.get("terminal_name", "")
                    if cases >= config.mh_min_branches and terminal and tag_re.search(terminal):
                        findings.append(
                            _finding(
                                SmellKind.MISSING_HIERARCHY,
                                info,
                                {
                                    "method": m.name,
                                    "cases": str(cases),
                                    "selector": node.attrs.get("selector_text", ""),
                                    "pattern": "switch",
                                },
                                line=node.line,
                            )
                        )
                    continue
                if node.kind != "If" or id(node) in chained:
                    continue
                conds = [_unwrap_paren(c) for c in _ladder_conditions(node)]
                # Mark the whole chain visited so inner links are not
                # re-counted as fresh ladders.
                cur = node
                while True:
                    chained.add(id(cur))
                    if cur.attrs.get("has_else") and len(cur.children) == 3 and cur.children[2].kind == "If":
                        cur = cur.children[2]
                        continue
                    break
                if len(conds) < config.mh_min_branches:
                    continue
                if not all(c.kind == "InstanceOf" for c in conds):
                    continue
                operands = {c.attrs.get("operand_text", "?") for c in conds}
                if len(operands) != 1:
                    continue
                findings.append(
                    _finding(
                        SmellKind.MISSING_HIERARCHY,
                        info,
                        {
                            "method": m.name,
                            "branches": str(len(conds)),
                            "operand": operands.pop(),
                            "pattern": "instanceof",
                        },
                        line=node.line,
                    )
                )
    return findings


def detect_all(model: PseudoModel, type_metrics: dict, config: RuleConfig | None = None):
    """Run every rule and return findings in canonical order."""
    config = config or RuleConfig()
    findings = []
    findings += detect_unutilized_abstraction(model, config)
    findings += detect_insufficient_modularization(model, type_metrics, config)
    findings += detect_broken_hierarchy(model, config)
    findings += detect_deficient_encapsulation(model, type_metrics, config)
    findings += detect_cyclic_modularization(model, config)
    findings += detect_unnecessary_abstraction(model, type_metrics, config)
    findings += detect_wide_hierarchy(model, type_metrics, config)
    findings += detect_imperative_abstraction(model, type_metrics, config)
    findings += detect_multifaceted_abstraction(model, type_metrics, config)
    findings += detect_missing_hierarchy(model, config)
    findings.sort(key=SmellFinding.sort_key)
    return findings
