"""Project model built by merging per-file syntax trees.

Three views are kept: the declared elements themselves with their syntax
nodes (types, fields, methods), flat descriptors for every element, and the
package/type index used for name resolution. On top of those sit the
single-parent inheritance forest (class ``extends`` only) and the
type-dependency graph, every edge of which carries a source witness.

Name resolution precedence: types declared in the same file, then same
package, then single-type imports, then on-demand imports (two matching
on-demand imports are ambiguous and resolve external), then external.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .lexer import LineStats, SourceFile, Token, code_line_numbers, line_stats
from .parser import NON_REF_TYPES, Node


class External(NamedTuple):
    """Unresolved type reference; one bucket per distinct raw name."""

    name: str


@dataclass
class ModelDiagnostic:
    code: str  # duplicate-type | extends-cycle | ambiguous-import
    message: str
    file: str
    line: int

    def __str__(self):
        return f"{self.file}:{self.line}: {self.code}: {self.message}"


@dataclass
class FieldInfo:
    name: str
    type_text: str
    modifiers: frozenset
    visibility: str
    line: int
    is_constant: bool


@dataclass
class MethodInfo:
    name: str
    arity: int
    param_types: tuple
    return_type: str | None
    modifiers: frozenset
    visibility: str
    is_ctor: bool
    has_body: bool
    line: int
    node: Node


@dataclass
class TypeInfo:
    qname: str
    simple_name: str
    package: str
    kind: str  # class | interface | enum
    modifiers: frozenset
    file: str
    line: int
    end_line: int
    outer: str | None
    supertype_raw: str | None
    interface_raws: list[str]
    fields: list[FieldInfo] = field(default_factory=list)
    methods: list[MethodInfo] = field(default_factory=list)
    enum_constants: list[str] = field(default_factory=list)
    nested: list[str] = field(default_factory=list)
    node: Node | None = None
    supertype: str | None = None  # resolved, project-internal only


@dataclass
class ElementDescriptor:
    qname: str
    kind: str  # type | field | method | constructor
    modifiers: frozenset
    signature: str
    file: str


@dataclass
class ParsedFile:
    source: SourceFile
    tokens: list[Token]
    unit: Node
    stats: LineStats
    code_lines: set[int]


@dataclass
class _FileScope:
    package: str
    simple_names: dict  # simple name -> qname, first declaration wins
    single_imports: dict  # simple name -> full dotted target
    on_demand: list  # package prefixes


@dataclass
class PseudoModel:
    types: dict = field(default_factory=dict)  # qname -> TypeInfo
    packages: dict = field(default_factory=dict)  # package -> [qname]
    elements: list = field(default_factory=list)  # ElementDescriptor
    deps: dict = field(default_factory=dict)  # qname -> set[str | External]
    dep_witness: dict = field(default_factory=dict)  # (src, target) -> (file, line)
    subtypes: dict = field(default_factory=dict)  # qname -> [qname]
    incoming: dict = field(default_factory=dict)  # qname -> set of sources
    file_top_level: dict = field(default_factory=dict)  # file -> count
    file_code_lines: dict = field(default_factory=dict)  # file -> set[int]
    file_stats: dict = field(default_factory=dict)  # file -> LineStats
    diagnostics: list = field(default_factory=list)
    _scopes: dict = field(default_factory=dict)  # file -> _FileScope

    # --------------------------------------------------------------
    def internal_dep_graph(self) -> dict:
        """Adjacency restricted to project types (externals dropped)."""
        return {
            q: {t for t in targets if isinstance(t, str)}
            for q, targets in self.deps.items()
        }

    def incoming_count(self, qname: str) -> int:
        return len(self.incoming.get(qname, ()))

    def ancestors(self, qname: str):
        """Resolved supertype chain, cycle-safe."""
        seen = {qname}
        cur = self.types[qname].supertype
        while cur is not None and cur not in seen:
            seen.add(cur)
            yield self.types[cur]
            cur = self.types[cur].supertype

    def find_ancestor_method(self, qname: str, name: str, arity: int):
        """First non-private ancestor method matching name and arity."""
        for anc in self.ancestors(qname):
            for m in anc.methods:
                if (
                    not m.is_ctor
                    and m.name == name
                    and m.arity == arity
                    and m.visibility != "private"
                ):
                    return anc, m
        return None

    def resolve(self, raw: str, file: str):
        """Resolve a written type name to a project qname or External."""
        if not raw or raw in NON_REF_TYPES:
            return External(raw)
        if raw in self.types:
            return raw
        head, _, rest = raw.partition(".")
        scope = self._scopes.get(file)
        q = None
        if scope is not None:
            q = scope.simple_names.get(head)
            if q is None:
                q = self._package_lookup(scope.package, head)
            if q is None:
                target = scope.single_imports.get(head)
                if target is not None:
                    if target in self.types:
                        q = target
                    else:
                        return External(target + ("." + rest if rest else ""))
            if q is None and scope.on_demand:
                candidates = sorted(
                    {
                        pkg + "." + head
                        for pkg in scope.on_demand
                        if pkg + "." + head in self.types
                    }
                )
                if len(candidates) == 1:
                    q = candidates[0]
                elif len(candidates) > 1:
                    self.diagnostics.append(
                        ModelDiagnostic(
                            "ambiguous-import",
                            f"'{head}' matches {', '.join(candidates)}",
                            file,
                            0,
                        )
                    )
                    return External(raw)
        if q is None:
            return External(raw)
        if rest:
            for seg in rest.split("."):
                nxt = q + "." + seg
                if nxt not in self.types:
                    return External(raw)
                q = nxt
        return q

    def _package_lookup(self, package: str, simple: str):
        for q in self.packages.get(package, ()):
            info = self.types[q]
            if info.outer is None and info.simple_name == simple:
                return q
        return None


# ----------------------------------------------------------------------
# construction

_IMPLICIT_PUBLIC_OWNERS = {"interface"}


def _visibility(modifiers: frozenset, owner_kind: str, is_ctor: bool = False) -> str:
    if "public" in modifiers:
        return "public"
    if "protected" in modifiers:
        return "protected"
    if "private" in modifiers:
        return "private"
    if owner_kind in _IMPLICIT_PUBLIC_OWNERS:
        return "public"
    if owner_kind == "enum" and is_ctor:
        return "private"
    return "package"


def _collect_types(unit: Node, package: str, file: str, out: list):
    """Every type declaration in the unit, local classes included; a local
    class is treated as nested in its enclosing type."""

    def visit(node: Node, outer_qname: str | None):
        for child in node.children:
            if child.kind == "TypeDecl":
                simple = child.attrs["name"]
                if outer_qname:
                    qname = f"{outer_qname}.{simple}"
                elif package:
                    qname = f"{package}.{simple}"
                else:
                    qname = simple
                out.append((qname, simple, outer_qname, child))
                visit(child, qname)
            else:
                visit(child, outer_qname)

    visit(unit, None)


def _member_nodes(type_node: Node):
    for child in type_node.children:
        if child.kind in ("FieldDecl", "MethodDecl", "ConstructorDecl", "EnumConstant"):
            yield child


def build_model(parsed: Iterable[ParsedFile]) -> PseudoModel:
    """Merge parsed files into a pseudo-model; order-independent."""
    model = PseudoModel()
    files = sorted(parsed, key=lambda pf: pf.source.path)

    # Pass 1: declarations, per-file scopes, duplicate handling.
    for pf in files:
        path = pf.source.path
        package = pf.unit.attrs.get("package") or ""
        model.file_code_lines[path] = pf.code_lines
        model.file_stats[path] = pf.stats
        declared: list = []
        _collect_types(pf.unit, package, path, declared)
        model.file_top_level[path] = sum(1 for _, _, outer, _ in declared if outer is None)

        scope = _FileScope(package, {}, {}, [])
        for imp in pf.unit.attrs.get("imports", ()):
            if imp.get("static"):
                continue
            if imp["on_demand"]:
                scope.on_demand.append(imp["name"])
            else:
                simple = imp["name"].rpartition(".")[2]
                scope.single_imports.setdefault(simple, imp["name"])
        model._scopes[path] = scope

        for qname, simple, outer, node in declared:
            if qname in model.types:
                other = model.types[qname]
                model.diagnostics.append(
                    ModelDiagnostic(
                        "duplicate-type",
                        f"'{qname}' already declared in {other.file}",
                        path,
                        node.line,
                    )
                )
                continue
            kind = node.attrs["type_kind"]
            info = TypeInfo(
                qname=qname,
                simple_name=simple,
                package=package,
                kind=kind,
                modifiers=node.attrs["modifiers"],
                file=path,
                line=node.line,
                end_line=node.end_line,
                outer=outer,
                supertype_raw=node.attrs.get("supertype"),
                interface_raws=list(node.attrs.get("interfaces", ())),
                node=node,
            )
            for member in _member_nodes(node):
                if member.kind == "FieldDecl":
                    mods = member.attrs["modifiers"]
                    constant = ("static" in mods and "final" in mods) or kind == "interface"
                    info.fields.append(
                        FieldInfo(
                            name=member.attrs["name"],
                            type_text=member.attrs["type"],
                            modifiers=mods,
                            visibility=_visibility(mods, kind),
                            line=member.line,
                            is_constant=constant,
                        )
                    )
                elif member.kind == "EnumConstant":
                    info.enum_constants.append(member.attrs["name"])
                else:
                    mods = member.attrs["modifiers"]
                    is_ctor = member.kind == "ConstructorDecl"
                    info.methods.append(
                        MethodInfo(
                            name=member.attrs["name"],
                            arity=member.attrs["arity"],
                            param_types=tuple(t for t, _ in member.attrs["params"]),
                            return_type=member.attrs.get("return_type"),
                            modifiers=mods,
                            visibility=_visibility(mods, kind, is_ctor),
                            is_ctor=is_ctor,
                            has_body=member.attrs["has_body"],
                            line=member.line,
                            node=member,
                        )
                    )
            if outer is not None and outer in model.types:
                model.types[outer].nested.append(qname)
            model.types[qname] = info
            scope.simple_names.setdefault(simple, qname)
            model.packages.setdefault(package, []).append(qname)

    for pkg in model.packages.values():
        pkg.sort()

    # Pass 2: descriptors with unique qualified names.
    for qname in sorted(model.types):
        info = model.types[qname]
        model.elements.append(
            ElementDescriptor(qname, "type", info.modifiers, info.kind, info.file)
        )
        for f in info.fields:
            model.elements.append(
                ElementDescriptor(
                    f"{qname}.{f.name}", "field", f.modifiers, f.type_text, info.file
                )
            )
        seen_sigs: dict = {}
        for m in info.methods:
            sig = f"{m.name}({','.join(m.param_types)})"
            n = seen_sigs.get(sig, 0)
            seen_sigs[sig] = n + 1
            unique = sig if n == 0 else f"{sig}#{n}"
            model.elements.append(
                ElementDescriptor(
                    f"{qname}.{unique}",
                    "constructor" if m.is_ctor else "method",
                    m.modifiers,
                    sig,
                    info.file,
                )
            )

    # Pass 3: inheritance resolution and extends-cycle detection.
    for qname in sorted(model.types):
        info = model.types[qname]
        if info.supertype_raw:
            resolved = model.resolve(info.supertype_raw, info.file)
            if isinstance(resolved, str):
                info.supertype = resolved
                model.subtypes.setdefault(resolved, []).append(qname)
    for lst in model.subtypes.values():
        lst.sort()
    _flag_extends_cycles(model)

    # Pass 4: dependency edges with witnesses.
    for qname in sorted(model.types):
        _collect_dependencies(model, model.types[qname])

    for src, targets in model.deps.items():
        for tgt in targets:
            if isinstance(tgt, str):
                model.incoming.setdefault(tgt, set()).add(src)
    return model


def _flag_extends_cycles(model: PseudoModel):
    reported: set = set()
    for start in sorted(model.types):
        chain: list = []
        seen: set = set()
        cur = start
        while cur is not None:
            if cur in seen:
                cycle = frozenset(chain[chain.index(cur):])
                if cycle not in reported:
                    reported.add(cycle)
                    info = model.types[cur]
                    model.diagnostics.append(
                        ModelDiagnostic(
                            "extends-cycle",
                            "inheritance cycle: " + " -> ".join(sorted(cycle)),
                            info.file,
                            info.line,
                        )
                    )
                break
            seen.add(cur)
            chain.append(cur)
            cur = model.types[cur].supertype


def _collect_dependencies(model: PseudoModel, info: TypeInfo):
    edges = model.deps.setdefault(info.qname, set())

    def add(raw: str | None, line: int):
        if not raw or raw in NON_REF_TYPES:
            return
        resolved = model.resolve(raw, info.file)
        if resolved == info.qname:
            return  # self reference
        edges.add(resolved)
        model.dep_witness.setdefault((info.qname, resolved), (info.file, line))

    def add_internal_only(raw: str, line: int):
        if not raw or raw in NON_REF_TYPES:
            return
        resolved = model.resolve(raw, info.file)
        if isinstance(resolved, str) and resolved != info.qname:
            edges.add(resolved)
            model.dep_witness.setdefault((info.qname, resolved), (info.file, line))

    if info.supertype_raw:
        add(info.supertype_raw, info.line)
    for raw in info.interface_raws:
        add(raw, info.line)
    for f in info.fields:
        add(f.type_text, f.line)

    def walk(node: Node):
        for child in node.children:
            if child.kind in ("TypeDecl", "Lambda"):
                continue  # nested types own their deps; lambda bodies opaque
            k = child.kind
            a = child.attrs
            if k == "Parameter":
                add(a["type"], child.line)
            elif k == "MethodDecl":
                add(a.get("return_type"), child.line)
            elif k == "LocalVar":
                add(a["type"], child.line)
            elif k == "ForEach":
                add(a["var_type"], child.line)
            elif k in ("New", "ArrayNew"):
                add(a["type"], child.line)
            elif k == "Cast":
                add(a["type"], child.line)
            elif k == "InstanceOf":
                add(a["type"], child.line)
            elif k == "Catch":
                for raw in a.get("types", ()):
                    add(raw, child.line)
            elif k in ("Call", "FieldAccess"):
                # Static access: only count when the head name actually
                # resolves inside the project, since syntactically it could
                # be a variable.
                base = child.children[0] if child.children else None
                if k == "Call" and not a.get("has_target"):
                    base = None
                if base is not None and base.kind == "Name":
                    add_internal_only(base.attrs["id"], base.line)
            walk(child)

    if info.node is not None:
        for member in info.node.children:
            if member.kind == "TypeDecl":
                continue
            if member.kind == "MethodDecl" or member.kind == "ConstructorDecl":
                add(member.attrs.get("return_type"), member.line)
            walk(member)


# ----------------------------------------------------------------------
# convenience used by tests and the pipeline


def parse_source(text: str, path: str = "<memory>.java") -> ParsedFile:
    from .lexer import tokenize
    from .parser import parse

    src = SourceFile(path, text)
    toks = tokenize(src)
    unit = parse(toks, src)
    return ParsedFile(src, toks, unit, line_stats(src, toks), code_line_numbers(toks))


def build_from_sources(sources: dict) -> PseudoModel:
    """Build a model straight from {path: java source text}."""
    return build_model(parse_source(text, path) for path, text in sources.items())
