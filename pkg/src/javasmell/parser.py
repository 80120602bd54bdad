"""Recursive-descent parser for a practical Java subset.

Covers packages, imports, type declarations (classes, interfaces, enums,
nested types), fields, methods, constructors, the common statement forms
(if/else, for, enhanced-for, while, do, switch, try/catch/finally, return,
throw, locals, expression statements) and enough of the expression grammar to
see calls, field accesses, object creation, casts, instanceof, the
conditional operator and short-circuit logic. Generic arguments are parsed
and erased to raw names, annotations are parsed and dropped, lambda bodies
are kept opaque. Anything outside the subset is consumed as an opaque
statement and reported as a diagnostic instead of aborting the file.

Recovery is panic-mode at the member and statement level: the parser always
consumes at least one token per recovery step, so a parse is bounded by the
token count. ``ParseError`` is raised only when a file with syntax errors
yields no declarations at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lexer import SourceFile, Token

PRIMITIVES = frozenset(
    {"boolean", "byte", "short", "char", "int", "long", "float", "double"}
)
# Names that can appear in type position but never refer to a project type.
NON_REF_TYPES = PRIMITIVES | {"void", "var"}

MODIFIER_WORDS = frozenset(
    {
        "public", "protected", "private", "static", "final", "abstract",
        "native", "synchronized", "transient", "volatile", "strictfp",
        "default",
    }
)

ASSIGN_OPS = frozenset(
    {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
)

# Binary precedence levels, loosest first. instanceof sits at the
# relational level and is handled specially.
_BINARY_LEVELS = (
    ("||",),
    ("&&",),
    ("|",),
    ("^",),
    ("&",),
    ("==", "!="),
    ("<", ">", "<=", ">="),
    ("<<", ">>", ">>>"),
    ("+", "-"),
    ("*", "/", "%"),
)
_RELATIONAL_LEVEL = 6


@dataclass
class Node:
    """Generic syntax-tree node; ``attrs`` holds kind-specific data."""

    kind: str
    start: int = 0
    end: int = 0
    line: int = 0
    col: int = 0
    end_line: int = 0
    children: list["Node"] = field(default_factory=list)
    attrs: dict = field(default_factory=dict)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def __repr__(self):  # keep test failures readable
        bits = ", ".join(f"{k}={v!r}" for k, v in self.attrs.items() if k != "diagnostics")
        return f"<{self.kind} {self.line}:{self.col} {bits}>"


@dataclass
class Diagnostic:
    message: str
    file: str
    line: int
    col: int

    def __str__(self):
        return f"{self.file}:{self.line}:{self.col}: {self.message}"


class ParseError(Exception):
    def __init__(self, message: str, file: str, line: int, col: int, expected=None, found=None):
        super().__init__(f"{file}:{line}:{col}: {message}")
        self.file = file
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found


class _Recover(Exception):
    """Internal: recoverable syntax error at the current token."""

    def __init__(self, message, token, expected=None):
        super().__init__(message)
        self.message = message
        self.token = token
        self.expected = expected


def render(node: Node) -> str:
    """Canonical, whitespace-free rendering of simple expressions.

    Used to compare the scrutinee of instanceof ladders and switch selectors;
    parentheses are transparent.
    """
    k = node.kind
    if k == "Name":
        return node.attrs.get("id", "?")
    if k == "FieldAccess":
        return f"{render(node.children[0])}.{node.attrs['name']}"
    if k == "Call":
        base = render(node.children[0]) + "." if node.attrs.get("has_target") else ""
        return f"{base}{node.attrs['name']}()"
    if k == "Paren":
        return render(node.children[0])
    if k == "This":
        return "this"
    if k == "Super":
        return "super"
    if k == "ArrayAccess":
        return render(node.children[0]) + "[]"
    if k == "Literal":
        return node.attrs.get("text", "?")
    if k == "Cast":
        return render(node.children[0])
    return "?"


def terminal_name(node: Node) -> str:
    """Last identifier of an expression: x.getKind() -> getKind."""
    k = node.kind
    if k in ("Call", "FieldAccess"):
        return node.attrs["name"]
    if k == "Name":
        return node.attrs["id"].rpartition(".")[2]
    if k in ("Paren", "Cast"):
        return terminal_name(node.children[0])
    if k == "ArrayAccess":
        return terminal_name(node.children[0])
    return ""


class _Parser:
    def __init__(self, tokens: list[Token], source: SourceFile):
        self.toks = [t for t in tokens if t.kind != "comment"]
        self.src = source
        self.i = 0
        self.diags: list[Diagnostic] = []

    # ------------------------------------------------------------------
    # token plumbing

    def peek(self, ahead: int = 0) -> Token | None:
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def at(self, lexeme: str) -> bool:
        t = self.peek()
        return t is not None and t.lexeme == lexeme

    def at_kind(self, kind: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == kind

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def accept(self, lexeme: str) -> Token | None:
        if self.at(lexeme):
            return self.advance()
        return None

    def expect(self, lexeme: str) -> Token:
        t = self.peek()
        if t is None or t.lexeme != lexeme:
            found = t.lexeme if t else "end of file"
            raise _Recover(f"expected '{lexeme}', found '{found}'", t, expected=lexeme)
        return self.advance()

    def expect_identifier(self) -> Token:
        t = self.peek()
        if t is None or t.kind != "identifier":
            found = t.lexeme if t else "end of file"
            raise _Recover(f"expected identifier, found '{found}'", t, expected="identifier")
        return self.advance()

    def last(self) -> Token | None:
        return self.toks[self.i - 1] if self.i > 0 else None

    def node(self, kind: str, tok: Token | None = None, **attrs) -> Node:
        tok = tok or self.peek() or self.last()
        n = Node(kind, attrs=attrs)
        if tok is not None:
            n.start = tok.offset
            n.end = tok.offset + tok.length
            n.line, n.col = tok.line, tok.col
            n.end_line = tok.line
        return n

    def close(self, n: Node) -> Node:
        t = self.last()
        if t is not None and t.offset + t.length >= n.end:
            n.end = t.offset + t.length
            n.end_line = t.line + t.lexeme.count("\n")
        return n

    def close_from(self, n: Node, base: Node) -> Node:
        """Close *n* but anchor its start at *base* (left operand)."""
        n.start, n.line, n.col = base.start, base.line, base.col
        return self.close(n)

    def diag(self, message: str, tok: Token | None = None):
        tok = tok or self.peek() or self.last()
        line, col = (tok.line, tok.col) if tok else (1, 1)
        self.diags.append(Diagnostic(message, self.src.path, line, col))

    def diag_recover(self, err: _Recover):
        self.diag(err.message, err.token or self.last())

    # ------------------------------------------------------------------
    # recovery helpers

    def skip_statement_like(self):
        """Consume until ';' at depth 0 or a balanced '}' run ends."""
        depth = 0
        while self.peek() is not None:
            lex = self.advance().lexeme
            if lex == "{":
                depth += 1
            elif lex == "}":
                if depth == 0:
                    self.i -= 1  # belongs to the enclosing block
                    return
                depth -= 1
                if depth == 0:
                    return
            elif lex == ";" and depth == 0:
                return

    def consume_balanced_braces(self) -> Node:
        open_tok = self.expect("{")
        n = self.node("Opaque", open_tok)
        depth = 1
        while depth > 0:
            t = self.peek()
            if t is None:
                raise _Recover("unbalanced '{'", open_tok)
            lex = self.advance().lexeme
            if lex == "{":
                depth += 1
            elif lex == "}":
                depth -= 1
        return self.close(n)

    def skip_generics(self):
        """Consume a balanced <...> run starting at '<'. '>>' closes two."""
        open_tok = self.expect("<")
        depth = 1
        while depth > 0:
            t = self.peek()
            if t is None:
                raise _Recover("unbalanced '<'", open_tok)
            lex = self.advance().lexeme
            depth += lex.count("<") - lex.count(">")
            if depth < 0:
                raise _Recover("mismatched '>'", open_tok)

    def skip_annotation(self):
        self.expect("@")
        self.expect_identifier()
        while self.at(".") and self.peek(1) is not None and self.peek(1).kind == "identifier":
            self.advance()
            self.advance()
        if self.at("("):
            depth = 0
            while True:
                t = self.peek()
                if t is None:
                    raise _Recover("unbalanced annotation arguments", t)
                lex = self.advance().lexeme
                if lex == "(":
                    depth += 1
                elif lex == ")":
                    depth -= 1
                    if depth == 0:
                        return

    # ------------------------------------------------------------------
    # shared pieces

    def parse_modifiers(self) -> set[str]:
        mods: set[str] = set()
        while True:
            t = self.peek()
            if t is None:
                return mods
            if t.lexeme == "@" and not (
                self.peek(1) is not None and self.peek(1).lexeme == "interface"
            ):
                self.skip_annotation()
                continue
            if t.kind == "keyword" and t.lexeme in MODIFIER_WORDS:
                mods.add(self.advance().lexeme)
                continue
            return mods

    def parse_qualified_name(self) -> str:
        parts = [self.expect_identifier().lexeme]
        while self.at(".") and self.peek(1) is not None and self.peek(1).kind == "identifier":
            self.advance()
            parts.append(self.advance().lexeme)
        return ".".join(parts)

    def parse_type_text(self) -> str:
        """Type reference as written, generics erased, array dims dropped."""
        t = self.peek()
        if t is None:
            raise _Recover("expected type, found end of file", t)
        if t.kind == "keyword" and t.lexeme in NON_REF_TYPES:
            name = self.advance().lexeme
        elif t.kind == "identifier":
            name = self.parse_qualified_name()
        else:
            raise _Recover(f"expected type, found '{t.lexeme}'", t)
        if self.at("<"):
            self.skip_generics()
        while self.at("[") and self.peek(1) is not None and self.peek(1).lexeme == "]":
            self.advance()
            self.advance()
        return name

    def parse_type_list(self) -> list[str]:
        names = [self.parse_type_text()]
        while self.accept(","):
            names.append(self.parse_type_text())
        return names

    # ------------------------------------------------------------------
    # compilation unit

    def parse_unit(self) -> Node:
        first = self.peek()
        unit = self.node("CompilationUnit", first)
        unit.attrs.update(package=None, imports=[], file=self.src.path)
        if first is None:
            return unit

        while self.at("@") and not (
            self.peek(1) is not None and self.peek(1).lexeme == "interface"
        ):
            try:
                self.skip_annotation()
            except _Recover as err:
                self.diag_recover(err)
                break
        if self.at("package"):
            self.advance()
            try:
                pkg = self.node("PackageDecl", self.last())
                unit.attrs["package"] = self.parse_qualified_name()
                pkg.attrs["name"] = unit.attrs["package"]
                self.expect(";")
                unit.children.append(self.close(pkg))
            except _Recover as err:
                self.diag_recover(err)
                self.skip_statement_like()
        while self.at("import"):
            tok = self.advance()
            try:
                imp = self.node("ImportDecl", tok)
                is_static = self.accept("static") is not None
                name = self.parse_qualified_name()
                on_demand = False
                if self.at(".") and self.peek(1) is not None and self.peek(1).lexeme == "*":
                    self.advance()
                    self.advance()
                    on_demand = True
                self.expect(";")
                imp.attrs.update(name=name, on_demand=on_demand, static=is_static)
                unit.attrs["imports"].append(imp.attrs)
                unit.children.append(self.close(imp))
            except _Recover as err:
                self.diag_recover(err)
                self.skip_statement_like()

        while self.peek() is not None:
            guard = self.i
            if self.accept(";"):
                continue
            try:
                mods = self.parse_modifiers()
                t = self.peek()
                if t is not None and t.lexeme in ("class", "interface", "enum"):
                    unit.children.append(self.parse_type_decl(mods))
                elif t is not None and t.lexeme == "@":
                    self.skip_annotation_type_decl()
                else:
                    found = t.lexeme if t else "end of file"
                    raise _Recover(f"expected type declaration, found '{found}'", t)
            except _Recover as err:
                self.diag_recover(err)
                self.skip_statement_like()
            if self.i == guard:
                self.advance()
        return self.close(unit)

    def skip_annotation_type_decl(self):
        tok = self.expect("@")
        self.expect("interface")
        self.expect_identifier()
        self.diag("annotation type declaration skipped", tok)
        if self.at("{"):
            self.consume_balanced_braces()

    # ------------------------------------------------------------------
    # type declarations and members

    def parse_type_decl(self, mods: set[str]) -> Node:
        kw = self.advance()  # class | interface | enum
        name = self.expect_identifier().lexeme
        decl = self.node("TypeDecl", kw)
        decl.attrs.update(
            name=name,
            type_kind=kw.lexeme,
            modifiers=frozenset(mods),
            supertype=None,
            interfaces=[],
        )
        if self.at("<"):
            self.skip_generics()
        if kw.lexeme == "class":
            if self.accept("extends"):
                decl.attrs["supertype"] = self.parse_type_text()
            if self.accept("implements"):
                decl.attrs["interfaces"] = self.parse_type_list()
        elif kw.lexeme == "interface":
            # All extended interfaces are superinterfaces; none is singled
            # out as "the" supertype.
            if self.accept("extends"):
                decl.attrs["interfaces"] = self.parse_type_list()
        else:  # enum
            if self.accept("implements"):
                decl.attrs["interfaces"] = self.parse_type_list()
        if kw.lexeme == "enum":
            self.parse_enum_body(decl)
        else:
            self.parse_class_body(decl)
        return self.close(decl)

    def parse_class_body(self, decl: Node):
        self.expect("{")
        while not self.at("}"):
            if self.peek() is None:
                self.diag("unexpected end of file in type body")
                return
            guard = self.i
            try:
                self.parse_member(decl)
            except _Recover as err:
                self.diag_recover(err)
                self.skip_statement_like()
            if self.i == guard:
                self.advance()
        self.expect("}")

    def parse_enum_body(self, decl: Node):
        self.expect("{")
        while not self.at("}") and not self.at(";"):
            if self.peek() is None:
                self.diag("unexpected end of file in enum body")
                return
            while self.at("@"):
                self.skip_annotation()
            ctok = self.expect_identifier()
            const = self.node("EnumConstant", ctok, name=ctok.lexeme)
            if self.at("("):
                const.children.extend(self.parse_args())
            if self.at("{"):
                self.diag("enum constant body skipped", ctok)
                const.children.append(self.consume_balanced_braces())
            decl.children.append(self.close(const))
            if not self.accept(","):
                break
        if self.accept(";"):
            while not self.at("}"):
                if self.peek() is None:
                    self.diag("unexpected end of file in enum body")
                    return
                guard = self.i
                try:
                    self.parse_member(decl)
                except _Recover as err:
                    self.diag_recover(err)
                    self.skip_statement_like()
                if self.i == guard:
                    self.advance()
        self.expect("}")

    def parse_member(self, owner: Node):
        if self.accept(";"):
            return
        start_tok = self.peek()
        mods = self.parse_modifiers()
        t = self.peek()
        if t is None:
            raise _Recover("unexpected end of file in type body", t)
        if t.lexeme == "@" and self.peek(1) is not None and self.peek(1).lexeme == "interface":
            self.skip_annotation_type_decl()
            return
        if t.lexeme in ("class", "interface", "enum"):
            owner.children.append(self.parse_type_decl(mods))
            return
        if t.lexeme == "{":
            init = self.node("Initializer", t, static="static" in mods)
            init.children.append(self.parse_block())
            owner.children.append(self.close(init))
            return
        if t.lexeme == "<":
            self.skip_generics()
            t = self.peek()
            if t is None:
                raise _Recover("unexpected end of file after type parameters", t)

        # Constructor: bare name of the enclosing type followed by '('.
        if (
            t.kind == "identifier"
            and t.lexeme == owner.attrs.get("name")
            and self.peek(1) is not None
            and self.peek(1).lexeme == "("
        ):
            name_tok = self.advance()
            owner.children.append(
                self.parse_method(start_tok or name_tok, mods, None, name_tok.lexeme, is_ctor=True)
            )
            return

        type_text = self.parse_type_text()
        name_tok = self.expect_identifier()
        if self.at("("):
            owner.children.append(
                self.parse_method(start_tok or name_tok, mods, type_text, name_tok.lexeme)
            )
        else:
            self.parse_field_declarators(owner, start_tok or name_tok, mods, type_text, name_tok)

    def parse_method(self, start_tok, mods, return_type, name, is_ctor=False) -> Node:
        decl = self.node("ConstructorDecl" if is_ctor else "MethodDecl", start_tok)
        params = self.parse_params(decl)
        while self.at("[") and self.peek(1) is not None and self.peek(1).lexeme == "]":
            self.advance()
            self.advance()
        throws: list[str] = []
        if self.accept("throws"):
            throws = self.parse_type_list()
        body = None
        if self.at("{"):
            body = self.parse_block()
            decl.children.append(body)
        else:
            self.expect(";")
        decl.attrs.update(
            name=name,
            modifiers=frozenset(mods),
            return_type=return_type,
            params=params,
            arity=len(params),
            throws=throws,
            is_ctor=is_ctor,
            has_body=body is not None,
        )
        return self.close(decl)

    def parse_params(self, decl: Node) -> list[tuple[str, str]]:
        self.expect("(")
        params: list[tuple[str, str]] = []
        while not self.at(")"):
            if self.peek() is None:
                raise _Recover("unexpected end of file in parameter list", None)
            while self.at("@"):
                self.skip_annotation()
            self.accept("final")
            ptype = self.parse_type_text()
            self.accept("...")
            # Receiver parameters ("this") and lambda-ish noise are not
            # expected here; a plain identifier is.
            pname = self.expect_identifier().lexeme
            while self.at("[") and self.peek(1) is not None and self.peek(1).lexeme == "]":
                self.advance()
                self.advance()
            param = self.node("Parameter", self.last(), type=ptype, name=pname)
            decl.children.append(self.close(param))
            params.append((ptype, pname))
            if not self.accept(","):
                break
        self.expect(")")
        return params

    def parse_field_declarators(self, owner, start_tok, mods, type_text, first_name_tok):
        name_tok = first_name_tok
        while True:
            fdecl = self.node("FieldDecl", start_tok)
            fdecl.attrs.update(
                name=name_tok.lexeme, modifiers=frozenset(mods), type=type_text
            )
            while self.at("[") and self.peek(1) is not None and self.peek(1).lexeme == "]":
                self.advance()
                self.advance()
            if self.accept("="):
                fdecl.children.append(self.parse_variable_init())
            owner.children.append(self.close(fdecl))
            if self.accept(","):
                name_tok = self.expect_identifier()
                continue
            self.expect(";")
            return

    def parse_variable_init(self) -> Node:
        if self.at("{"):
            return self.parse_array_initializer()
        return self.parse_expression()

    def parse_array_initializer(self) -> Node:
        open_tok = self.expect("{")
        n = self.node("ArrayInit", open_tok)
        while not self.at("}"):
            if self.peek() is None:
                raise _Recover("unterminated array initializer", open_tok)
            n.children.append(self.parse_variable_init())
            if not self.accept(","):
                break
        self.expect("}")
        return self.close(n)

    # ------------------------------------------------------------------
    # statements

    def parse_block(self) -> Node:
        open_tok = self.expect("{")
        block = self.node("Block", open_tok)
        while not self.at("}"):
            if self.peek() is None:
                self.diag("unexpected end of file in block", open_tok)
                return self.close(block)
            guard = self.i
            try:
                block.children.append(self.parse_statement())
            except _Recover as err:
                self.diag_recover(err)
                self.skip_statement_like()
            if self.i == guard:
                self.advance()
        self.expect("}")
        return self.close(block)

    def parse_statement(self) -> Node:
        t = self.peek()
        if t is None:
            raise _Recover("expected statement, found end of file", t)
        lex = t.lexeme
        if lex == "{":
            return self.parse_block()
        if lex == ";":
            self.advance()
            return self.close(self.node("Empty", t))
        if lex == "if":
            return self.parse_if()
        if lex == "while":
            self.advance()
            n = self.node("While", t)
            self.expect("(")
            n.children.append(self.parse_expression())
            self.expect(")")
            n.children.append(self.parse_statement())
            return self.close(n)
        if lex == "do":
            self.advance()
            n = self.node("DoWhile", t)
            n.children.append(self.parse_statement())
            self.expect("while")
            self.expect("(")
            n.children.append(self.parse_expression())
            self.expect(")")
            self.expect(";")
            return self.close(n)
        if lex == "for":
            return self.parse_for()
        if lex == "switch":
            return self.parse_switch()
        if lex == "try":
            return self.parse_try()
        if lex == "return":
            self.advance()
            n = self.node("Return", t)
            if not self.at(";"):
                n.children.append(self.parse_expression())
            self.expect(";")
            return self.close(n)
        if lex == "throw":
            self.advance()
            n = self.node("Throw", t)
            n.children.append(self.parse_expression())
            self.expect(";")
            return self.close(n)
        if lex in ("break", "continue"):
            self.advance()
            n = self.node("Break" if lex == "break" else "Continue", t)
            if self.at_kind("identifier"):
                n.attrs["label"] = self.advance().lexeme
            self.expect(";")
            return self.close(n)
        if lex == "synchronized":
            self.advance()
            n = self.node("Sync", t)
            self.expect("(")
            n.children.append(self.parse_expression())
            self.expect(")")
            n.children.append(self.parse_block())
            return self.close(n)
        if lex == "assert":
            self.advance()
            n = self.node("Assert", t)
            n.children.append(self.parse_expression())
            if self.accept(":"):
                n.children.append(self.parse_expression())
            self.expect(";")
            return self.close(n)
        if lex in ("class", "interface", "enum"):
            return self.parse_type_decl(set())
        if lex in ("final", "abstract", "static"):
            mods = self.parse_modifiers()
            nxt = self.peek()
            if nxt is not None and nxt.lexeme in ("class", "interface", "enum"):
                return self.parse_type_decl(mods)
            local = self.try_parse_local_var()
            if local is not None:
                return local
            raise _Recover("expected declaration after modifiers", nxt)
        if (
            t.kind == "identifier"
            and self.peek(1) is not None
            and self.peek(1).lexeme == ":"
            and (self.peek(2) is None or self.peek(2).lexeme != ":")
        ):
            label = self.advance().lexeme
            self.advance()
            n = self.node("Labeled", t, label=label)
            n.children.append(self.parse_statement())
            return self.close(n)

        local = self.try_parse_local_var()
        if local is not None:
            return local
        n = self.node("ExprStmt", t)
        n.children.append(self.parse_expression())
        self.expect(";")
        return self.close(n)

    def try_parse_local_var(self) -> Node | None:
        save = self.i
        start = self.peek()
        self.accept("final")
        while self.at("@"):
            try:
                self.skip_annotation()
            except _Recover:
                self.i = save
                return None
        try:
            type_text = self.parse_type_text()
        except _Recover:
            self.i = save
            return None
        t = self.peek()
        nxt = self.peek(1)
        if (
            t is None
            or t.kind != "identifier"
            or nxt is None
            or nxt.lexeme not in ("=", ";", ",", "[")
        ):
            self.i = save
            return None
        n = self.node("LocalVar", start, type=type_text, names=[])
        while True:
            name_tok = self.expect_identifier()
            n.attrs["names"].append(name_tok.lexeme)
            while self.at("[") and self.peek(1) is not None and self.peek(1).lexeme == "]":
                self.advance()
                self.advance()
            if self.accept("="):
                n.children.append(self.parse_variable_init())
            if self.accept(","):
                continue
            self.expect(";")
            return self.close(n)

    def parse_if(self) -> Node:
        tok = self.expect("if")
        n = self.node("If", tok)
        self.expect("(")
        n.children.append(self.parse_expression())
        self.expect(")")
        n.children.append(self.parse_statement())
        if self.accept("else"):
            n.children.append(self.parse_statement())
            n.attrs["has_else"] = True
        return self.close(n)

    def parse_for(self) -> Node:
        tok = self.expect("for")
        self.expect("(")
        save = self.i
        # Enhanced for: [final] Type name : expr
        self.accept("final")
        try:
            vtype = self.parse_type_text()
            name_tok = self.peek()
            if (
                name_tok is not None
                and name_tok.kind == "identifier"
                and self.peek(1) is not None
                and self.peek(1).lexeme == ":"
            ):
                self.advance()
                self.advance()
                n = self.node("ForEach", tok, var_type=vtype, var_name=name_tok.lexeme)
                n.children.append(self.parse_expression())
                self.expect(")")
                n.children.append(self.parse_statement())
                return self.close(n)
        except _Recover:
            pass
        self.i = save

        n = self.node("For", tok)
        if not self.at(";"):
            init = self.try_parse_local_var()
            if init is None:
                init = self.node("ExprStmt", self.peek())
                init.children.append(self.parse_expression())
                while self.accept(","):
                    init.children.append(self.parse_expression())
                self.close(init)
                self.expect(";")
            n.children.append(init)
        else:
            self.advance()
        if not self.at(";"):
            n.children.append(self.parse_expression())
        self.expect(";")
        if not self.at(")"):
            upd = self.node("ExprStmt", self.peek())
            upd.children.append(self.parse_expression())
            while self.accept(","):
                upd.children.append(self.parse_expression())
            n.children.append(self.close(upd))
        self.expect(")")
        n.children.append(self.parse_statement())
        return self.close(n)

    def parse_switch(self) -> Node:
        tok = self.expect("switch")
        n = self.node("Switch", tok)
        self.expect("(")
        selector = self.parse_expression()
        self.expect(")")
        n.children.append(selector)
        n.attrs["selector_text"] = render(selector)
        n.attrs["terminal_name"] = terminal_name(selector)
        self.expect("{")
        cases = 0
        while not self.at("}"):
            t = self.peek()
            if t is None:
                self.diag("unexpected end of file in switch", tok)
                break
            guard = self.i
            try:
                if self.accept("case"):
                    while True:
                        label = self.node("Case", self.last())
                        label.children.append(self.parse_case_label())
                        n.children.append(self.close(label))
                        cases += 1
                        if not self.accept(","):
                            break
                    self.parse_case_tail(n)
                elif self.accept("default"):
                    n.children.append(self.close(self.node("Default", self.last())))
                    self.parse_case_tail(n)
                else:
                    n.children.append(self.parse_statement())
            except _Recover as err:
                self.diag_recover(err)
                self.skip_statement_like()
            if self.i == guard:
                self.advance()
        self.accept("}")
        n.attrs["case_count"] = cases
        return self.close(n)

    def parse_case_label(self) -> Node:
        # No ternary here (':' closes the label); pattern labels tolerate a
        # trailing binding identifier.
        expr = self.parse_binary(0)
        if self.at_kind("identifier"):
            self.advance()
        return expr

    def parse_case_tail(self, switch_node: Node):
        if self.accept("->"):
            if self.at("{"):
                switch_node.children.append(self.parse_block())
            elif self.at("throw"):
                switch_node.children.append(self.parse_statement())
            else:
                stmt = self.node("ExprStmt", self.peek())
                stmt.children.append(self.parse_expression())
                self.expect(";")
                switch_node.children.append(self.close(stmt))
        else:
            self.expect(":")

    def parse_try(self) -> Node:
        tok = self.expect("try")
        n = self.node("Try", tok)
        if self.accept("("):
            while not self.at(")"):
                if self.peek() is None:
                    raise _Recover("unterminated resource list", tok)
                res = self.try_parse_resource()
                if res is None:
                    res = self.parse_expression()
                n.children.append(res)
                if not self.accept(";"):
                    break
            self.expect(")")
        n.children.append(self.parse_block())
        while self.at("catch"):
            ctok = self.advance()
            c = self.node("Catch", ctok)
            self.expect("(")
            self.accept("final")
            while self.at("@"):
                self.skip_annotation()
            types = [self.parse_type_text()]
            while self.accept("|"):
                types.append(self.parse_type_text())
            c.attrs["types"] = types
            c.attrs["name"] = self.expect_identifier().lexeme
            self.expect(")")
            c.children.append(self.parse_block())
            n.children.append(self.close(c))
        if self.accept("finally"):
            n.children.append(self.parse_block())
        return self.close(n)

    def try_parse_resource(self) -> Node | None:
        save = self.i
        start = self.peek()
        self.accept("final")
        try:
            rtype = self.parse_type_text()
            name_tok = self.expect_identifier()
            self.expect("=")
        except _Recover:
            self.i = save
            return None
        n = self.node("LocalVar", start, type=rtype, names=[name_tok.lexeme])
        n.children.append(self.parse_expression())
        return self.close(n)

    # ------------------------------------------------------------------
    # expressions

    def parse_expression(self) -> Node:
        return self.parse_assignment()

    def parse_assignment(self) -> Node:
        left = self.parse_ternary()
        t = self.peek()
        if t is not None and t.kind == "operator" and t.lexeme in ASSIGN_OPS:
            op = self.advance().lexeme
            n = self.node("Assign", t, op=op)
            n.children = [left, self.parse_assignment()]
            return self.close_from(n, left)
        return left

    def parse_ternary(self) -> Node:
        cond = self.parse_binary(0)
        if self.at("?"):
            qtok = self.advance()
            n = self.node("Ternary", qtok)
            then = self.parse_expression()
            self.expect(":")
            other = self.parse_ternary()
            n.children = [cond, then, other]
            return self.close_from(n, cond)
        return cond

    def parse_binary(self, level: int) -> Node:
        if level == len(_BINARY_LEVELS):
            return self.parse_unary()
        ops = _BINARY_LEVELS[level]
        left = self.parse_binary(level + 1)
        while True:
            t = self.peek()
            if t is None:
                return left
            if level == _RELATIONAL_LEVEL and t.lexeme == "instanceof":
                self.advance()
                ty = self.parse_type_text()
                if self.at_kind("identifier"):  # pattern binding
                    self.advance()
                n = self.node("InstanceOf", t, type=ty, operand_text=render(left))
                n.children = [left]
                left = self.close_from(n, left)
                continue
            if t.kind == "operator" and t.lexeme in ops:
                op = self.advance().lexeme
                right = self.parse_binary(level + 1)
                n = self.node("Binary", t, op=op)
                n.children = [left, right]
                left = self.close_from(n, left)
                continue
            return left

    def parse_unary(self) -> Node:
        t = self.peek()
        if t is None:
            raise _Recover("expected expression, found end of file", t)
        if t.kind == "operator" and t.lexeme in ("+", "-", "!", "~", "++", "--"):
            self.advance()
            n = self.node("Unary", t, op=t.lexeme, prefix=True)
            n.children.append(self.parse_unary())
            return self.close(n)
        if t.lexeme == "(":
            cast = self.try_parse_cast()
            if cast is not None:
                return cast
        return self.parse_postfix()

    def try_parse_cast(self) -> Node | None:
        save = self.i
        open_tok = self.advance()  # (
        try:
            ty = self.parse_type_text()
        except _Recover:
            self.i = save
            return None
        if not self.at(")"):
            self.i = save
            return None
        self.advance()
        nxt = self.peek()
        if nxt is None:
            self.i = save
            return None
        is_primitive = ty in PRIMITIVES
        starts_operand = (
            nxt.kind in ("identifier", "literal")
            or nxt.lexeme in ("(", "this", "super", "new", "!", "~")
            or (is_primitive and nxt.lexeme in ("+", "-"))
        )
        if not starts_operand:
            self.i = save
            return None
        n = self.node("Cast", open_tok, type=ty)
        n.children.append(self.parse_unary())
        return self.close(n)

    def parse_postfix(self) -> Node:
        node = self.parse_primary()
        while True:
            t = self.peek()
            if t is None:
                return node
            if t.lexeme == "(" and node.kind == "Name":
                # Bare call: foo(...). Dotted callees arrive as FieldAccess
                # and are rewritten in the '.' branch below.
                n = self.node("Call", t, name=node.attrs["id"], has_target=False)
                n.children = self.parse_args()
                node = self.close_from(n, node)
                continue
            if t.lexeme == ".":
                self.advance()
                if self.at("<"):
                    self.skip_generics()
                nt = self.peek()
                if nt is None:
                    raise _Recover("expected member name after '.'", t)
                if nt.lexeme == "class":
                    self.advance()
                    n = self.node("ClassLiteral", nt)
                    n.children = [node]
                    node = self.close_from(n, node)
                    continue
                if nt.lexeme == "this":
                    self.advance()
                    n = self.node("This", nt, qualified=True)
                    n.children = [node]
                    node = self.close_from(n, node)
                    continue
                if nt.lexeme == "new":
                    self.advance()
                    inner = self.parse_creation(nt)
                    inner.children.insert(0, node)
                    node = self.close_from(inner, node)
                    continue
                if nt.lexeme == "super":
                    self.advance()
                    n = self.node("Super", nt, qualified=True)
                    n.children = [node]
                    node = self.close_from(n, node)
                    continue
                name_tok = self.expect_identifier()
                if self.at("("):
                    n = self.node("Call", name_tok, name=name_tok.lexeme, has_target=True)
                    n.children = [node] + self.parse_args()
                    node = self.close_from(n, node)
                else:
                    n = self.node("FieldAccess", name_tok, name=name_tok.lexeme)
                    n.children = [node]
                    node = self.close_from(n, node)
                continue
            if t.lexeme == "[":
                self.advance()
                n = self.node("ArrayAccess", t)
                n.children = [node]
                if not self.at("]"):
                    n.children.append(self.parse_expression())
                self.expect("]")
                node = self.close_from(n, node)
                continue
            if t.lexeme == "::":
                self.advance()
                nt = self.peek()
                if nt is None:
                    raise _Recover("expected name after '::'", t)
                if self.at("<"):
                    self.skip_generics()
                    nt = self.peek()
                ref = self.advance()
                n = self.node("MethodRef", ref, name=ref.lexeme)
                n.children = [node]
                node = self.close_from(n, node)
                continue
            if t.kind == "operator" and t.lexeme in ("++", "--"):
                self.advance()
                n = self.node("Unary", t, op=t.lexeme, prefix=False)
                n.children = [node]
                node = self.close_from(n, node)
                continue
            return node

    def parse_args(self) -> list[Node]:
        self.expect("(")
        args: list[Node] = []
        while not self.at(")"):
            if self.peek() is None:
                raise _Recover("unterminated argument list", None)
            args.append(self.parse_expression())
            if not self.accept(","):
                break
        self.expect(")")
        return args

    def lambda_ahead(self) -> bool:
        # At '(': matched close paren directly followed by '->'.
        depth = 0
        j = self.i
        while j < len(self.toks):
            lex = self.toks[j].lexeme
            if lex == "(":
                depth += 1
            elif lex == ")":
                depth -= 1
                if depth == 0:
                    nxt = self.toks[j + 1] if j + 1 < len(self.toks) else None
                    return nxt is not None and nxt.lexeme == "->"
            elif lex in ("{", "}", ";"):
                return False
            j += 1
        return False

    def parse_lambda_params_paren(self):
        depth = 0
        while True:
            t = self.peek()
            if t is None:
                raise _Recover("unterminated lambda parameters", t)
            lex = self.advance().lexeme
            if lex == "(":
                depth += 1
            elif lex == ")":
                depth -= 1
                if depth == 0:
                    return

    def parse_lambda(self, start_tok) -> Node:
        n = self.node("Lambda", start_tok)
        if self.at("("):
            self.parse_lambda_params_paren()
        else:
            self.expect_identifier()
        self.expect("->")
        if self.at("{"):
            n.children.append(self.consume_balanced_braces())
        else:
            n.children.append(self.parse_expression())
        return self.close(n)

    def parse_creation(self, new_tok) -> Node:
        ty = self.parse_type_text()
        if self.at("["):
            n = self.node("ArrayNew", new_tok, type=ty)
            while self.accept("["):
                if not self.at("]"):
                    n.children.append(self.parse_expression())
                self.expect("]")
            if self.at("{"):
                n.children.append(self.parse_array_initializer())
            return self.close(n)
        if self.at("{"):
            # 'new T[] { ... }': the empty dims were consumed with the type.
            n = self.node("ArrayNew", new_tok, type=ty)
            n.children.append(self.parse_array_initializer())
            return self.close(n)
        n = self.node("New", new_tok, type=ty)
        n.children.extend(self.parse_args())
        if self.at("{"):
            self.diag("anonymous class body skipped", new_tok)
            n.children.append(self.consume_balanced_braces())
        return self.close(n)

    def parse_primary(self) -> Node:
        t = self.peek()
        if t is None:
            raise _Recover("expected expression, found end of file", t)
        if t.kind == "literal":
            self.advance()
            return self.close(self.node("Literal", t, text=t.lexeme))
        if t.lexeme == "(":
            if self.lambda_ahead():
                return self.parse_lambda(t)
            self.advance()
            inner = self.parse_expression()
            self.expect(")")
            n = self.node("Paren", t)
            n.children = [inner]
            return self.close(n)
        if t.lexeme == "new":
            self.advance()
            return self.parse_creation(t)
        if t.lexeme == "this":
            self.advance()
            if self.at("("):
                n = self.node("Call", t, name="this", has_target=False)
                n.children = self.parse_args()
                return self.close(n)
            return self.close(self.node("This", t))
        if t.lexeme == "super":
            self.advance()
            if self.at("("):
                n = self.node("Call", t, name="super", has_target=False)
                n.children = self.parse_args()
                return self.close(n)
            return self.close(self.node("Super", t))
        if t.lexeme == "switch":
            # Switch expressions are outside the subset; consume opaquely.
            self.diag("switch expression consumed opaquely", t)
            self.advance()
            self.expect("(")
            depth = 1
            while depth > 0:
                nt = self.peek()
                if nt is None:
                    raise _Recover("unterminated switch expression", t)
                lex = self.advance().lexeme
                if lex == "(":
                    depth += 1
                elif lex == ")":
                    depth -= 1
            n = self.node("Opaque", t)
            if self.at("{"):
                n.children.append(self.consume_balanced_braces())
            return self.close(n)
        if t.kind == "identifier":
            nxt = self.peek(1)
            if nxt is not None and nxt.lexeme == "->":
                return self.parse_lambda(t)
            self.advance()
            return self.close(self.node("Name", t, id=t.lexeme))
        if t.kind == "keyword" and t.lexeme in NON_REF_TYPES:
            self.advance()
            while self.at("[") and self.peek(1) is not None and self.peek(1).lexeme == "]":
                self.advance()
                self.advance()
            self.expect(".")
            self.expect("class")
            return self.close(self.node("ClassLiteral", t, primitive=t.lexeme))
        raise _Recover(f"unexpected token '{t.lexeme}' in expression", t)


def parse(tokens: list[Token], source: SourceFile) -> Node:
    """Parse *tokens* into a CompilationUnit.

    Recoverable errors leave diagnostics on the unit
    (``unit.attrs["diagnostics"]``); ParseError is raised only when nothing
    could be salvaged from a file that contains declarations.
    """
    p = _Parser(tokens, source)
    try:
        unit = p.parse_unit()
    except RecursionError:
        raise ParseError("nesting too deep to parse", source.path, 1, 1) from None
    unit.attrs["diagnostics"] = p.diags
    has_types = any(c.kind == "TypeDecl" for c in unit.children)
    if p.diags and not has_types and p.toks:
        first = p.diags[0]
        raise ParseError(first.message, source.path, first.line, first.col)
    return unit


def type_decls(unit: Node) -> list[Node]:
    """Top-level type declarations of a compilation unit."""
    return [c for c in unit.children if c.kind == "TypeDecl"]
