"""Parse and serialize the STRIPS subset of PDDL (``:strips`` and ``:typing`` only)."""

from __future__ import annotations

from typing import NamedTuple

from .strips import (
    ActionSchema,
    Atom,
    DomainModel,
    PlanningProblem,
    StripsError,
)


class PddlError(Exception):
    """Base error for PDDL handling; carries a source position when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)


class PddlSyntaxError(PddlError):
    pass


class UnsupportedFeatureError(PddlError):
    """An input uses a PDDL construct outside the supported STRIPS subset."""


SUPPORTED_REQUIREMENTS = {":strips", ":typing"}

# Formula heads that signal constructs we deliberately do not handle.
_REJECTED_HEADS = {
    "or", "not", "imply", "exists", "forall", "when", "=", "either",
    "increase", "decrease", "assign", "scale-up", "scale-down",
}


class Token(NamedTuple):
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    """Split PDDL text into parens and symbols, lowercased, with positions."""
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch.isspace():
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append(Token(ch, line, col))
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and not text[i].isspace() and text[i] not in "();":
                i += 1
                col += 1
            tokens.append(Token(text[start:i].lower(), line, start_col))
    return tokens


# An s-expression node is either a Token or a list of nodes. Lists remember
# the position of their opening paren for error reporting.
class SList(list):
    line: int = 0
    col: int = 0


def _read_sexpr(tokens: list[Token], pos: int) -> tuple[object, int]:
    if pos >= len(tokens):
        raise PddlSyntaxError("unexpected end of input")
    tok = tokens[pos]
    if tok.text == "(":
        node = SList()
        node.line, node.col = tok.line, tok.col
        pos += 1
        while True:
            if pos >= len(tokens):
                raise PddlSyntaxError("unclosed parenthesis", tok.line, tok.col)
            if tokens[pos].text == ")":
                return node, pos + 1
            child, pos = _read_sexpr(tokens, pos)
            node.append(child)
    if tok.text == ")":
        raise PddlSyntaxError("unbalanced ')'", tok.line, tok.col)
    return tok, pos + 1


def read_sexprs(text: str) -> list[object]:
    tokens = tokenize(text)
    out = []
    pos = 0
    while pos < len(tokens):
        node, pos = _read_sexpr(tokens, pos)
        out.append(node)
    return out


def _as_symbol(node: object, what: str) -> Token:
    if not isinstance(node, Token):
        assert isinstance(node, SList)
        raise PddlSyntaxError(f"expected {what}, found a list", node.line, node.col)
    return node


def _as_list(node: object, what: str) -> SList:
    if not isinstance(node, SList):
        assert isinstance(node, Token)
        raise PddlSyntaxError(f"expected {what}, found '{node.text}'", node.line, node.col)
    return node


def _parse_typed_list(nodes: list[object], what: str) -> list[tuple[str, str]]:
    """Parse ``a b - t c d`` into (name, type) pairs; untyped entries get ``object``."""
    out: list[tuple[str, str]] = []
    pending: list[str] = []
    i = 0
    while i < len(nodes):
        tok = _as_symbol(nodes[i], what)
        if tok.text == "-":
            if not pending:
                raise PddlSyntaxError(f"dangling '-' in {what} list", tok.line, tok.col)
            if i + 1 >= len(nodes):
                raise PddlSyntaxError(f"missing type after '-' in {what} list", tok.line, tok.col)
            type_tok = nodes[i + 1]
            if isinstance(type_tok, SList):
                raise UnsupportedFeatureError("compound types ('either') are not supported",
                                              type_tok.line, type_tok.col)
            out.extend((name, type_tok.text) for name in pending)
            pending = []
            i += 2
        else:
            pending.append(tok.text)
            i += 1
    out.extend((name, "object") for name in pending)
    return out


def _parse_atom(node: object, *, variables_ok: bool) -> Atom:
    lst = _as_list(node, "an atom")
    if not lst:
        raise PddlSyntaxError("empty atom", lst.line, lst.col)
    head = _as_symbol(lst[0], "a predicate name")
    if head.text in _REJECTED_HEADS:
        raise UnsupportedFeatureError(f"'{head.text}' is not supported here",
                                      head.line, head.col)
    args = []
    for arg in lst[1:]:
        tok = _as_symbol(arg, "an atom argument")
        if tok.text.startswith("?") and not variables_ok:
            raise PddlSyntaxError(f"variable {tok.text} not allowed in a ground atom",
                                  tok.line, tok.col)
        args.append(tok.text)
    return Atom(head.text, tuple(args))


def _parse_conjunction(node: object, *, variables_ok: bool,
                       allow_not: bool) -> tuple[list[Atom], list[Atom]]:
    """Parse ``(and ...)`` or a bare atom into (positive, negative) atom lists."""
    lst = _as_list(node, "a formula")
    if not lst:
        return [], []  # () is an empty conjunction
    head = lst[0]
    if isinstance(head, Token) and head.text == "and":
        positive: list[Atom] = []
        negative: list[Atom] = []
        for child in lst[1:]:
            p, n = _parse_conjunction(child, variables_ok=variables_ok, allow_not=allow_not)
            positive.extend(p)
            negative.extend(n)
        return positive, negative
    if isinstance(head, Token) and head.text == "not":
        if not allow_not:
            raise UnsupportedFeatureError("negative conditions are not supported",
                                          head.line, head.col)
        if len(lst) != 2:
            raise PddlSyntaxError("'not' takes exactly one atom", head.line, head.col)
        return [], [_parse_atom(lst[1], variables_ok=variables_ok)]
    if isinstance(head, Token) and head.text in _REJECTED_HEADS:
        raise UnsupportedFeatureError(f"'{head.text}' is not supported", head.line, head.col)
    return [_parse_atom(lst, variables_ok=variables_ok)], []


def _sections(body: list[object], what: str) -> list[tuple[str, SList]]:
    out = []
    for node in body:
        lst = _as_list(node, f"a {what} section")
        if not lst:
            raise PddlSyntaxError(f"empty section in {what}", lst.line, lst.col)
        head = _as_symbol(lst[0], "a section keyword")
        out.append((head.text, lst))
    return out


def parse_domain(text: str) -> DomainModel:
    """Parse a PDDL domain restricted to ``:strips``/``:typing``.

    Anything outside that subset raises :class:`UnsupportedFeatureError`
    naming the construct; malformed input raises :class:`PddlSyntaxError`
    with a source position.
    """
    trees = read_sexprs(text)
    if len(trees) != 1:
        raise PddlSyntaxError("expected exactly one (define ...) form")
    tree = _as_list(trees[0], "a define form")
    if len(tree) < 2 or not isinstance(tree[0], Token) or tree[0].text != "define":
        raise PddlSyntaxError("expected (define (domain ...) ...)", tree.line, tree.col)
    head = _as_list(tree[1], "(domain NAME)")
    if len(head) != 2 or _as_symbol(head[0], "a keyword").text != "domain":
        raise PddlSyntaxError("expected (domain NAME)", head.line, head.col)
    name = _as_symbol(head[1], "a domain name").text

    types: dict[str, str | None] = {"object": None}
    predicates: dict[str, tuple[str, ...]] = {}
    schemas: dict[str, ActionSchema] = {}

    for kind, section in _sections(tree[2:], "domain"):
        if kind == ":requirements":
            for req in section[1:]:
                tok = _as_symbol(req, "a requirement")
                if tok.text not in SUPPORTED_REQUIREMENTS:
                    raise UnsupportedFeatureError(f"requirement {tok.text} is not supported",
                                                  tok.line, tok.col)
        elif kind == ":types":
            for child, parent in _parse_typed_list(section[1:], "type"):
                types[child] = parent
                types.setdefault(parent, None)
        elif kind == ":predicates":
            for decl in section[1:]:
                lst = _as_list(decl, "a predicate declaration")
                if not lst:
                    raise PddlSyntaxError("empty predicate declaration", lst.line, lst.col)
                pname = _as_symbol(lst[0], "a predicate name").text
                params = _parse_typed_list(lst[1:], "predicate parameter")
                if pname in predicates:
                    raise PddlSyntaxError(f"predicate {pname} declared twice",
                                          lst.line, lst.col)
                predicates[pname] = tuple(t for _, t in params)
        elif kind == ":action":
            schema = _parse_action(section)
            if schema.name in schemas:
                raise PddlSyntaxError(f"action {schema.name} declared twice",
                                      section.line, section.col)
            schemas[schema.name] = schema
        elif kind in (":constants", ":functions", ":axioms", ":derived"):
            raise UnsupportedFeatureError(f"{kind} sections are not supported",
                                          section.line, section.col)
        else:
            raise PddlSyntaxError(f"unknown domain section {kind}", section.line, section.col)

    try:
        return DomainModel(name=name, types=types, predicates=predicates, schemas=schemas)
    except StripsError as err:
        raise PddlError(str(err)) from err


def _parse_action(section: SList) -> ActionSchema:
    if len(section) < 2:
        raise PddlSyntaxError("action needs a name", section.line, section.col)
    name = _as_symbol(section[1], "an action name").text
    fields: dict[str, object] = {}
    i = 2
    while i < len(section):
        key = _as_symbol(section[i], "an action keyword").text
        if key not in (":parameters", ":precondition", ":effect"):
            raise UnsupportedFeatureError(f"action field {key} is not supported",
                                          section.line, section.col)
        if i + 1 >= len(section):
            raise PddlSyntaxError(f"missing value for {key}", section.line, section.col)
        fields[key] = section[i + 1]
        i += 2

    params_node = fields.get(":parameters")
    params = _parse_typed_list(list(_as_list(params_node, ":parameters"))
                               if params_node is not None else [], "parameter")

    pre: list[Atom] = []
    if ":precondition" in fields:
        pre, neg = _parse_conjunction(fields[":precondition"], variables_ok=True,
                                      allow_not=False)
        assert not neg
    add: list[Atom] = []
    delete: list[Atom] = []
    if ":effect" in fields:
        add, delete = _parse_conjunction(fields[":effect"], variables_ok=True, allow_not=True)

    try:
        return ActionSchema(name=name, params=tuple(params),
                            pre=frozenset(pre), add=frozenset(add),
                            delete=frozenset(delete))
    except StripsError as err:
        raise PddlError(f"in action {name}: {err}") from err


def parse_problem(text: str, domain: DomainModel) -> PlanningProblem:
    """Parse a PDDL problem against an already-parsed domain."""
    trees = read_sexprs(text)
    if len(trees) != 1:
        raise PddlSyntaxError("expected exactly one (define ...) form")
    tree = _as_list(trees[0], "a define form")
    if len(tree) < 2 or not isinstance(tree[0], Token) or tree[0].text != "define":
        raise PddlSyntaxError("expected (define (problem ...) ...)", tree.line, tree.col)
    head = _as_list(tree[1], "(problem NAME)")
    if len(head) != 2 or _as_symbol(head[0], "a keyword").text != "problem":
        raise PddlSyntaxError("expected (problem NAME)", head.line, head.col)
    name = _as_symbol(head[1], "a problem name").text

    objects: dict[str, str] = {}
    init: list[Atom] = []
    goal: list[Atom] = []
    saw_domain = False

    for kind, section in _sections(tree[2:], "problem"):
        if kind == ":domain":
            dname = _as_symbol(section[1], "a domain name").text
            if dname != domain.name:
                raise PddlError(f"problem requires domain {dname}, got {domain.name}",
                                section.line, section.col)
            saw_domain = True
        elif kind == ":requirements":
            for req in section[1:]:
                tok = _as_symbol(req, "a requirement")
                if tok.text not in SUPPORTED_REQUIREMENTS:
                    raise UnsupportedFeatureError(f"requirement {tok.text} is not supported",
                                                  tok.line, tok.col)
        elif kind == ":objects":
            for obj, t in _parse_typed_list(section[1:], "object"):
                if obj in objects:
                    raise PddlError(f"object {obj} declared twice", section.line, section.col)
                objects[obj] = t
        elif kind == ":init":
            for node in section[1:]:
                init.append(_parse_atom(node, variables_ok=False))
        elif kind == ":goal":
            if len(section) != 2:
                raise PddlSyntaxError(":goal takes exactly one formula",
                                      section.line, section.col)
            goal, neg = _parse_conjunction(section[1], variables_ok=False, allow_not=False)
            assert not neg
        else:
            raise PddlSyntaxError(f"unknown problem section {kind}", section.line, section.col)

    if not saw_domain:
        raise PddlSyntaxError("problem has no (:domain ...) section", tree.line, tree.col)
    try:
        return PlanningProblem(name=name, domain=domain, objects=objects,
                               init=frozenset(init), goal=frozenset(goal))
    except StripsError as err:
        raise PddlError(str(err)) from err


# ---------------------------------------------------------------------------
# Serialization. Output is canonical: lowercase symbols, sorted atoms, two
# space indent. parse(serialize(x)) == x up to the completeness tag.
# ---------------------------------------------------------------------------

def _typed_list(pairs: list[tuple[str, str]]) -> str:
    return " ".join(f"{name} - {t}" for name, t in pairs)


def domain_to_pddl(model: DomainModel) -> str:
    lines = [f"(define (domain {model.name})"]
    lines.append("  (:requirements :strips :typing)")
    declared = sorted((c, p) for c, p in model.types.items()
                      if p is not None)
    if declared:
        lines.append("  (:types " + _typed_list(declared) + ")")
    preds = []
    for pname in sorted(model.predicates):
        sig = model.predicates[pname]
        params = " ".join(f"?a{i} - {t}" for i, t in enumerate(sig))
        preds.append(f"({pname}{' ' + params if params else ''})")
    lines.append("  (:predicates " + " ".join(preds) + ")")
    for name in sorted(model.schemas):
        schema = model.schemas[name]
        lines.append(f"  (:action {name}")
        lines.append("    :parameters (" + _typed_list(list(schema.params)) + ")")
        pre = " ".join(a.pddl() for a in sorted(schema.pre))
        lines.append(f"    :precondition (and {pre})" if pre
                     else "    :precondition (and)")
        effects = [a.pddl() for a in sorted(schema.add)]
        effects += [f"(not {a.pddl()})" for a in sorted(schema.delete)]
        lines.append("    :effect (and " + " ".join(effects) + "))")
    lines.append(")")
    return "\n".join(lines) + "\n"


def problem_to_pddl(problem: PlanningProblem) -> str:
    lines = [f"(define (problem {problem.name})",
             f"  (:domain {problem.domain.name})"]
    objs = sorted(problem.objects.items())
    lines.append("  (:objects " + _typed_list(objs) + ")")
    lines.append("  (:init " + " ".join(a.pddl() for a in sorted(problem.init)) + ")")
    lines.append("  (:goal (and " + " ".join(a.pddl() for a in sorted(problem.goal)) + ")))")
    return "\n".join(lines) + "\n"
