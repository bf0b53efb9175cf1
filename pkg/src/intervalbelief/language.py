"""S-expression rule and fact language.

Rules::

    (r1 (if (and (cloudy-sky) (humid)))
        (then (infer (rain) with (0.4 0.9)))
        (corr 0.5)            ; optional, default 0
        (source radar))       ; optional, default = rule id

Facts::

    (fact (cloudy-sky) (0.88 0.90))

Tokens prefixed with ``?`` are match variables. ``;`` comments run to end
of line. ``and``, ``or``, ``not`` and ``fact`` are reserved words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import ParseError, UsageError
from .intervals import Interval, check_corr

__all__ = [
    "Constant", "Variable", "Term", "Pattern", "Atom",
    "Cond", "Not", "And", "Or", "LhsExpr",
    "Rule", "FactDecl",
    "parse_rules", "parse_facts", "parse_program", "parse_pattern",
    "parse_interval", "render", "render_pattern", "render_interval",
    "lhs_conditions", "lhs_variables",
]

RESERVED = frozenset({"and", "or", "not", "fact"})
MAX_DEPTH = 256

_SYMBOL_RE = re.compile(r"[A-Za-z0-9_-]+\Z")
_VARIABLE_RE = re.compile(r"\?[A-Za-z0-9_-]+\Z")
_NUMBER_RE = re.compile(r"[-+]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?\Z")


# --------------------------------------------------------------------- AST

@dataclass(frozen=True, slots=True)
class Constant:
    symbol: str

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True, slots=True)
class Variable:
    name: str  # includes the leading '?'

    def __str__(self) -> str:
        return self.name


Term = Union[Constant, Variable]


@dataclass(frozen=True, slots=True)
class Pattern:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.args if isinstance(a, Variable))

    @property
    def is_ground(self) -> bool:
        return all(isinstance(a, Constant) for a in self.args)

    def __str__(self) -> str:
        return render_pattern(self)


@dataclass(frozen=True, slots=True, order=True)
class Atom:
    """A ground proposition. Arguments are plain constant symbols."""

    predicate: str
    args: tuple[str, ...] = ()

    def as_pattern(self) -> Pattern:
        return Pattern(self.predicate, tuple(Constant(a) for a in self.args))

    def __str__(self) -> str:
        return "(" + " ".join((self.predicate, *self.args)) + ")"


@dataclass(frozen=True, slots=True)
class Cond:
    pattern: Pattern


@dataclass(frozen=True, slots=True)
class Not:
    child: "LhsExpr"


@dataclass(frozen=True, slots=True)
class And:
    children: tuple["LhsExpr", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise UsageError("'and' needs at least two operands")


@dataclass(frozen=True, slots=True)
class Or:
    children: tuple["LhsExpr", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise UsageError("'or' needs at least two operands")


LhsExpr = Union[Cond, Not, And, Or]


def lhs_conditions(expr: LhsExpr) -> list[Pattern]:
    """All condition patterns of a tree, left to right, negated ones included."""
    out: list[Pattern] = []
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Cond):
            out.append(node.pattern)
        elif isinstance(node, Not):
            stack.append(node.child)
        else:
            stack.extend(reversed(node.children))
    return out


def lhs_variables(expr: LhsExpr) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for p in lhs_conditions(expr):
        for v in p.variables:
            seen.setdefault(v)
    return tuple(seen)


@dataclass(frozen=True)
class Rule:
    id: str
    lhs: LhsExpr
    conclusion: Pattern
    strength: Interval
    corr: float = 0.0
    source: str = field(default="")

    def __post_init__(self):
        object.__setattr__(self, "corr", check_corr(self.corr))
        if not self.source:
            object.__setattr__(self, "source", self.id)
        unbound = set(self.conclusion.variables) - set(lhs_variables(self.lhs))
        if unbound:
            raise UsageError(
                f"conclusion variable(s) {', '.join(sorted(unbound))} do not occur in the if-part")


@dataclass(frozen=True)
class FactDecl:
    atom: Atom
    belief: Interval


# ------------------------------------------------------------------- lexer

@dataclass(frozen=True, slots=True)
class _Tok:
    text: str
    line: int
    col: int


@dataclass(slots=True)
class _List:
    items: list
    line: int
    col: int


def _tokens(text: str) -> Iterator[_Tok]:
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c in " \t\r\f\v":
            i += 1
            col += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield _Tok(c, line, col)
            i += 1
            col += 1
        else:
            start, scol = i, col
            while i < n and text[i] not in " \t\r\n\f\v();":
                i += 1
                col += 1
            yield _Tok(text[start:i], line, scol)


def _read_forms(text: str) -> list:
    """Read top-level s-expressions into nested ``_List``/``_Tok`` values."""
    stack: list[_List] = []
    forms: list = []
    for tok in _tokens(text):
        if tok.text == "(":
            if len(stack) >= MAX_DEPTH:
                raise ParseError(f"nesting deeper than {MAX_DEPTH}", tok.line, tok.col)
            stack.append(_List([], tok.line, tok.col))
        elif tok.text == ")":
            if not stack:
                raise ParseError("unbalanced ')'", tok.line, tok.col)
            done = stack.pop()
            (stack[-1].items if stack else forms).append(done)
        else:
            if not stack:
                raise ParseError(f"unexpected token {tok.text!r} outside a form", tok.line, tok.col)
            stack[-1].items.append(tok)
    if stack:
        open_ = stack[-1]
        raise ParseError("unbalanced '(': missing ')'", open_.line, open_.col)
    return forms


def _decode(text) -> str:
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not valid UTF-8 (byte offset {e.start})") from None
    if hasattr(text, "read"):
        return _decode(text.read())
    if not isinstance(text, str):
        raise ParseError(f"cannot parse object of type {type(text).__name__}")
    return text


# ------------------------------------------------------------------ parser

class _Parser:
    def __init__(self):
        self.rule_id: str | None = None

    def fail(self, msg: str, node) -> ParseError:
        return ParseError(msg, getattr(node, "line", None), getattr(node, "col", None), self.rule_id)

    def symbol(self, node, what: str) -> str:
        if not isinstance(node, _Tok) or not _SYMBOL_RE.match(node.text):
            raise self.fail(f"expected {what} symbol", node)
        return node.text

    def number(self, node, what: str) -> float:
        if not isinstance(node, _Tok) or not _NUMBER_RE.match(node.text):
            raise self.fail(f"bad number for {what}", node)
        return float(node.text)

    def interval(self, node) -> Interval:
        if not isinstance(node, _List) or len(node.items) != 2:
            raise self.fail("interval must be a list of two numbers, e.g. (0.4 0.9)", node)
        lo = self.number(node.items[0], "interval lower bound")
        hi = self.number(node.items[1], "interval upper bound")
        try:
            return Interval(lo, hi)
        except UsageError as e:
            raise self.fail(str(e), node) from None

    def pattern(self, node) -> Pattern:
        if not isinstance(node, _List) or not node.items:
            raise self.fail("expected a pattern like (pred arg ...)", node)
        head, *rest = node.items
        pred = self.symbol(head, "predicate")
        if pred in RESERVED:
            raise self.fail(f"{pred!r} is reserved and cannot be a predicate", head)
        args: list[Term] = []
        for a in rest:
            if isinstance(a, _Tok) and _VARIABLE_RE.match(a.text):
                args.append(Variable(a.text))
            elif isinstance(a, _Tok) and _SYMBOL_RE.match(a.text):
                args.append(Constant(a.text))
            else:
                raise self.fail("pattern arguments must be symbols or ?variables", a)
        return Pattern(pred, tuple(args))

    def lhs(self, node) -> LhsExpr:
        if not isinstance(node, _List) or not node.items:
            raise self.fail("expected a condition", node)
        head = node.items[0]
        op = head.text if isinstance(head, _Tok) else None
        if op == "not":
            if len(node.items) != 2:
                raise self.fail("'not' takes exactly one operand", node)
            return Not(self.lhs(node.items[1]))
        if op in ("and", "or"):
            if len(node.items) < 3:
                raise self.fail(f"'{op}' needs at least two operands", node)
            kids = tuple(self.lhs(k) for k in node.items[1:])
            return And(kids) if op == "and" else Or(kids)
        return Cond(self.pattern(node))

    def keyword(self, node, word: str, arity: int | None = None) -> list:
        if (not isinstance(node, _List) or not node.items
                or not isinstance(node.items[0], _Tok) or node.items[0].text != word):
            raise self.fail(f"expected ({word} ...)", node)
        if arity is not None and len(node.items) - 1 != arity:
            raise self.fail(f"({word} ...) takes {arity} element(s)", node)
        return node.items[1:]

    def rule(self, form: _List) -> Rule:
        self.rule_id = None
        rid = self.symbol(form.items[0], "rule id")
        if rid in RESERVED:
            raise self.fail(f"{rid!r} is reserved and cannot be a rule id", form.items[0])
        self.rule_id = rid
        if len(form.items) < 3:
            raise self.fail("rule needs (if ...) and (then ...) clauses", form)
        (lhs_node,) = self.keyword(form.items[1], "if", 1)
        lhs = self.lhs(lhs_node)
        (infer,) = self.keyword(form.items[2], "then", 1)
        parts = self.keyword(infer, "infer", 3)
        conclusion = self.pattern(parts[0])
        if not isinstance(parts[1], _Tok) or parts[1].text != "with":
            raise self.fail("expected 'with' between conclusion and interval", parts[1])
        strength = self.interval(parts[2])

        opts: dict[str, object] = {}
        for clause in form.items[3:]:
            head = clause.items[0] if isinstance(clause, _List) and clause.items else None
            word = head.text if isinstance(head, _Tok) else None
            if word not in ("corr", "source"):
                raise self.fail("expected optional (corr x) or (source name) clause", clause)
            if word in opts:
                raise self.fail(f"duplicate ({word} ...) clause", clause)
            (val,) = self.keyword(clause, word, 1)
            if word == "corr":
                c = self.number(val, "correlation")
                if not -1.0 <= c <= 1.0:
                    raise self.fail(f"correlation {c!r} outside [-1, 1]", val)
                opts["corr"] = c
            else:
                opts["source"] = self.symbol(val, "source")
        try:
            return Rule(rid, lhs, conclusion, strength, **opts)
        except UsageError as e:
            raise self.fail(str(e), form) from None

    def fact(self, form: _List) -> FactDecl:
        self.rule_id = None
        if len(form.items) != 3:
            raise self.fail("fact must be (fact (pred args...) (lower upper))", form)
        pat = self.pattern(form.items[1])
        if not pat.is_ground:
            raise self.fail(f"fact {render_pattern(pat)} is not ground", form.items[1])
        atom = Atom(pat.predicate, tuple(a.symbol for a in pat.args))
        return FactDecl(atom, self.interval(form.items[2]))


def parse_program(text) -> tuple[list[Rule], list[FactDecl]]:
    """Parse a stream that may mix rules and ``(fact ...)`` forms."""
    forms = _read_forms(_decode(text))
    p = _Parser()
    rules: list[Rule] = []
    facts: list[FactDecl] = []
    rule_ids: set[str] = set()
    fact_atoms: set[Atom] = set()
    for form in forms:
        if not form.items:
            raise ParseError("empty form", form.line, form.col)
        head = form.items[0]
        if isinstance(head, _Tok) and head.text == "fact":
            f = p.fact(form)
            if f.atom in fact_atoms:
                raise ParseError(f"duplicate fact {f.atom}", form.line, form.col)
            fact_atoms.add(f.atom)
            facts.append(f)
        else:
            r = p.rule(form)
            if r.id in rule_ids:
                raise ParseError("duplicate rule id", form.line, form.col, r.id)
            rule_ids.add(r.id)
            rules.append(r)
    return rules, facts


def parse_rules(text) -> list[Rule]:
    rules, facts = parse_program(text)
    if facts:
        raise ParseError("fact declarations are not allowed in a rule stream")
    return rules


def parse_facts(text) -> list[FactDecl]:
    rules, facts = parse_program(text)
    if rules:
        raise ParseError("rule definitions are not allowed in a fact stream", rule_id=rules[0].id)
    return facts


def parse_pattern(text: str) -> Pattern:
    forms = _read_forms(_decode(text))
    if len(forms) != 1:
        raise ParseError("expected exactly one pattern")
    return _Parser().pattern(forms[0])


def parse_interval(text: str) -> Interval:
    forms = _read_forms(_decode(text))
    if len(forms) != 1:
        raise ParseError("expected exactly one interval like (0.4 0.9)")
    return _Parser().interval(forms[0])


# ------------------------------------------------------------------ render

def _num(x: float) -> str:
    # repr round-trips exactly; pad to two decimals for readability.
    s = repr(float(x))
    if "e" in s or "E" in s:
        return s
    whole, _, frac = s.partition(".")
    return f"{whole}.{frac.ljust(2, '0')}"


def render_interval(i: Interval) -> str:
    return f"({_num(i.lower)} {_num(i.upper)})"


def render_pattern(p: Pattern) -> str:
    return "(" + " ".join([p.predicate, *(str(a) for a in p.args)]) + ")"


def _render_lhs(e: LhsExpr) -> str:
    if isinstance(e, Cond):
        return render_pattern(e.pattern)
    if isinstance(e, Not):
        return f"(not {_render_lhs(e.child)})"
    op = "and" if isinstance(e, And) else "or"
    return "(" + " ".join([op, *(_render_lhs(c) for c in e.children)]) + ")"


def render(obj) -> str:
    """Canonical text of a rule or fact; parsing it back gives an equal value."""
    if isinstance(obj, FactDecl):
        return f"(fact {obj.atom} {render_interval(obj.belief)})"
    if isinstance(obj, Rule):
        s = (f"({obj.id} (if {_render_lhs(obj.lhs)}) "
             f"(then (infer {render_pattern(obj.conclusion)} with {render_interval(obj.strength)}))")
        if obj.corr != 0.0:
            s += f" (corr {_num(obj.corr)})"
        if obj.source != obj.id:
            s += f" (source {obj.source})"
        return s + ")"
    raise TypeError(f"cannot render {type(obj).__name__}")
