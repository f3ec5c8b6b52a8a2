"""Formula ASTs, the text parser and the printer.

Bodies are LTL formulas whose atoms are ``var[tracevar]``. A plain LTL atom
(no trace variable) is an :class:`Atom` with ``trace_var=None``; it prints as
the bare name and is what :func:`flatten_formula` produces.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator

from .errors import FormulaSyntaxError, UnboundTraceVariable

__all__ = [
    "Formula",
    "Atom",
    "Const",
    "Not",
    "Or",
    "And",
    "Implies",
    "Iff",
    "Next",
    "Until",
    "Globally",
    "Finally",
    "Quantifier",
    "HyperLtlFormula",
    "Classification",
    "Semantics",
    "Action",
    "PropertySelector",
    "TRUE",
    "FALSE",
    "parse_formula",
    "parse_ltl",
    "print_formula",
    "classify",
    "flatten_formula",
    "next_depth",
    "subformulas",
    "atoms",
    "trace_variables",
    "is_propositional",
]


class Formula:
    """Base class of LTL body nodes."""

    __slots__ = ()

    def children(self) -> tuple:
        return ()

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    var: str
    trace_var: str | None = None


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class _Unary(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


class Not(_Unary):
    pass


class Next(_Unary):
    pass


class Globally(_Unary):
    pass


class Finally(_Unary):
    pass


class Or(_Binary):
    pass


class And(_Binary):
    pass


class Implies(_Binary):
    pass


class Iff(_Binary):
    pass


class Until(_Binary):
    pass


# dataclass(frozen=True) on the bases gives field-based eq/hash, but eq must
# also distinguish node kinds (And(a, b) != Or(a, b)).
for _cls in (Not, Next, Globally, Finally, Or, And, Implies, Iff, Until):
    dataclass(frozen=True)(_cls)


class Quantifier(enum.Enum):
    FORALL = "forall"
    EXISTS = "exists"

    def dual(self) -> "Quantifier":
        return Quantifier.EXISTS if self is Quantifier.FORALL else Quantifier.FORALL


@dataclass(frozen=True)
class HyperLtlFormula:
    prefix: tuple  # of (Quantifier, trace variable)
    body: Formula

    def __post_init__(self):
        object.__setattr__(
            self, "prefix", tuple((Quantifier(q), str(v)) for q, v in self.prefix)
        )

    @property
    def bound(self) -> frozenset:
        return frozenset(v for _, v in self.prefix)

    @property
    def free(self) -> frozenset:
        return trace_variables(self.body) - self.bound

    @property
    def is_closed(self) -> bool:
        return not self.free

    def negate(self) -> "HyperLtlFormula":
        """Negation pushed through the prefix (quantifiers dualised)."""
        return HyperLtlFormula(tuple((q.dual(), v) for q, v in self.prefix), Not(self.body))

    def __str__(self):
        return print_formula(self)


# -- traversal ---------------------------------------------------------------


def subformulas(phi: Formula) -> list:
    """Distinct subformulas, children before parents."""
    seen = {}

    def walk(f):
        if f in seen:
            return
        for c in f.children():
            walk(c)
        seen[f] = None

    walk(phi)
    return list(seen)


def atoms(phi: Formula) -> frozenset:
    return frozenset(f for f in subformulas(phi) if isinstance(f, Atom))


def trace_variables(phi: Formula) -> frozenset:
    return frozenset(a.trace_var for a in atoms(phi) if a.trace_var is not None)


def next_depth(phi: Formula) -> int:
    inner = max((next_depth(c) for c in phi.children()), default=0)
    return inner + 1 if isinstance(phi, Next) else inner


_TEMPORAL = (Next, Until, Globally, Finally)


def is_propositional(phi: Formula) -> bool:
    return not isinstance(phi, _TEMPORAL) and all(is_propositional(c) for c in phi.children())


@dataclass(frozen=True)
class Classification:
    in_globally_class: bool
    next_depth: int
    trace_var_count: int


def classify(phi) -> Classification:
    body = phi.body if isinstance(phi, HyperLtlFormula) else phi
    count = len(phi.bound) if isinstance(phi, HyperLtlFormula) else len(trace_variables(body))
    return Classification(
        in_globally_class=isinstance(body, Globally) and is_propositional(body.arg),
        next_depth=next_depth(body),
        trace_var_count=count,
    )


def flatten_formula(phi: Formula) -> Formula:
    """Rename every ``a[p]`` to the plain atom ``a_p``."""
    if isinstance(phi, Atom):
        if phi.trace_var is None:
            return phi
        return Atom(f"{phi.var}_{phi.trace_var}")
    if isinstance(phi, Const):
        return phi
    kids = tuple(flatten_formula(c) for c in phi.children())
    return type(phi)(*kids)


# -- property selectors ------------------------------------------------------


class Semantics(enum.Enum):
    POINT = "point"
    SEGMENT = "segment"


class Action(enum.Enum):
    SYNC = "sync"
    ASYNC = "async"
    HIDDEN = "hidden"


@dataclass(frozen=True)
class PropertySelector:
    semantics: Semantics
    action: Action
    x: str = "x"
    y: str = "y"
    z: str = "z"
    a: str | None = "a"

    def __post_init__(self):
        object.__setattr__(self, "semantics", Semantics(self.semantics))
        object.__setattr__(self, "action", Action(self.action))
        if self.action is not Action.HIDDEN and self.a is None:
            raise ValueError("the action variable is required unless the action is hidden")

    def required(self) -> tuple:
        names = [self.x, self.y, self.z]
        if self.action is not Action.HIDDEN:
            names.append(self.a)
        return tuple(names)


# -- lexer -------------------------------------------------------------------

_KEYWORDS = {"forall", "exists", "true", "false", "X", "G", "F", "U"}
_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<op><->|->|[|&!()\[\].=])"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "op", "ident", "kw", "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str, source=None) -> list:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(
                f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source
            )
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("op", "ident"):
            word = m.group()
            if kind == "ident" and word in _KEYWORDS:
                kind = "kw"
            out.append(_Tok(kind, word, line, pos - line_start + 1))
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text, source=None, allow_plain_atoms=False):
        self.toks = _tokenize(text, source)
        self.pos = 0
        self.source = source
        self.allow_plain = allow_plain_atoms

    @property
    def cur(self) -> _Tok:
        return self.toks[self.pos]

    def error(self, msg, tok=None):
        tok = tok or self.cur
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return FormulaSyntaxError(f"{msg}, found {found}", tok.line, tok.col, self.source)

    def at(self, text) -> bool:
        return self.cur.kind in ("op", "kw") and self.cur.text == text

    def take(self, text):
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        self.pos += 1

    def ident(self) -> str:
        if self.cur.kind != "ident":
            raise self.error("expected an identifier")
        tok = self.cur
        self.pos += 1
        return tok.text

    def sentence(self) -> HyperLtlFormula:
        prefix = []
        while self.at("forall") or self.at("exists"):
            q = Quantifier(self.cur.text)
            self.pos += 1
            prefix.append((q, self.ident()))
            self.take(".")
        body = self.ltl()
        if self.cur.kind != "eof":
            raise self.error("unexpected trailing input")
        return HyperLtlFormula(tuple(prefix), body)

    def ltl(self):
        return self._chain("<->", Iff, self._imp)

    def _imp(self):
        return self._chain("->", Implies, self._or)

    def _or(self):
        return self._chain("|", Or, self._and)

    def _and(self):
        return self._chain("&", And, self.unary)

    def _chain(self, op, node, sub):
        left = sub()
        while self.at(op):
            self.pos += 1
            left = node(left, sub())
        return left

    def unary(self):
        for op, node in (("!", Not), ("X", Next), ("G", Globally), ("F", Finally)):
            if self.at(op):
                self.pos += 1
                return node(self.unary())
        left = self.primary()
        if self.at("U"):
            self.pos += 1
            return Until(left, self.unary())
        return left

    def primary(self):
        tok = self.cur
        if self.at("("):
            self.pos += 1
            inner = self.ltl()
            self.take(")")
            return inner
        if self.at("true"):
            self.pos += 1
            return TRUE
        if self.at("false"):
            self.pos += 1
            return FALSE
        if tok.kind == "ident":
            left = self.atom()
            if self.at("="):
                self.pos += 1
                return Iff(left, self.atom())
            return left
        raise self.error("expected a formula")

    def atom(self):
        name = self.ident()
        if self.at("["):
            self.pos += 1
            tv = self.ident()
            self.take("]")
            return Atom(name, tv)
        if self.allow_plain:
            return Atom(name)
        raise self.error("expected '[' after variable name")


def parse_formula(text: str, *, allow_open=False, source=None) -> HyperLtlFormula:
    """Parse a (possibly quantifier-free) sentence.

    Raises :class:`FormulaSyntaxError` carrying line and column, and
    :class:`UnboundTraceVariable` if the body mentions an unquantified trace
    variable and ``allow_open`` is false.
    """
    phi = _Parser(text, source).sentence()
    if not allow_open and phi.free:
        raise UnboundTraceVariable(
            f"trace variable(s) {', '.join(sorted(phi.free))} not quantified"
        )
    return phi


def parse_ltl(text: str, source=None) -> Formula:
    """Parse an LTL body; bare identifiers are accepted as plain atoms."""
    p = _Parser(text, source, allow_plain_atoms=True)
    body = p.ltl()
    if p.cur.kind != "eof":
        raise p.error("unexpected trailing input")
    return body


# -- printer -----------------------------------------------------------------

_BIN = {Iff: ("<->", 1), Implies: ("->", 2), Or: ("|", 3), And: ("&", 4)}
_UN = {Not: "!", Next: "X ", Globally: "G ", Finally: "F "}


def _prec(f) -> int:
    return _BIN[type(f)][1] if type(f) in _BIN else 5


def _show(f) -> str:
    if isinstance(f, Atom):
        return f.var if f.trace_var is None else f"{f.var}[{f.trace_var}]"
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if type(f) in _UN:
        return _UN[type(f)] + _wrap(f.arg, _prec(f.arg) < 5)
    if isinstance(f, Until):
        simple = isinstance(f.left, (Atom, Const))
        return f"{_wrap(f.left, not simple)} U {_wrap(f.right, _prec(f.right) < 5)}"
    sym, p = _BIN[type(f)]
    # binary chains are left-folded; a right operand at equal precedence needs parens
    return f"{_wrap(f.left, _prec(f.left) < p)} {sym} {_wrap(f.right, _prec(f.right) <= p)}"


def _wrap(f, paren: bool) -> str:
    s = _show(f)
    return f"({s})" if paren else s


def print_formula(phi) -> str:
    if isinstance(phi, HyperLtlFormula):
        head = "".join(f"{q.value} {v}. " for q, v in phi.prefix)
        return head + _show(phi.body)
    return _show(phi)


def iter_nodes(phi: Formula) -> Iterator[Formula]:
    yield phi
    for c in phi.children():
        yield from iter_nodes(c)
