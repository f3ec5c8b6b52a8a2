"""Valuations, finite and lasso traces, and trace sets.

A lasso ``stem ; period`` denotes the infinite word ``stem period period ...``.
Lassos are kept in a canonical form (minimal period, then minimal stem) so
that structural equality coincides with equality of the infinite words, which
is what lets :class:`TraceSet` use plain set semantics.
"""

from __future__ import annotations

import math
from collections.abc import Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import (
    AlphabetMismatch,
    EmptyPosition,
    FiniteTracePresent,
    ShapeMismatch,
    UnknownVariable,
)

__all__ = [
    "Valuation",
    "Trace",
    "TraceSet",
    "ValuationSetWord",
    "index",
    "compose",
    "compose_all",
    "concat",
    "delete",
    "point_interpretation",
    "trace_set_from_pointwise",
    "restrict",
    "horizon",
    "bits_trace",
    "parse_valuation",
]


class Valuation(Mapping):
    """Immutable partial map from variable names to booleans."""

    __slots__ = ("_items", "_map", "_hash")

    def __init__(self, assignments=()):
        d = dict(assignments)
        self._items = tuple(sorted((k, bool(v)) for k, v in d.items()))
        self._map = dict(self._items)
        self._hash = hash(self._items)

    def __getitem__(self, var):
        return self._map[var]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Valuation):
            return self._items == other._items
        return NotImplemented

    def __lt__(self, other):
        return self._items < other._items

    def __repr__(self):
        body = ",".join(f"{k}={int(v)}" for k, v in self._items)
        return f"Valuation({body})"

    @property
    def domain(self) -> frozenset:
        return frozenset(self._map)

    @property
    def key(self):
        return self._items

    def update(self, var, value) -> "Valuation":
        d = dict(self._map)
        d[var] = value
        return Valuation(d)

    def compose(self, other: "Valuation") -> "Valuation":
        """``self ⊗ other``: union of domains, ``other`` wins on overlap."""
        if not other._items:
            return self
        if not self._items:
            return other
        d = dict(self._map)
        d.update(other._map)
        return Valuation(d)

    def without(self, var) -> "Valuation":
        return Valuation((k, v) for k, v in self._items if k != var)

    def project(self, keep) -> "Valuation":
        return Valuation((k, v) for k, v in self._items if k in keep)

    def rename(self, fn) -> "Valuation":
        return Valuation((fn(k), v) for k, v in self._items)

    def render(self, order: Sequence[str]) -> str:
        return "".join("1" if self._map[x] else "0" for x in order)


EMPTY_VALUATION = Valuation()


def parse_valuation(bits: str, order: Sequence[str]) -> Valuation:
    if len(bits) != len(order) or any(c not in "01" for c in bits):
        raise ValueError(f"valuation {bits!r} does not match variables {tuple(order)}")
    return Valuation(zip(order, (c == "1" for c in bits)))


def _minimal_period(period: Sequence[Hashable]) -> tuple:
    p = len(period)
    for d in range(1, p + 1):
        if p % d == 0 and all(period[i] == period[i % d] for i in range(p)):
            return tuple(period[:d])
    return tuple(period)  # unreachable


def _canonical_lasso(stem: Sequence[Hashable], period: Sequence[Hashable]):
    period = list(_minimal_period(period))
    stem = list(stem)
    while stem and stem[-1] == period[-1]:
        stem.pop()
        period = [period[-1]] + period[:-1]
    return tuple(stem), tuple(period)


@dataclass(frozen=True)
class Trace:
    """A finite trace (``period is None``) or a canonical lasso."""

    stem: tuple
    period: tuple | None
    variables: frozenset

    def __post_init__(self):
        stem = tuple(self.stem)
        period = None if self.period is None else tuple(self.period)
        if period is not None:
            if not period:
                raise ValueError("lasso period must be nonempty")
            stem, period = _canonical_lasso(stem, period)
        variables = frozenset(self.variables)
        for v in stem + (period or ()):
            if v.domain != variables:
                raise AlphabetMismatch(
                    f"valuation over {sorted(v.domain)} in trace over {sorted(variables)}"
                )
        object.__setattr__(self, "stem", stem)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "variables", variables)

    @classmethod
    def finite(cls, valuations: Iterable[Valuation], variables=None) -> "Trace":
        vals = tuple(valuations)
        if variables is None:
            if not vals:
                raise ValueError("variables required for the empty trace")
            variables = vals[0].domain
        return cls(vals, None, variables)

    @classmethod
    def lasso(cls, stem: Iterable[Valuation], period: Iterable[Valuation], variables=None) -> "Trace":
        stem, period = tuple(stem), tuple(period)
        if variables is None:
            variables = (stem + period)[0].domain if stem + period else frozenset()
        return cls(stem, period, variables)

    @property
    def is_lasso(self) -> bool:
        return self.period is not None

    @property
    def length(self):
        """``len`` for finite traces, ``math.inf`` for lassos."""
        return math.inf if self.is_lasso else len(self.stem)

    @property
    def sort_key(self):
        return (
            self.is_lasso,
            tuple(v.key for v in self.stem),
            tuple(v.key for v in self.period or ()),
        )

    def __getitem__(self, i: int):
        return index(self, i)

    def letters(self) -> frozenset:
        return frozenset(self.stem + (self.period or ()))

    def unroll(self, n: int) -> tuple:
        """First ``n`` valuations (fewer if the trace is finite and shorter)."""
        if not self.is_lasso:
            return self.stem[:n]
        s, p = self.stem, self.period
        if n <= len(s):
            return s[:n]
        k = n - len(s)
        return s + p * (k // len(p)) + p[: k % len(p)]

    def prefix(self, i: int) -> "Trace":
        """``τ[…i]``: the finite trace of the first ``i`` valuations."""
        return Trace(self.unroll(i), None, self.variables)

    def suffix(self, i: int) -> "Trace":
        """``τ[i…]``; the empty finite trace when ``i`` exceeds a finite length."""
        if not self.is_lasso:
            return Trace(self.stem[i:], None, self.variables)
        if i < len(self.stem):
            return Trace(self.stem[i:], self.period, self.variables)
        r = (i - len(self.stem)) % len(self.period)
        return Trace((), self.period[r:] + self.period[:r], self.variables)

    def without(self, var) -> "Trace":
        return Trace(
            tuple(v.without(var) for v in self.stem),
            None if self.period is None else tuple(v.without(var) for v in self.period),
            self.variables - {var},
        )

    def project(self, keep) -> "Trace":
        keep = frozenset(keep)
        return Trace(
            tuple(v.project(keep) for v in self.stem),
            None if self.period is None else tuple(v.project(keep) for v in self.period),
            self.variables & keep,
        )

    def rename(self, fn) -> "Trace":
        return Trace(
            tuple(v.rename(fn) for v in self.stem),
            None if self.period is None else tuple(v.rename(fn) for v in self.period),
            frozenset(fn(x) for x in self.variables),
        )

    def render(self, order: Sequence[str]) -> str:
        stem = " ".join(v.render(order) for v in self.stem)
        if not self.is_lasso:
            return stem
        period = " ".join(v.render(order) for v in self.period)
        return f"{stem} ; {period}".strip()

    def __repr__(self):
        order = sorted(self.variables)
        return f"Trace({self.render(order)!r} over {tuple(order)})"


def bits_trace(order: Sequence[str], stem, period=None) -> Trace:
    """Build a trace from bit strings, e.g. ``bits_trace("xy", "00 10", "11")``.

    ``stem``/``period`` are whitespace-separated tokens, one per valuation;
    with a single variable an unbroken string such as ``"0110"`` is accepted.
    ``period=None`` gives a finite trace.
    """
    order = tuple(order)

    def tokens(s):
        if isinstance(s, str):
            parts = s.split()
            if len(order) == 1 and len(parts) == 1 and len(parts[0]) > 1:
                parts = list(parts[0])
            return parts
        return list(s)

    stem_vals = [parse_valuation(b, order) for b in tokens(stem)]
    if period is None:
        return Trace(tuple(stem_vals), None, frozenset(order))
    return Trace(tuple(stem_vals), tuple(parse_valuation(b, order) for b in tokens(period)), frozenset(order))


def index(t: Trace, i: int):
    """``τ[i]``, or ``None`` when a finite trace is undefined at ``i``."""
    if i < len(t.stem):
        return t.stem[i]
    if t.period is None:
        return None
    return t.period[(i - len(t.stem)) % len(t.period)]


def _is_neutral(t: Trace) -> bool:
    return t.is_lasso and not t.variables


def compose(t: Trace, u: Trace) -> Trace:
    """Pointwise ``τ ⊗ τ'``.

    Lassos are co-normalised to a common stem (max of the stems) and period
    (lcm of the periods) first. The constant empty-alphabet lasso is neutral.
    """
    if _is_neutral(u):
        return t
    if _is_neutral(t):
        return u
    variables = t.variables | u.variables
    if t.is_lasso and u.is_lasso:
        s = max(len(t.stem), len(u.stem))
        p = math.lcm(len(t.period), len(u.period))
        word = [a.compose(b) for a, b in zip(t.unroll(s + p), u.unroll(s + p))]
        return Trace(tuple(word[:s]), tuple(word[s:]), variables)
    if not t.is_lasso and not u.is_lasso:
        if len(t.stem) != len(u.stem):
            raise ShapeMismatch(f"finite traces of lengths {len(t.stem)} and {len(u.stem)}")
        return Trace(tuple(a.compose(b) for a, b in zip(t.stem, u.stem)), None, variables)
    raise ShapeMismatch("cannot compose a finite trace with a lasso")


def compose_all(traces: Iterable[Trace]) -> Trace:
    """Fold :func:`compose` over lassos in one co-normalisation pass."""
    traces = list(traces)
    if not traces:
        return Trace((), (EMPTY_VALUATION,), frozenset())
    if not all(t.is_lasso for t in traces):
        out = traces[0]
        for t in traces[1:]:
            out = compose(out, t)
        return out
    s = max(len(t.stem) for t in traces)
    p = math.lcm(*(len(t.period) for t in traces))
    columns = [t.unroll(s + p) for t in traces]
    word = []
    for letters in zip(*columns):
        d = {}
        for v in letters:
            d.update(v._map)
        word.append(Valuation(d))
    variables = frozenset().union(*(t.variables for t in traces))
    return Trace(tuple(word[:s]), tuple(word[s:]), variables)


def concat(prefix: Trace, rest: Trace) -> Trace:
    """Finite ``prefix`` followed by ``rest``."""
    if prefix.is_lasso:
        raise ShapeMismatch("only a finite trace can be a prefix")
    if prefix.stem and rest.variables != prefix.variables:
        raise AlphabetMismatch("concatenated traces have different alphabets")
    return Trace(prefix.stem + rest.stem, rest.period, rest.variables)


def delete(t: Trace, j: int) -> Trace:
    """``τ[…j] τ[j+1…]``: the trace with position ``j`` removed."""
    if not t.is_lasso and j >= len(t.stem):
        return t
    return concat(t.prefix(j), t.suffix(j + 1))


@dataclass(frozen=True)
class TraceSet:
    """Finite set of traces over a shared, ordered alphabet.

    ``labels`` optionally names member traces for reporting; it does not take
    part in equality.
    """

    alphabet: tuple
    traces: frozenset
    labels: Mapping = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        alphabet = tuple(self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise ValueError(f"duplicate variables in {alphabet}")
        traces = frozenset(self.traces)
        varset = frozenset(alphabet)
        for t in traces:
            if t.variables != varset:
                raise AlphabetMismatch(
                    f"trace over {sorted(t.variables)} in a set over {list(alphabet)}"
                )
        labels = {t: name for t, name in (self.labels or {}).items() if t in traces}
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "traces", traces)
        object.__setattr__(self, "labels", MappingProxyType(labels))

    @classmethod
    def from_named(cls, alphabet, named: Mapping[str, Trace]) -> "TraceSet":
        labels = {}
        for name, t in named.items():
            labels.setdefault(t, name)
        return cls(tuple(alphabet), frozenset(named.values()), labels)

    def __iter__(self) -> Iterator[Trace]:
        return iter(self.ordered)

    def __len__(self):
        return len(self.traces)

    def __contains__(self, t):
        return t in self.traces

    @property
    def ordered(self) -> tuple:
        cached = self.__dict__.get("_ordered")
        if cached is None:
            cached = tuple(sorted(self.traces, key=lambda t: t.sort_key))
            object.__setattr__(self, "_ordered", cached)
        return cached

    def label(self, t: Trace) -> str:
        if t in self.labels:
            return self.labels[t]
        return f"#{self.ordered.index(t)}"

    def named(self) -> dict:
        return {self.label(t): t for t in self.ordered}

    @property
    def lasso_only(self) -> bool:
        return all(t.is_lasso for t in self.traces)

    @property
    def max_stem(self) -> int:
        return max((len(t.stem) for t in self.traces), default=0)

    @property
    def lcm_periods(self) -> int:
        return math.lcm(*(len(t.period) for t in self.traces if t.is_lasso)) if any(
            t.is_lasso for t in self.traces
        ) else 1

    @property
    def horizon(self) -> int:
        return self.max_stem + self.lcm_periods

    def with_traces(self, traces, labels=None) -> "TraceSet":
        return TraceSet(self.alphabet, frozenset(traces), labels)

    def check_variable(self, var):
        if var not in self.alphabet:
            raise UnknownVariable(f"{var!r} not in alphabet {list(self.alphabet)}")

    def render(self) -> str:
        lines = [f"vars: {' '.join(self.alphabet)}"]
        for t in self.ordered:
            lines.append(f"trace {self.label(t)}: {t.render(self.alphabet)}".rstrip())
        return "\n".join(lines) + "\n"


def horizon(T: TraceSet) -> int:
    return T.horizon


def restrict(T: TraceSet, drop: str) -> TraceSet:
    """``T|_a``: remove ``drop`` from every valuation (traces may merge)."""
    T.check_variable(drop)
    labels = {}
    traces = []
    for t in T.ordered:
        r = t.without(drop)
        traces.append(r)
        labels.setdefault(r, T.label(t))
    return TraceSet(tuple(x for x in T.alphabet if x != drop), frozenset(traces), labels)


@dataclass(frozen=True)
class ValuationSetWord:
    """Ultimately periodic word whose letters are nonempty sets of valuations."""

    alphabet: tuple
    stem: tuple
    period: tuple

    def __post_init__(self):
        stem = tuple(frozenset(m) for m in self.stem)
        period = tuple(frozenset(m) for m in self.period)
        if not period:
            raise ValueError("period must be nonempty")
        for j, m in enumerate(stem + period):
            if not m:
                raise EmptyPosition(f"position {j} has no valuations")
        stem, period = _canonical_lasso(stem, period)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "stem", stem)
        object.__setattr__(self, "period", period)

    def __getitem__(self, j: int) -> frozenset:
        if j < len(self.stem):
            return self.stem[j]
        return self.period[(j - len(self.stem)) % len(self.period)]

    def letter_sets(self) -> frozenset:
        return frozenset(self.stem + self.period)

    def render(self) -> str:
        def one(m):
            return "{" + ",".join(sorted(v.render(self.alphabet) for v in m)) + "}"

        stem = " ".join(one(m) for m in self.stem)
        period = " ".join(one(m) for m in self.period)
        return f"{stem} ({period})^w".strip()


def point_interpretation(T: TraceSet) -> ValuationSetWord:
    """``T[0] T[1] …`` with ``T[j] = {τ[j] | τ ∈ T}``."""
    if not T.traces:
        raise ValueError("point interpretation of an empty trace set")
    if not T.lasso_only:
        raise FiniteTracePresent("point interpretation needs infinite traces")
    s, p = T.max_stem, T.lcm_periods
    cols = [t.unroll(s + p) for t in T.ordered]
    word = [frozenset(col[j] for col in cols) for j in range(s + p)]
    return ValuationSetWord(T.alphabet, tuple(word[:s]), tuple(word[s:]))


def trace_set_from_pointwise(M: ValuationSetWord) -> TraceSet:
    """Trace set whose point interpretation is ``M``.

    Trace ``k`` takes, at position ``j``, the ``k mod |M_j|``-th valuation of
    ``M_j`` in string order. Enough traces are emitted to cover the largest
    letter set, and at least one per distinct letter set.
    """
    order = M.alphabet
    positions = M.stem + M.period
    for j, m in enumerate(positions):
        if not m:
            raise EmptyPosition(f"position {j} has no valuations")
    count = max(len(M.letter_sets()), max(len(m) for m in positions))
    sorted_sets = [sorted(m, key=lambda v: v.render(order)) for m in positions]
    s = len(M.stem)
    traces = []
    for k in range(count):
        word = [vals[k % len(vals)] for vals in sorted_sets]
        traces.append(Trace(tuple(word[:s]), tuple(word[s:]), frozenset(order)))
    return TraceSet(order, frozenset(traces))
