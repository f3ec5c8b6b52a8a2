"""Seeded random instances for differential checks and benchmarks."""

from __future__ import annotations

import random

from .syntax import (
    FALSE,
    TRUE,
    And,
    Atom,
    Finally,
    Globally,
    HyperLtlFormula,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Quantifier,
    Until,
)
from .traces import Trace, TraceSet, Valuation, ValuationSetWord

__all__ = [
    "random_valuation",
    "random_lasso",
    "random_trace_set",
    "random_sync_trace_set",
    "random_ltl",
    "random_propositional",
    "random_sentence",
    "random_globally_sentence",
    "random_valuation_set_word",
]


def random_valuation(rng: random.Random, order) -> Valuation:
    return Valuation((x, rng.random() < 0.5) for x in order)


def random_lasso(rng, order, max_stem=3, max_period=2) -> Trace:
    stem = [random_valuation(rng, order) for _ in range(rng.randint(0, max_stem))]
    period = [random_valuation(rng, order) for _ in range(rng.randint(1, max_period))]
    return Trace(tuple(stem), tuple(period), frozenset(order))


def random_trace_set(rng, order=("a", "x", "y", "z"), max_size=4, max_stem=3, max_period=2) -> TraceSet:
    k = rng.randint(1, max_size)
    return TraceSet(tuple(order), frozenset(random_lasso(rng, order, max_stem, max_period) for _ in range(k)))


_BINARY = (Or, And, Implies, Iff)
_TEMPORAL_UNARY = (Next, Globally, Finally)


def random_ltl(rng, atoms, depth=4, max_next=None):
    """Random body over the given atom nodes; ``max_next`` caps ``X`` nesting."""
    if depth <= 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.06:
            return TRUE
        if r < 0.12:
            return FALSE
        return rng.choice(atoms)
    choice = rng.random()
    if choice < 0.15:
        return Not(random_ltl(rng, atoms, depth - 1, max_next))
    if choice < 0.45:
        op = rng.choice(_BINARY)
        return op(random_ltl(rng, atoms, depth - 1, max_next), random_ltl(rng, atoms, depth - 1, max_next))
    if choice < 0.6:
        return Until(random_ltl(rng, atoms, depth - 1, max_next), random_ltl(rng, atoms, depth - 1, max_next))
    op = rng.choice(_TEMPORAL_UNARY)
    if op is Next:
        if max_next is not None and max_next <= 0:
            op = rng.choice((Globally, Finally))
        else:
            nxt = None if max_next is None else max_next - 1
            return Next(random_ltl(rng, atoms, depth - 1, nxt))
    return op(random_ltl(rng, atoms, depth - 1, max_next))


def random_propositional(rng, atoms, depth=3):
    if depth <= 0 or rng.random() < 0.25:
        return rng.choice(atoms)
    if rng.random() < 0.2:
        return Not(random_propositional(rng, atoms, depth - 1))
    op = rng.choice(_BINARY)
    return op(random_propositional(rng, atoms, depth - 1), random_propositional(rng, atoms, depth - 1))


def _prefix(rng, count):
    names = [f"p{i}" for i in range(1, count + 1)]
    return tuple((rng.choice(list(Quantifier)), v) for v in names), names


def random_sentence(rng, variables, max_quantifiers=2, depth=4, max_next=None) -> HyperLtlFormula:
    prefix, names = _prefix(rng, rng.randint(1, max_quantifiers))
    atoms = [Atom(a, p) for a in variables for p in names]
    return HyperLtlFormula(prefix, random_ltl(rng, atoms, depth, max_next))


def random_globally_sentence(rng, variables, max_quantifiers=2, depth=3) -> HyperLtlFormula:
    prefix, names = _prefix(rng, rng.randint(1, max_quantifiers))
    atoms = [Atom(a, p) for a in variables for p in names]
    return HyperLtlFormula(prefix, Globally(random_propositional(rng, atoms, depth)))


def random_valuation_set_word(rng, order, max_per_position=4, max_horizon=8) -> ValuationSetWord:
    total = rng.randint(1, max_horizon)
    stem_len = rng.randint(0, total - 1)
    universe = [Valuation(zip(order, (bool(b >> i & 1) for i in range(len(order))))) for b in range(2 ** len(order))]

    def letter():
        k = rng.randint(1, min(max_per_position, len(universe)))
        return frozenset(rng.sample(universe, k))

    word = [letter() for _ in range(total)]
    return ValuationSetWord(tuple(order), tuple(word[:stem_len]), tuple(word[stem_len:]))


def random_sync_trace_set(rng, order=("a", "x", "y", "z"), max_size=4, max_stem=3, max_period=2, action="a") -> TraceSet:
    """Like :func:`random_trace_set`, but ``action`` first holds at one common time.

    The other variables come from a small pool of letters so that
    independence holds reasonably often.
    """
    k = rng.randint(1, max_size)
    j = rng.randint(0, max_stem)
    rest = [x for x in order if x != action]
    pool = [Valuation((x, rng.random() < 0.5) for x in rest) for _ in range(rng.randint(1, 3))]
    traces = set()
    for _ in range(k):
        stem_len = rng.randint(j, max_stem)
        p = rng.randint(1, max_period)
        word = []
        for i in range(stem_len + p):
            base = rng.choice(pool)
            a = i == j or (i > j and rng.random() < 0.5)
            word.append(base.update(action, a))
        if j >= stem_len and not word[j][action]:
            word[j] = word[j].update(action, True)
        traces.add(Trace(tuple(word[:stem_len]), tuple(word[stem_len:]), frozenset(order)))
    return TraceSet(tuple(order), frozenset(traces))
