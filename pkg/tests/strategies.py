"""Hypothesis strategies for traces, trace sets and formulas."""

from hypothesis import strategies as st

from hypertrace.syntax import (
    And,
    Atom,
    Const,
    Finally,
    Globally,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Until,
)
from hypertrace.traces import Trace, TraceSet, Valuation


def valuations(order):
    return st.tuples(*[st.booleans() for _ in order]).map(lambda bits: Valuation(zip(order, bits)))


@st.composite
def lassos(draw, order=("a",), max_stem=3, max_period=3):
    stem = draw(st.lists(valuations(order), max_size=max_stem))
    period = draw(st.lists(valuations(order), min_size=1, max_size=max_period))
    return Trace(tuple(stem), tuple(period), frozenset(order))


@st.composite
def finite_traces(draw, order=("a",), max_len=4):
    word = draw(st.lists(valuations(order), max_size=max_len))
    return Trace(tuple(word), None, frozenset(order))


@st.composite
def lasso_sets(draw, order=("x", "y"), max_size=4, max_stem=3, max_period=2):
    ts = draw(st.lists(lassos(order, max_stem, max_period), min_size=1, max_size=max_size))
    return TraceSet(tuple(order), frozenset(ts))


@st.composite
def mixed_sets(draw, order=("x", "y"), max_size=4):
    ts = draw(
        st.lists(st.one_of(lassos(order, 3, 2), finite_traces(order, 4)), min_size=1, max_size=max_size)
    )
    return TraceSet(tuple(order), frozenset(ts))


def formulas(atom_nodes, max_leaves=12):
    leaves = st.one_of(st.sampled_from(atom_nodes), st.sampled_from([Const(True), Const(False)]))

    def extend(inner):
        unary = st.sampled_from([Not, Next, Globally, Finally])
        binary = st.sampled_from([Or, And, Implies, Iff, Until])
        return st.one_of(
            st.builds(lambda op, a: op(a), unary, inner),
            st.builds(lambda op, a, b: op(a, b), binary, inner, inner),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def plain_atoms(names):
    return [Atom(n) for n in names]
