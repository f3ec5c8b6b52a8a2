import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypertrace.errors import AlphabetMismatch, EmptyPosition, FiniteTracePresent, ShapeMismatch, UnknownVariable
from hypertrace.families import async_family
from hypertrace.generators import random_valuation_set_word
from hypertrace.traces import (
    Trace,
    TraceSet,
    Valuation,
    ValuationSetWord,
    bits_trace,
    compose,
    delete,
    index,
    point_interpretation,
    restrict,
    trace_set_from_pointwise,
)

from strategies import finite_traces, lassos, lasso_sets, valuations


def v(**kw):
    return Valuation(kw)


def test_valuation_render_and_compose():
    a = v(x=1, y=0)
    assert a.render(("x", "y")) == "10"
    b = v(y=1, z=0)
    c = a.compose(b)
    assert c.domain == {"x", "y", "z"}
    assert c["y"] is True and c["x"] is True


@given(valuations(("x", "y")), valuations(("y", "z")))
def test_composition_agrees_with_right_operand(a, b):
    c = a.compose(b)
    assert c.domain == a.domain | b.domain
    assert all(c[k] == b[k] for k in b.domain)
    assert len(c.render(sorted(c.domain))) == len(c.domain)


def test_index_examples():
    t = bits_trace("a", "10", "01")
    assert index(t, 0) == v(a=1)
    assert index(bits_trace("a", "01"), 5) is None
    u = bits_trace("a", "", "10")
    unrolled = u.unroll(8)
    assert index(u, 7) == unrolled[7] == v(a=0)


def test_finite_index_conventions():
    t = bits_trace("a", "01")
    assert t.suffix(5) == Trace((), None, {"a"})
    assert t.prefix(5) == t
    assert t.length == 2
    assert bits_trace("a", "0", "1").length == math.inf


def test_canonical_lasso_equality():
    assert bits_trace("a", "0101", "01") == bits_trace("a", "", "01")
    assert bits_trace("a", "1", "0000") == bits_trace("a", "1", "0")
    assert bits_trace("a", "10", "10") == bits_trace("a", "", "10")
    assert bits_trace("a", "1", "0") != bits_trace("a", "", "0")


@given(lassos(("a", "b"), 4, 3), st.integers(0, 6), st.integers(1, 3))
def test_canonical_form_preserves_word(t, extra_stem, reps):
    # re-expand the lasso in a non-canonical way and compare unrollings
    stem = t.unroll(len(t.stem) + extra_stem)
    period = tuple(t.unroll(len(stem) + len(t.period))[len(stem):]) * reps
    u = Trace(stem, period, t.variables)
    assert u == t
    assert u.unroll(30) == t.unroll(30)


def test_compose_examples():
    z = bits_trace("a", "", "0")
    o = bits_trace("b", "", "1")
    assert compose(z, o) == Trace((), (v(a=0, b=1),), {"a", "b"})
    f1 = bits_trace("a", "0 1")
    f2 = bits_trace("b", "1 0")
    assert compose(f1, f2) == Trace((v(a=0, b=1), v(a=1, b=0)), None, {"a", "b"})


def test_compose_shape_errors():
    with pytest.raises(ShapeMismatch):
        compose(bits_trace("a", "0"), bits_trace("b", "1 0"))
    with pytest.raises(ShapeMismatch):
        compose(bits_trace("a", "0"), bits_trace("b", "", "1"))


@given(lassos(("a",), 3, 3), lassos(("b",), 3, 3), lassos(("c",), 3, 3))
def test_composition_associative_with_unit(t, u, w):
    left = compose(compose(t, u), w)
    right = compose(t, compose(u, w))
    assert left == right
    unit = Trace((), (Valuation(),), frozenset())
    assert compose(t, unit) == t
    for i in range(12):
        assert left[i] == t[i].compose(u[i]).compose(w[i])


@given(lasso_sets(("x", "y"), 4, 3, 3), st.data())
def test_periodicity_beyond_horizon(T, data):
    s, p = T.max_stem, T.lcm_periods
    i = data.draw(st.integers(s, s + 3 * p))
    for t in T:
        assert t[i] == t[i + p]


def test_horizon_with_finite_traces():
    T = TraceSet(("a",), {bits_trace("a", "0101"), bits_trace("a", "1", "01")})
    assert T.max_stem == 4 and T.lcm_periods == 2 and T.horizon == 6
    assert T.traces and all(t[i] is None for t in T if not t.is_lasso for i in range(4, 8))


def test_trace_set_alphabet_checked():
    with pytest.raises(AlphabetMismatch):
        TraceSet(("a", "b"), {bits_trace("a", "", "0")})


def test_point_interpretation_example():
    T = TraceSet(("x", "y"), {bits_trace("xy", "00", "11"), bits_trace("xy", "10", "00")})
    M = point_interpretation(T)
    order = ("x", "y")
    want = ValuationSetWord(
        order,
        (frozenset({bits_trace("xy", "00")[0], bits_trace("xy", "10")[0]}),),
        (frozenset({bits_trace("xy", "11")[0], bits_trace("xy", "00")[0]}),),
    )
    assert M == want


def test_point_interpretation_small_cases():
    T = TraceSet(("a",), {bits_trace("a", "", "0")})
    M = point_interpretation(T)
    assert M.stem == () and M.period == (frozenset({v(a=0)}),)
    T2 = TraceSet(("a",), {bits_trace("a", "", "01"), bits_trace("a", "", "10")})
    M2 = point_interpretation(T2)
    # unroll positions 0..3 by hand: every position shows both values
    for j in range(4):
        assert M2[j] == {t[j] for t in T2}
    assert M2.period == (frozenset({v(a=0), v(a=1)}),)


def test_point_interpretation_rejects_finite():
    with pytest.raises(FiniteTracePresent):
        point_interpretation(TraceSet(("a",), {bits_trace("a", "0")}))


def test_from_pointwise_examples():
    M = ValuationSetWord(("a",), (), ({v(a=0)},))
    assert trace_set_from_pointwise(M) == TraceSet(("a",), {bits_trace("a", "", "0")})
    alt = ValuationSetWord(("a",), (), ({v(a=0), v(a=1)}, {v(a=1)}))
    T = trace_set_from_pointwise(alt)
    assert len(T) >= 2
    for j in range(T.horizon + 4):
        assert {t[j] for t in T} == alt[j]
    with pytest.raises(EmptyPosition):
        ValuationSetWord(("a",), (frozenset(),), ({v(a=0)},))


def test_round_trip_random_words():
    rng = random.Random(7)
    for _ in range(200):
        M = random_valuation_set_word(rng, ("x", "y"), 4, 8)
        assert point_interpretation(trace_set_from_pointwise(M)) == M


def test_restrict_examples():
    T = TraceSet(("a", "x"), {bits_trace("ax", "", "10")})
    assert restrict(T, "a") == TraceSet(("x",), {bits_trace("x", "", "0")})
    T2 = TraceSet(("a", "x"), {bits_trace("ax", "", "10"), bits_trace("ax", "", "00")})
    assert len(restrict(T2, "a")) == 1
    with pytest.raises(UnknownVariable):
        restrict(T2, "q")


def test_restrict_async_family_has_four_traces():
    T = async_family(1).original
    R = restrict(T, "a")
    assert R.alphabet == ("x", "y", "z") and len(R) == 4


@given(finite_traces(("a",), 5), st.integers(0, 6))
def test_delete_finite(t, j):
    d = delete(t, j)
    if j < len(t.stem):
        assert d.stem == t.stem[:j] + t.stem[j + 1:]
    else:
        assert d == t


@given(lassos(("a", "b"), 3, 3), st.integers(0, 8))
def test_delete_lasso_shifts_suffix(t, j):
    d = delete(t, j)
    for i in range(20):
        assert d[i] == (t[i] if i < j else t[i + 1])


def test_labels_do_not_affect_equality():
    t = bits_trace("a", "", "0")
    A = TraceSet(("a",), {t}, {t: "one"})
    B = TraceSet(("a",), {t}, {t: "two"})
    assert A == B and A.label(t) == "one"
