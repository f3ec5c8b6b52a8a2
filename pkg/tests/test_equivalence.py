import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertrace.equivalence import (
    Exact,
    GloballyLetters,
    NoWitnessFound,
    NStutterBounded,
    NStutterOneStep,
    assignment_names,
    globally_equiv,
    k_point_equivalent,
    kc_check,
    kc_equivalent,
    n_redundant,
    one_step_n_deletion,
)
from hypertrace.errors import AlphabetMismatch, IndexOutOfRange
from hypertrace.families import async_family, point_family
from hypertrace.generators import random_ltl
from hypertrace.hyperltl import TraceAssignment, flatten
from hypertrace.ltl import ltl_eval
from hypertrace.syntax import Atom
from hypertrace.traces import TraceSet, bits_trace, delete
from hypertrace.witness import WitnessBijection

from oracles import brute_k_point
from strategies import lasso_sets, lassos


def test_globally_examples():
    t = bits_trace("xy", "00 10 10", "00")
    u = bits_trace("xy", "00 10", "00")
    assert globally_equiv(t, u)
    assert globally_equiv(t, t)
    assert not globally_equiv(bits_trace("a", "", "0"), bits_trace("a", "", "01"))
    with pytest.raises(AlphabetMismatch):
        globally_equiv(bits_trace("a", "", "0"), bits_trace("b", "", "0"))


@given(lassos(("a",), 3, 2), lassos(("a",), 3, 2), lassos(("a",), 3, 2))
def test_globally_is_an_equivalence(t, u, w):
    assert globally_equiv(t, t)
    assert globally_equiv(t, u) == globally_equiv(u, t)
    if globally_equiv(t, u) and globally_equiv(u, w):
        assert globally_equiv(t, w)


def test_n_redundant_examples():
    c = bits_trace("a", "", "1")
    assert all(n_redundant(c, i, n) for i in range(4) for n in range(4))
    assert not n_redundant(bits_trace("a", "", "01"), 0, 0)
    with pytest.raises(IndexOutOfRange):
        n_redundant(bits_trace("a", "0 0"), 0, 1)


def test_n_redundant_async_flattenings():
    T = async_family(1).original
    for combo in product(T.ordered, repeat=2):
        flat = flatten(TraceAssignment(zip(assignment_names(2), combo)))
        assert n_redundant(flat, 13, 1)


def test_one_step_examples():
    F = async_family(1)
    for t, tp in F.witness.forward.items():
        assert one_step_n_deletion(tp, t, 1)
    t = bits_trace("a", "", "011")
    assert not one_step_n_deletion(t, t, 2)
    # finite: aaaab -> aaab (a = 1, b = 0)
    long, short = bits_trace("a", "1 1 1 1 0"), bits_trace("a", "1 1 1 0")
    assert one_step_n_deletion(short, long, 2)
    assert not one_step_n_deletion(short, long, 3)


def test_constant_tail_deletion_is_identity():
    t = bits_trace("a", "1", "0")
    assert delete(t, 3) == t
    assert one_step_n_deletion(t, t, 2)


@settings(max_examples=200)
@given(lassos(("a", "b"), 4, 3), st.integers(0, 8), st.integers(0, 2), st.integers(0, 10**6))
def test_deletion_preserves_bounded_next_formulas(u, j, n, seed):
    if not n_redundant(u, j, n):
        return
    t = delete(u, j)
    assert one_step_n_deletion(t, u, n)
    rng = random.Random(seed)
    for _ in range(10):
        f = random_ltl(rng, [Atom("a"), Atom("b")], depth=5, max_next=n)
        assert ltl_eval(f, t, 0) == ltl_eval(f, u, 0)


def test_bounded_stutter():
    eq = NStutterBounded(0, 2)
    a = bits_trace("a", "1 1 1 0", "1")
    b = bits_trace("a", "1 0", "1")
    assert eq(a, b) and eq(b, a)
    assert not NStutterBounded(0, 1)(a, b)
    assert not eq(bits_trace("a", "", "0"), bits_trace("a", "", "1"))


def test_kc_point_family_globally():
    for n in (1, 2):
        F = point_family(n)
        assert kc_equivalent(F.original, F.primed, n, GloballyLetters(), F.witness) is True


def test_kc_async_family_one_step():
    F = async_family(1)
    assert kc_equivalent(F.original, F.primed, 2, NStutterOneStep(1), F.witness) is True


@given(lasso_sets(("x",), 3, 2, 2), st.integers(0, 2))
def test_kc_reflexive(T, k):
    f = WitnessBijection.identity(T)
    for eq in (GloballyLetters(), Exact(), NStutterOneStep(1)):
        assert kc_equivalent(T, T, k, eq, f) is True


def test_kc_search_without_witness():
    F = point_family(1)
    res = kc_check(F.original, F.primed, 1, GloballyLetters())
    assert res.value and res.witness is not None
    assert kc_equivalent(F.original, F.primed, 1, GloballyLetters()) is True
    out = kc_equivalent(F.original, F.primed, 1, Exact())
    assert isinstance(out, NoWitnessFound) and not out


def test_kc_size_mismatch_is_false():
    A = TraceSet(("a",), {bits_trace("a", "", "0"), bits_trace("a", "", "1")})
    B = TraceSet(("a",), {bits_trace("a", "", "0")})
    assert kc_equivalent(A, B, 1, Exact()) is False


def test_kc_counterexample_with_bad_witness():
    F = point_family(1)
    res = kc_check(F.original, F.primed, 2, Exact(), F.witness)
    assert not res.value and res.counterexample is not None


def test_k_point_examples():
    T = TraceSet(("a",), {bits_trace("a", "", "01"), bits_trace("a", "", "10")})
    U = TraceSet(("a",), {bits_trace("a", "", "00"), bits_trace("a", "", "11")})
    assert k_point_equivalent(T, T, 2)
    assert k_point_equivalent(T, U, 1)
    assert not k_point_equivalent(T, U, 2)
    assert not k_point_equivalent(TraceSet(("a",), {bits_trace("a", "", "0"), bits_trace("a", "", "1")}), U.with_traces({bits_trace("a", "", "0")}), 1)


@settings(max_examples=80)
@given(lasso_sets(("a",), 3, 2, 2), lasso_sets(("a",), 3, 2, 2), st.integers(1, 2))
def test_k_point_matches_bijection_search(T, U, k):
    window = max(T.horizon, U.horizon) + T.lcm_periods * U.lcm_periods + 2
    assert k_point_equivalent(T, U, k) == brute_k_point(T, U, k, window)
