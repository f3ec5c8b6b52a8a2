import random

from hypothesis import given, settings
from hypothesis import strategies as st

from hypertrace.generators import random_lasso, random_ltl
from hypertrace.ltl import eval_all_positions, ltl_eval, ltl_eval_lasso_table
from hypertrace.syntax import And, Atom, Finally, Globally, Next, Not, Or, Until, parse_ltl, subformulas
from hypertrace.traces import bits_trace

from oracles import bounded_eval
from strategies import finite_traces, formulas, lassos, plain_atoms

A = Atom("a")
AB = plain_atoms(["a", "b"])


def test_spec_examples():
    assert ltl_eval(Globally(A), bits_trace("a", "", "1"), 0)
    assert not ltl_eval(Finally(A), bits_trace("a", "0", "0"), 0)
    until = Until(Not(A), A)
    assert ltl_eval(until, bits_trace("a", "001", "1"), 0)
    assert not ltl_eval(until, bits_trace("a", "000", "0"), 0)


def test_table_examples():
    t = bits_trace("a", "01", "1")
    # canonical form folds the trailing 1 into the period
    assert t.stem == (bits_trace("a", "0")[0],)
    tab = ltl_eval_lasso_table(A, bits_trace("a", "0", "1"))
    assert tab[A] == [False, True]
    tab = ltl_eval_lasso_table(Next(A), bits_trace("a", "", "10"))
    assert tab[Next(A)] == [False, True]
    t = bits_trace("a", "1", "00")
    col = eval_all_positions(Finally(A), t)
    assert col == [True, False]
    assert [ltl_eval(Finally(A), t, i) for i in range(6)] == [True] + [False] * 5


def test_until_fixpoint_on_loop():
    # b only inside the loop, a everywhere: witness found across the wrap
    t = parse_ltl("a U b")
    word = bits_trace("ab", "10", "10 10 11")
    assert all(ltl_eval(t, word, i) for i in range(10))
    word = bits_trace("ab", "10", "10 00 11")
    assert [ltl_eval(t, word, i) for i in range(4)] == [False, False, False, True]


def test_oracle_agreement_fixed_corpus():
    rng = random.Random(11)
    decided = 0
    for _ in range(300):
        f = random_ltl(rng, AB, depth=5, max_next=3)
        t = random_lasso(rng, ("a", "b"), 4, 3)
        n = len(t.stem) + len(t.period) * (len(subformulas(f)) + 2)
        ref = bounded_eval(f, t.unroll(n))
        for i, r in enumerate(ref):
            if r is not None:
                decided += 1
                assert ltl_eval(f, t, i) == r, (f, t, i)
    assert decided > 1000


@given(formulas(AB, 14), lassos(("a", "b"), 4, 3))
def test_oracle_agreement(f, t):
    n = len(t.stem) + len(t.period) * (len(subformulas(f)) + 2)
    ref = bounded_eval(f, t.unroll(n))
    for i, r in enumerate(ref):
        if r is not None:
            assert ltl_eval(f, t, i) == r


@given(formulas(AB, 12), lassos(("a", "b"), 4, 3), st.integers(0, 12))
def test_positional_periodicity(f, t, k):
    i = len(t.stem) + k
    assert ltl_eval(f, t, i) == ltl_eval(f, t, i + len(t.period))


@given(formulas(AB, 8), formulas(AB, 8), lassos(("a", "b"), 3, 3))
def test_de_morgan(f, g, t):
    left = eval_all_positions(Not(Or(f, g)), t)
    right = eval_all_positions(And(Not(f), Not(g)), t)
    assert left == right


@settings(max_examples=200)
@given(formulas(AB, 12), finite_traces(("a", "b"), 5))
def test_finite_truncated_semantics(f, t):
    """Truncated semantics equals evaluating on the word padded with all-false
    letters, except that X/U/F/G must not look past the end; checked against
    a direct recursive definition."""
    n = len(t.stem)

    def ev(g, i):
        if isinstance(g, Atom):
            return i < n and t.stem[i][g.var]
        if type(g).__name__ == "Const":
            return g.value
        if isinstance(g, Not):
            return not ev(g.arg, i)
        if isinstance(g, Next):
            return i + 1 < n and ev(g.arg, i + 1)
        if isinstance(g, Until):
            return any(ev(g.right, j) and all(ev(g.left, k) for k in range(i, j)) for j in range(i, n))
        if isinstance(g, Globally):
            return all(ev(g.arg, j) for j in range(i, n))
        if isinstance(g, Finally):
            return any(ev(g.arg, j) for j in range(i, n))
        a, b = ev(g.left, i), ev(g.right, i)
        return {"Or": a or b, "And": a and b, "Implies": (not a) or b, "Iff": a == b}[type(g).__name__]

    for i in range(n + 2):
        assert ltl_eval(f, t, i) == ev(f, i)
