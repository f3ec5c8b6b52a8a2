"""LTL over single traces.

Lassos are decided exactly with a table over the positions ``[0, S+L)``,
where the successor of the last position wraps back to ``S``. Finite traces
use truncated semantics: atoms past the end are false, ``X`` is false at the
last position, and ``U``/``F`` need their witness inside the trace (so ``G``
holds on the empty suffix).
"""

from __future__ import annotations

from .errors import AlphabetMismatch
from .syntax import (
    And,
    Atom,
    Const,
    Finally,
    Formula,
    Globally,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Until,
    subformulas,
)
from .traces import Trace

__all__ = ["ltl_eval", "ltl_eval_lasso_table", "ltl_eval_finite_table", "eval_all_positions"]


def _atom_column(f: Atom, word) -> list:
    if f.trace_var is not None:
        raise ValueError(f"atom {f.var}[{f.trace_var}] is not plain; flatten the formula first")
    if word and f.var not in word[0]:
        raise AlphabetMismatch(f"variable {f.var!r} not in trace alphabet")
    return [v[f.var] for v in word]


def _boolean(f, tab, n):
    if isinstance(f, Not):
        a = tab[f.arg]
        return [not a[i] for i in range(n)]
    a, b = tab[f.left], tab[f.right]
    if isinstance(f, Or):
        return [a[i] or b[i] for i in range(n)]
    if isinstance(f, And):
        return [a[i] and b[i] for i in range(n)]
    if isinstance(f, Implies):
        return [(not a[i]) or b[i] for i in range(n)]
    if isinstance(f, Iff):
        return [a[i] == b[i] for i in range(n)]
    raise TypeError(f"unknown node {type(f).__name__}")


def ltl_eval_lasso_table(phi: Formula, t: Trace) -> dict:
    """Truth value of every subformula at every position of ``stem + period``."""
    if not t.is_lasso:
        raise ValueError("table evaluation needs a lasso")
    word = t.stem + t.period
    S, n = len(t.stem), len(t.stem) + len(t.period)

    def succ(i):
        return i + 1 if i + 1 < n else S

    tab = {}
    for f in subformulas(phi):
        if isinstance(f, Atom):
            col = _atom_column(f, word)
        elif isinstance(f, Const):
            col = [f.value] * n
        elif isinstance(f, Next):
            a = tab[f.arg]
            col = [a[succ(i)] for i in range(n)]
        elif isinstance(f, Until):
            a, b = tab[f.left], tab[f.right]
            col = [False] * n
            # least fixpoint on the loop: two backward passes reach it
            for _ in range(2):
                for i in range(n - 1, S - 1, -1):
                    col[i] = b[i] or (a[i] and col[succ(i)])
            for i in range(S - 1, -1, -1):
                col[i] = b[i] or (a[i] and col[i + 1])
        elif isinstance(f, (Globally, Finally)):
            a = tab[f.arg]
            glob = isinstance(f, Globally)
            loop = a[S:]
            col = [None] * n
            col[S:] = [all(loop) if glob else any(loop)] * (n - S)
            for i in range(S - 1, -1, -1):
                col[i] = (a[i] and col[i + 1]) if glob else (a[i] or col[i + 1])
        else:
            col = _boolean(f, tab, n)
        tab[f] = col
    return tab


def ltl_eval_finite_table(phi: Formula, t: Trace) -> dict:
    """Truncated semantics; column ``n`` (one past the end) is the empty suffix."""
    word = t.stem
    n = len(word) + 1
    tab = {}
    for f in subformulas(phi):
        if isinstance(f, Atom):
            col = _atom_column(f, word) + [False]
        elif isinstance(f, Const):
            col = [f.value] * (n - 1) + [f.value]
        elif isinstance(f, Next):
            a = tab[f.arg]
            col = [a[i + 1] if i + 2 < n else False for i in range(n - 1)] + [False]
        elif isinstance(f, Until):
            a, b = tab[f.left], tab[f.right]
            col = [False] * n
            for i in range(n - 2, -1, -1):
                col[i] = b[i] or (a[i] and col[i + 1])
        elif isinstance(f, Globally):
            a = tab[f.arg]
            col = [True] * n
            for i in range(n - 2, -1, -1):
                col[i] = a[i] and col[i + 1]
        elif isinstance(f, Finally):
            a = tab[f.arg]
            col = [False] * n
            for i in range(n - 2, -1, -1):
                col[i] = a[i] or col[i + 1]
        else:
            col = _boolean(f, tab, n)
        tab[f] = col
    return tab


def eval_all_positions(phi: Formula, t: Trace) -> list:
    """Column of ``phi``: positions ``[0, S+L)`` for a lasso, ``[0, n]`` for a finite trace."""
    if t.is_lasso:
        return ltl_eval_lasso_table(phi, t)[phi]
    return ltl_eval_finite_table(phi, t)[phi]


def ltl_eval(phi: Formula, t: Trace, i: int = 0) -> bool:
    if i < 0:
        raise ValueError("position must be a natural number")
    col = eval_all_positions(phi, t)
    if t.is_lasso:
        S, L = len(t.stem), len(t.period)
        if i >= S + L:
            i = S + (i - S) % L
        return col[i]
    return col[min(i, len(t.stem))]
