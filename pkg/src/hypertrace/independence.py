"""Slicing, point/segment independence and two-state independence.

Every check here is exact. Time quantification is cut off at the horizon of
the traces involved, after which all lassos repeat and finite traces are
undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _kernels
from .errors import FiniteTracePresent, UnknownVariable
from .syntax import Action, PropertySelector, Semantics, parse_formula
from .traces import Trace, TraceSet, index

__all__ = [
    "min_index",
    "slice_before",
    "slice_after",
    "dropped_by_slicing",
    "point_violation",
    "point_independent",
    "segment_violation",
    "segment_independent",
    "independent",
    "sync_action",
    "BoundedUnknown",
    "TwoStateResult",
    "two_state",
    "two_state_report",
    "hidden_cap",
    "default_hidden_bound",
    "SYNC_SEGMENT_TEXT",
    "sync_segment_formula",
    "sync_segment_formula_check",
    "sync_point_formula_check",
]


def _need(T: TraceSet, *names):
    for v in names:
        if v not in T.alphabet:
            raise UnknownVariable(f"{v!r} not in alphabet {list(T.alphabet)}")


def min_index(t: Trace, a: str):
    """First position where ``a`` holds, or ``None``."""
    if a not in t.variables:
        raise UnknownVariable(f"{a!r} not in trace alphabet")
    for i, v in enumerate(t.stem + (t.period or ())):
        if v[a]:
            return i
    return None


def _slice(T: TraceSet, a: str, before: bool) -> TraceSet:
    _need(T, a)
    labels = {}
    for t in T.ordered:
        k = min_index(t, a)
        if k is None:
            continue
        s = t.prefix(k) if before else t.suffix(k)
        labels.setdefault(s, T.label(t))
    return TraceSet(T.alphabet, frozenset(labels), labels)


def slice_before(T: TraceSet, a: str) -> TraceSet:
    """``T[…a]``: finite prefixes strictly before the first ``a``."""
    return _slice(T, a, True)


def slice_after(T: TraceSet, a: str) -> TraceSet:
    """``T[a…]``: suffixes from the first ``a`` on."""
    return _slice(T, a, False)


def dropped_by_slicing(T: TraceSet, a: str) -> list:
    """Labels of traces on which ``a`` never holds."""
    return [T.label(t) for t in T.ordered if min_index(t, a) is None]


# -- point and segment independence ------------------------------------------


def point_violation(T: TraceSet, x: str, y: str):
    """``(i, t, u)`` such that no trace defined at ``i`` has ``x`` from ``t`` and ``y`` from ``u``."""
    _need(T, x, y)
    traces = T.ordered
    for i in range(T.horizon):
        letters = [v for v in (index(t, i) for t in traces) if v is not None]
        pairs = {(v[x], v[y]) for v in letters}
        for t, u in product(traces, repeat=2):
            vt, vu = index(t, i), index(u, i)
            if vt is None or vu is None:
                continue
            if (vt[x], vu[y]) not in pairs:
                return i, t, u
    return None


def point_independent(T: TraceSet, x: str, y: str) -> bool:
    return point_violation(T, x, y) is None


def _common_length(ts):
    """Positions ``[0, n)`` on which all of ``ts`` must be compared."""
    finite = [len(t.stem) for t in ts if not t.is_lasso]
    if finite:
        return min(finite)
    return max(len(t.stem) for t in ts) + math.lcm(*(len(t.period) for t in ts))


def _segment_witness(t, u, w, x, y) -> bool:
    if not t.is_lasso or not u.is_lasso:
        need = min(t.length, u.length)
        if w.length < need:
            return False
        n = need
    else:
        if not w.is_lasso:
            return False
        n = _common_length((t, u, w))
    return all(index(w, i)[x] == index(t, i)[x] and index(w, i)[y] == index(u, i)[y] for i in range(n))


def segment_violation(T: TraceSet, x: str, y: str):
    """A pair ``(t, u)`` for which no single witness trace exists."""
    _need(T, x, y)
    traces = T.ordered
    for t, u in product(traces, repeat=2):
        if not any(_segment_witness(t, u, w, x, y) for w in traces):
            return t, u
    return None


def segment_independent(T: TraceSet, x: str, y: str) -> bool:
    return segment_violation(T, x, y) is None


def independent(T: TraceSet, x: str, y: str, semantics) -> bool:
    if Semantics(semantics) is Semantics.POINT:
        return point_independent(T, x, y)
    return segment_independent(T, x, y)


def sync_action(T: TraceSet, a: str) -> bool:
    """All traces first see ``a`` at the same, defined, position."""
    _need(T, a)
    cuts = {min_index(t, a) for t in T.traces}
    return None not in cuts and len(cuts) <= 1


# -- two-state independence ---------------------------------------------------


@dataclass(frozen=True)
class BoundedUnknown:
    """No cut profile up to ``bound`` works, but larger cuts were not excluded."""

    bound: int
    cap: int

    def __bool__(self):
        raise TypeError("BoundedUnknown has no truth value")


@dataclass(frozen=True)
class TwoStateResult:
    value: object  # True, False or BoundedUnknown
    cuts: dict | None = None  # label -> cut
    counterexample: dict | None = None
    dropped: list = field(default_factory=list)


def _describe_point(kind, T, v, x, y):
    i, t, u = v
    return {"slice": kind, "time": i, "x_from": T.label(t), "y_from": T.label(u), "vars": [x, y]}


def _describe_segment(kind, T, v, x, y):
    t, u = v
    return {"slice": kind, "x_from": T.label(t), "y_from": T.label(u), "vars": [x, y]}


def _sliced_check(T, sel: PropertySelector):
    before, after = slice_before(T, sel.a), slice_after(T, sel.a)
    if sel.semantics is Semantics.POINT:
        finder, describe = point_violation, _describe_point
    else:
        finder, describe = segment_violation, _describe_segment
    v = finder(before, sel.x, sel.y)
    if v is not None:
        return describe("before", before, v, sel.x, sel.y)
    v = finder(after, sel.x, sel.z)
    if v is not None:
        return describe("after", after, v, sel.x, sel.z)
    return None


def hidden_cap(T: TraceSet) -> int:
    """Cut value no profile needs to exceed.

    Between two consecutive cut values, once every trace is periodic, a block
    of ``lcm`` positions can be cut out of all later-cut traces without
    changing any slice comparison. Hence a satisfying profile exists iff one
    exists whose sorted cuts grow by less than ``lcm`` past the stems at each
    step, i.e. with all cuts ``<= maxStem + |T| * (lcm - 1)``.
    """
    return T.max_stem + len(T) * (T.lcm_periods - 1)


def default_hidden_bound(T: TraceSet) -> int:
    return T.horizon + T.lcm_periods


def _hidden(T: TraceSet, sel: PropertySelector, bound: int) -> TwoStateResult:
    _need(T, sel.x, sel.y, sel.z)
    if not T.lasso_only:
        raise FiniteTracePresent("hidden-action search needs infinite traces")
    cap = hidden_cap(T)
    traces = T.ordered
    if not traces:
        return TwoStateResult(True, cuts={})
    window = T.horizon
    width = bound + window + 1
    rows = np.array([[[v[sel.x], v[sel.y], v[sel.z]] for v in t.unroll(width)] for t in traces], dtype=np.int64)
    x, y, z = rows[:, :, 0], rows[:, :, 1], rows[:, :, 2]
    if sel.semantics is Semantics.POINT:
        found = _kernels.point_search(2 * x + y, 2 * x + z, bound, window)
    else:
        found = _kernels.segment_search(x, y, z, bound, window)
    if found[0] >= 0:
        return TwoStateResult(True, cuts={T.label(t): int(c) for t, c in zip(traces, found)})
    if bound >= cap:
        return TwoStateResult(False, counterexample={"searched_bound": bound, "cap": cap})
    return TwoStateResult(BoundedUnknown(bound, cap))


def two_state_report(T: TraceSet, sel: PropertySelector, hidden_bound: int | None = None) -> TwoStateResult:
    if sel.action is Action.HIDDEN:
        bound = default_hidden_bound(T) if hidden_bound is None else hidden_bound
        return _hidden(T, sel, bound)
    _need(T, sel.x, sel.y, sel.z, sel.a)
    dropped = dropped_by_slicing(T, sel.a)
    cuts = {T.label(t): min_index(t, sel.a) for t in T.ordered if min_index(t, sel.a) is not None}
    if sel.action is Action.SYNC and not sync_action(T, sel.a):
        return TwoStateResult(False, cuts=cuts, counterexample={"action": "not synchronous"}, dropped=dropped)
    bad = _sliced_check(T, sel)
    return TwoStateResult(bad is None, cuts=cuts, counterexample=bad, dropped=dropped)


def two_state(T: TraceSet, sel: PropertySelector, hidden_bound: int | None = None):
    """``True``/``False``, or :class:`BoundedUnknown` for an inconclusive hidden search."""
    return two_state_report(T, sel, hidden_bound).value


# -- dedicated checkers for the synchronous case ------------------------------------

SYNC_SEGMENT_TEXT = (
    "forall p. forall q. exists e. exists f. "
    "(!{a}[p] & !{a}[q] & {x}[p] = {x}[e] & {y}[q] = {y}[e]) "
    "U ({a}[p] & {a}[q] & G ({x}[p] = {x}[f] & {z}[q] = {z}[f]))"
)


def sync_segment_formula(x="x", y="y", z="z", a="a"):
    return parse_formula(SYNC_SEGMENT_TEXT.format(x=x, y=y, z=z, a=a))


def sync_segment_formula_check(T: TraceSet, x="x", y="y", z="z", a="a") -> bool:
    """Segment independence with a synchronous action, as one HyperLTL sentence."""
    from .hyperltl import hyperltl_eval

    _need(T, x, y, z, a)
    return hyperltl_eval(sync_segment_formula(x, y, z, a), T)


def sync_point_formula_check(T: TraceSet, x="x", y="y", z="z", a="a") -> bool:
    """Point independence with a synchronous action, by bounded time quantifiers.

    There is a time ``j`` at which ``a`` first holds on every trace, every
    earlier time is point independent for ``x``/``y`` and every later one
    for ``x``/``z``. ``j`` ranges over the horizon; the later times over
    ``[j, j + horizon)``, which covers every distinct periodic phase.
    """
    _need(T, x, y, z, a)
    if not T.lasso_only:
        raise FiniteTracePresent("synchronous point check needs infinite traces")
    traces = T.ordered
    H = T.horizon

    def matched(i, u, v):
        letters = [index(t, i) for t in traces]
        return all(
            any(w[u] == index(t, i)[u] and w[v] == index(s, i)[v] for w in letters)
            for t in traces
            for s in traces
        )

    for j in range(H):
        if not all(index(t, j)[a] and not any(index(t, i)[a] for i in range(j)) for t in traces):
            continue
        if all(matched(i, x, y) for i in range(j)) and all(matched(k, x, z) for k in range(j, j + H)):
            return True
    return False
