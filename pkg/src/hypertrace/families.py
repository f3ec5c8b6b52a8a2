"""Concrete trace-set families and their witness bijections."""

from __future__ import annotations

from typing import NamedTuple

from .traces import TraceSet, bits_trace, delete
from .witness import WitnessBijection

__all__ = ["Family", "point_family", "async_family", "motivating_example", "ASYNC_DELETED"]


class Family(NamedTuple):
    original: TraceSet
    primed: TraceSet
    witness: WitnessBijection


def _lasso(order, stem, period):
    return bits_trace(order, " ".join(stem), " ".join(period))


def point_family(n: int) -> Family:
    """Pair of sets over ``(x, y)`` that agree on every letter set.

    The original set is point independent; in the primed set the last
    ``10``/``01`` letters of the two long traces are replaced by ``00``.
    """
    if n < 1:
        raise ValueError("point family needs n >= 1")
    order = ("x", "y")
    common = {"e": _lasso(order, ["11"] * (n + 2), ["00"])}
    for j in range(n):
        common[f"e{j}x"] = _lasso(order, ["00"] * j + ["10"], ["00"])
        common[f"e{j}y"] = _lasso(order, ["00"] * j + ["01"], ["00"])
    tx = _lasso(order, ["00"] * n + ["10", "10"], ["00"])
    ty = _lasso(order, ["00"] * n + ["01", "01"], ["00"])
    ux = _lasso(order, ["00"] * n + ["10"], ["00"])
    uy = _lasso(order, ["00"] * n + ["01"], ["00"])
    T = TraceSet.from_named(order, {**common, "dx": tx, "dy": ty})
    Tp = TraceSet.from_named(order, {**common, "dx'": ux, "dy'": uy})
    fwd = {t: t for t in common.values()}
    fwd[tx] = ux
    fwd[ty] = uy
    return Family(T, Tp, WitnessBijection(T, Tp, fwd))


def ASYNC_DELETED(n: int) -> int:
    """Position removed from every trace of the primed async family."""
    return 2 * n + 11


def async_family(n: int) -> Family:
    """Four traces over ``(a, x, y, z)`` whose action times differ.

    The primed set drops position ``2n+11`` of every trace; the witness maps
    each trace to its shortened copy.
    """
    if n < 0:
        raise ValueError("async family needs n >= 0")
    m = n + 4
    order = ("a", "x", "y", "z")
    tau0 = ["1110"] + ["1000"] * m + ["1001"] * m + ["1111"] + ["1001"] * m + ["1000"] * m
    tau1 = ["1111"] + ["1001"] * m + ["1000"] * m + ["1110"] + ["1000"] * m + ["1001"] * m
    named = {
        "t1": _lasso(order, ["0000"] + tau1, ["1001"]),
        "t2": _lasso(order, ["0010"] + tau1 + ["1001"] * m, ["1111"]),
        "t3": _lasso(order, ["0000"] * m + tau0, ["1001"]),
        "t4": _lasso(order, ["0010"] * m + tau0, ["1111"]),
    }
    pos = ASYNC_DELETED(n)
    primed = {f"{k}'": delete(t, pos) for k, t in named.items()}
    T = TraceSet.from_named(order, named)
    Tp = TraceSet.from_named(order, primed)
    fwd = {named[k]: primed[f"{k}'"] for k in named}
    return Family(T, Tp, WitnessBijection(T, Tp, fwd))


def motivating_example() -> TraceSet:
    """Four observed runs over ``(state, x, y, z)``; the last letter repeats forever."""
    order = ("state", "x", "y", "z")
    rows = {
        "tau1": ["0000", "1110", "1110", "1110"],
        "tau2": ["0101", "1110", "1110", "1110"],
        "tau3": ["0101", "0101", "1000", "1000"],
        "tau4": ["0000", "0101", "0000", "1110"],
    }
    return TraceSet.from_named(order, {k: _lasso(order, v[:-1], v[-1:]) for k, v in rows.items()})
