"""Cut-profile search for the hidden-action checks.

A profile assigns each trace the index where its second state starts. The
search walks all profiles in ``[0, B]^m`` in increasing order of
``sum(cut[t] * (B+1)**t)`` and returns the first one whose slices satisfy
both independence conditions.

Two interchangeable backends exist: numba-compiled loops with early exit, and
a vectorised numpy version that scores profiles in chunks. Set
``HYPERTRACE_DISABLE_NUMBA=1`` to force the numpy path; it is also used when
numba is not importable. Both return the same profile.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


__all__ = [
    "CLOSED",
    "backend",
    "point_search",
    "segment_search",
    "segment_tables",
    "profile_count",
]

CHUNK = 1 << 15


def _closed(mask):
    pairs = [(b >> 1, b & 1) for b in range(4) if mask >> b & 1]
    xs = {p for p, _ in pairs}
    ys = {q for _, q in pairs}
    return all((p, q) in pairs for p in xs for q in ys)


# CLOSED[mask] says whether the set of (u, v) bit pairs encoded in ``mask``
# (bit 2u+v) is a full product of its projections.
CLOSED = np.array([_closed(m) for m in range(16)], dtype=np.bool_)


def backend() -> str:
    if HAVE_NUMBA and os.environ.get("HYPERTRACE_DISABLE_NUMBA", "") in ("", "0"):
        return "numba"
    return "numpy"


def profile_count(m: int, bound: int) -> int:
    return (bound + 1) ** m


# -- point semantics -----------------------------------------------------------


@njit(cache=True)
def _point_search_nb(xy, xz, bound, window, closed):
    m = xy.shape[0]
    cuts = np.zeros(m, np.int64)
    total = (bound + 1) ** m
    for code in range(total):
        c = code
        top = 0
        for t in range(m):
            cuts[t] = c % (bound + 1)
            c //= bound + 1
            if cuts[t] > top:
                top = cuts[t]
        ok = True
        for i in range(top):
            mask = 0
            for t in range(m):
                if cuts[t] > i:
                    mask |= 1 << xy[t, i]
            if not closed[mask]:
                ok = False
                break
        if not ok:
            continue
        for k in range(window):
            mask = 0
            for t in range(m):
                mask |= 1 << xz[t, cuts[t] + k]
            if not closed[mask]:
                ok = False
                break
        if ok:
            return cuts.copy()
    return np.full(m, -1, np.int64)


def _decode(codes, m, bound):
    out = np.empty((codes.size, m), np.int64)
    c = codes.copy()
    for t in range(m):
        out[:, t] = c % (bound + 1)
        c //= bound + 1
    return out


def _point_search_np(xy, xz, bound, window, closed):
    m = xy.shape[0]
    total = (bound + 1) ** m
    rows = np.arange(m)
    for start in range(0, total, CHUNK):
        cuts = _decode(np.arange(start, min(total, start + CHUNK), dtype=np.int64), m, bound)
        ok = np.ones(len(cuts), bool)
        for i in range(bound):
            live = cuts > i
            if not live.any():
                break
            mask = np.bitwise_or.reduce(np.where(live, 1 << xy[:, i], 0), axis=1)
            ok &= closed[mask]
        for k in range(window):
            mask = np.bitwise_or.reduce(1 << xz[rows, cuts + k], axis=1)
            ok &= closed[mask]
        hit = np.flatnonzero(ok)
        if hit.size:
            return cuts[hit[0]]
    return np.full(m, -1, np.int64)


def point_search(xy, xz, bound, window):
    """First profile with point-independent slices, or all ``-1``.

    ``xy[t, i]`` / ``xz[t, i]`` encode ``2*x+y`` / ``2*x+z`` of trace ``t`` at
    position ``i``; rows must extend to at least ``bound + window``.
    """
    xy = np.ascontiguousarray(xy, dtype=np.int64)
    xz = np.ascontiguousarray(xz, dtype=np.int64)
    if backend() == "numba":
        return _point_search_nb(xy, xz, bound, window, CLOSED)
    return _point_search_np(xy, xz, bound, window, CLOSED)


# -- segment semantics ----------------------------------------------------------


def segment_tables(x, y, z, bound, window):
    """Pairwise agreement tables shared by both segment backends.

    ``pre[t, u, w]``: length of the common prefix on which ``w`` copies ``x``
    from ``t`` and ``y`` from ``u``. ``ax[t, w, c, d]``: the suffixes of ``t``
    at ``c`` and of ``w`` at ``d`` agree on ``x`` for ``window`` positions;
    ``az`` likewise for ``z``.
    """
    m, n = x.shape
    pre = np.empty((m, m, m), np.int64)
    for t in range(m):
        for u in range(m):
            bad = (x[None, t, :] != x) | (y[None, u, :] != y)  # (w, n)
            first = np.where(bad.any(axis=1), bad.argmax(axis=1), n)
            pre[t, u, :] = first
    offs = np.arange(bound + 1)[:, None] + np.arange(window)[None, :]  # (B+1, W)
    xs = x[:, offs]  # (m, B+1, W)
    zs = z[:, offs]
    ax = (xs[:, None, :, None, :] == xs[None, :, None, :, :]).all(axis=-1)
    az = (zs[:, None, :, None, :] == zs[None, :, None, :, :]).all(axis=-1)
    return pre, ax, az


@njit(cache=True)
def _segment_search_nb(pre, ax, az, bound):
    m = pre.shape[0]
    cuts = np.zeros(m, np.int64)
    total = (bound + 1) ** m
    for code in range(total):
        c = code
        for t in range(m):
            cuts[t] = c % (bound + 1)
            c //= bound + 1
        ok = True
        for t in range(m):
            for u in range(m):
                mn = min(cuts[t], cuts[u])
                found = False
                for w in range(m):
                    if cuts[w] >= mn and pre[t, u, w] >= mn:
                        found = True
                        break
                if not found:
                    ok = False
                    break
                found = False
                for w in range(m):
                    if ax[t, w, cuts[t], cuts[w]] and az[u, w, cuts[u], cuts[w]]:
                        found = True
                        break
                if not found:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return cuts.copy()
    return np.full(m, -1, np.int64)


def _segment_search_np(pre, ax, az, bound):
    m = pre.shape[0]
    total = (bound + 1) ** m
    for start in range(0, total, CHUNK):
        cuts = _decode(np.arange(start, min(total, start + CHUNK), dtype=np.int64), m, bound)
        ok = np.ones(len(cuts), bool)
        for t in range(m):
            for u in range(m):
                mn = np.minimum(cuts[:, t], cuts[:, u])[:, None]
                before = ((cuts >= mn) & (pre[t, u][None, :] >= mn)).any(axis=1)
                after = np.zeros(len(cuts), bool)
                for w in range(m):
                    after |= ax[t, w, cuts[:, t], cuts[:, w]] & az[u, w, cuts[:, u], cuts[:, w]]
                ok &= before & after
        hit = np.flatnonzero(ok)
        if hit.size:
            return cuts[hit[0]]
    return np.full(m, -1, np.int64)


def segment_search(x, y, z, bound, window):
    """First profile with segment-independent slices, or all ``-1``."""
    x, y, z = (np.ascontiguousarray(a, dtype=np.int64) for a in (x, y, z))
    pre, ax, az = segment_tables(x, y, z, bound, window)
    if backend() == "numba":
        return _segment_search_nb(pre, ax, az, bound)
    return _segment_search_np(pre, ax, az, bound)
