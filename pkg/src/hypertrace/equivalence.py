"""Trace equivalences and the set-level equivalences built on them."""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations, product

from .errors import AlphabetMismatch, IndexOutOfRange
from .hyperltl import TraceAssignment, flatten
from .traces import Trace, TraceSet, concat, delete, index
from .witness import WitnessBijection

__all__ = [
    "globally_equiv",
    "n_redundant",
    "delete",
    "insert_copy",
    "one_step_n_deletion",
    "TraceEquivalence",
    "GloballyLetters",
    "NStutterOneStep",
    "NStutterBounded",
    "Exact",
    "WitnessBijection",
    "NoWitnessFound",
    "KcResult",
    "kc_check",
    "kc_equivalent",
    "k_point_equivalent",
    "k_point_violation",
    "assignment_names",
]


def _same_alphabet(t: Trace, u: Trace):
    if t.variables != u.variables:
        raise AlphabetMismatch(f"traces over {sorted(t.variables)} and {sorted(u.variables)}")


def globally_equiv(t: Trace, u: Trace) -> bool:
    """Both traces use exactly the same set of letters."""
    _same_alphabet(t, u)
    if not (t.is_lasso and u.is_lasso):
        raise ValueError("letter-set equivalence is defined on infinite traces")
    return t.letters() == u.letters()


def n_redundant(t: Trace, i: int, n: int) -> bool:
    """``t[i]`` is repeated at each of the next ``n+1`` positions."""
    if not t.is_lasso and i + n + 1 >= len(t.stem):
        raise IndexOutOfRange(f"position {i + n + 1} beyond finite trace of length {len(t.stem)}")
    v = index(t, i)
    return all(index(t, i + j) == v for j in range(1, n + 2))


def insert_copy(t: Trace, j: int) -> Trace:
    """Duplicate the letter at ``j``."""
    return concat(t.prefix(j + 1), t.suffix(j))


def _deletion_positions(t: Trace, u: Trace):
    if t.is_lasso != u.is_lasso:
        return range(0)
    if not u.is_lasso:
        return range(len(u.stem)) if len(u.stem) == len(t.stem) + 1 else range(0)
    # beyond this bound t and u would agree on a full joint period, i.e. t == u,
    # and the smallest deletion giving u back lies within it
    s = max(len(t.stem), len(u.stem))
    return range(s + math.lcm(len(t.period), len(u.period)) + 1)


def one_step_n_deletion(t: Trace, u: Trace, n: int) -> bool:
    """``t`` is ``u`` with one ``n``-redundant letter removed."""
    _same_alphabet(t, u)
    for j in _deletion_positions(t, u):
        if not u.is_lasso and j + n + 1 >= len(u.stem):
            break
        if n_redundant(u, j, n) and delete(u, j) == t:
            return True
    return False


class TraceEquivalence:
    name = "abstract"

    def __call__(self, t: Trace, u: Trace) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class GloballyLetters(TraceEquivalence):
    name = "globally"

    def __call__(self, t, u):
        return globally_equiv(t, u)


class Exact(TraceEquivalence):
    name = "exact"

    def __call__(self, t, u):
        _same_alphabet(t, u)
        return t == u


@dataclass(frozen=True, repr=False)
class NStutterOneStep(TraceEquivalence):
    """Equal, or one trace is the other minus one ``n``-redundant letter."""

    n: int

    @property
    def name(self):
        return f"nstutter-one-step({self.n})"

    def __call__(self, t, u):
        return t == u or one_step_n_deletion(t, u, self.n) or one_step_n_deletion(u, t, self.n)


@dataclass(frozen=True, repr=False)
class NStutterBounded(TraceEquivalence):
    """Reachable by at most ``max_steps`` deletions/insertions of ``n``-redundant letters.

    Only positions inside the first unrolling of stem and period are
    touched, so this under-approximates the full stutter equivalence.
    """

    n: int
    max_steps: int = 3

    @property
    def name(self):
        return f"nstutter-bounded({self.n},{self.max_steps})"

    def neighbours(self, v: Trace):
        out = set()
        reach = len(v.stem) + (len(v.period) if v.is_lasso else 0)
        for j in range(reach):
            if not v.is_lasso and j + self.n + 1 >= len(v.stem):
                break
            if n_redundant(v, j, self.n):
                out.add(delete(v, j))
            # inserting a copy at j is the inverse of deleting an n-redundant j
            if v.is_lasso or j + self.n < len(v.stem):
                if all(index(v, j + k) == index(v, j) for k in range(1, self.n + 1)):
                    out.add(insert_copy(v, j))
        out.discard(v)
        return out

    def __call__(self, t, u):
        _same_alphabet(t, u)
        if t == u:
            return True
        seen = {t}
        frontier = deque([(t, 0)])
        while frontier:
            v, d = frontier.popleft()
            if d == self.max_steps:
                continue
            for w in self.neighbours(v):
                if w == u:
                    return True
                if w not in seen:
                    seen.add(w)
                    frontier.append((w, d + 1))
        return False


# -- (k, C)-equivalence ---------------------------------------------------------


class NoWitnessFound:
    """No bijection passed; falsy."""

    def __init__(self, tried: int):
        self.tried = tried

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NoWitnessFound(tried={self.tried})"


@dataclass(frozen=True)
class KcResult:
    value: bool
    witness: WitnessBijection | None = None
    counterexample: TraceAssignment | None = None
    direction: str | None = None
    tried: int = 0


def assignment_names(k: int) -> tuple:
    return tuple(f"p{i}" for i in range(1, k + 1))


def _check_with(T, k, eq, f):
    names = assignment_names(k)
    for combo in product(T.ordered, repeat=k):
        asg = TraceAssignment(zip(names, combo))
        if not eq(flatten(asg), flatten(asg.map(f))):
            return asg
    return None


def _candidates(T, U, k, eq):
    """Per source trace, targets compatible with it as a size-1 assignment."""
    if k == 0:
        return {t: list(U.ordered) for t in T.ordered}
    name = assignment_names(1)[0]

    def flat(t):
        return flatten(TraceAssignment({name: t}))

    return {t: [u for u in U.ordered if eq(flat(t), flat(u))] for t in T.ordered}


def kc_check(T: TraceSet, U: TraceSet, k: int, eq: TraceEquivalence, f: WitnessBijection | None = None) -> KcResult:
    """(k, C)-equivalence with a given witness, or by searching all bijections."""
    if T.alphabet != U.alphabet and set(T.alphabet) != set(U.alphabet):
        raise AlphabetMismatch("trace sets have different alphabets")
    if len(T) != len(U):
        return KcResult(False)
    if f is not None:
        bad = _check_with(T, k, eq, f)
        if bad is not None:
            return KcResult(False, counterexample=bad, direction="forward")
        bad = _check_with(U, k, eq, f.inverse())
        if bad is not None:
            return KcResult(False, counterexample=bad, direction="backward")
        return KcResult(True, witness=f)

    # backtracking over bijections, pruned by single-trace compatibility
    cand = _candidates(T, U, k, eq)
    src = sorted(T.ordered, key=lambda t: len(cand[t]))
    used = set()
    chosen = {}
    tried = 0

    def extend(i):
        nonlocal tried
        if i == len(src):
            tried += 1
            g = WitnessBijection(T, U, dict(chosen))
            if _check_with(T, k, eq, g) is None and _check_with(U, k, eq, g.inverse()) is None:
                return g
            return None
        t = src[i]
        for u in cand[t]:
            if u in used:
                continue
            used.add(u)
            chosen[t] = u
            g = extend(i + 1)
            if g is not None:
                return g
            used.discard(u)
            del chosen[t]
        return None

    g = extend(0)
    if g is None:
        return KcResult(False, tried=tried)
    return KcResult(True, witness=g)


def kc_equivalent(T: TraceSet, U: TraceSet, k: int, eq: TraceEquivalence, f: WitnessBijection | None = None):
    """``True``, ``False``, or :class:`NoWitnessFound` when searching without ``f``."""
    res = kc_check(T, U, k, eq, f)
    if res.value:
        return True
    if f is None and len(T) == len(U):
        return NoWitnessFound(res.tried)
    return False


# -- k-point equivalence ------------------------------------------------------------


def _joint_horizon(T: TraceSet, U: TraceSet) -> int:
    traces = list(T.traces) + list(U.traces)
    s = max((len(t.stem) for t in traces), default=0)
    return s + math.lcm(*(len(t.period) for t in traces)) if traces else 1


def k_point_violation(T: TraceSet, U: TraceSet, k: int):
    """A tuple of positions whose value signatures differ between the sets."""
    if set(T.alphabet) != set(U.alphabet):
        raise AlphabetMismatch("trace sets have different alphabets")
    if not (T.lasso_only and U.lasso_only):
        raise ValueError("k-point equivalence is defined on infinite traces")
    if len(T) != len(U):
        return ()
    H = _joint_horizon(T, U)
    for pos in combinations(range(H), min(k, H)):
        sig_t = Counter(tuple(index(t, i) for i in pos) for t in T.traces)
        sig_u = Counter(tuple(index(u, i) for i in pos) for u in U.traces)
        if sig_t != sig_u:
            return pos
    return None


def k_point_equivalent(T: TraceSet, U: TraceSet, k: int) -> bool:
    """For every ``k`` positions, some bijection preserves all values there."""
    return k_point_violation(T, U, k) is None
