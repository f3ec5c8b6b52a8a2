"""Trace assignments, flattening and HyperLTL evaluation.

Two independent evaluation routes exist for quantifier-free bodies:

* :func:`hyperltl_eval` zips the assigned traces into one trace over the
  indexed alphabet ``a_p`` and hands the renamed body to the LTL table
  evaluator;
* :func:`eval_with_assignment` walks the formula directly, reading each atom
  ``a[p]`` from the trace bound to ``p``.

They must always agree, which the test-suite checks on random instances.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType

from .errors import AlphabetMismatch, FiniteTraceInAssignment, UnboundFreeVariable
from .ltl import ltl_eval
from .syntax import (
    And,
    Atom,
    Const,
    Finally,
    Formula,
    Globally,
    HyperLtlFormula,
    Iff,
    Implies,
    Next,
    Not,
    Or,
    Quantifier,
    Until,
    atoms,
    flatten_formula,
)
from .traces import Trace, TraceSet, compose_all, index

__all__ = [
    "TraceAssignment",
    "flat_name",
    "flatten",
    "flat_alphabet",
    "hyperltl_eval",
    "hyperltl_check",
    "eval_with_assignment",
    "CheckResult",
]


def flat_name(var: str, trace_var: str) -> str:
    return f"{var}_{trace_var}"


class TraceAssignment(Mapping):
    """Immutable partial map from trace variables to traces."""

    __slots__ = ("_b",)

    def __init__(self, bindings=()):
        self._b = MappingProxyType(dict(bindings))

    def __getitem__(self, pi):
        return self._b[pi]

    def __iter__(self):
        return iter(sorted(self._b))

    def __len__(self):
        return len(self._b)

    def __hash__(self):
        return hash(frozenset(self._b.items()))

    def __eq__(self, other):
        if isinstance(other, TraceAssignment):
            return dict(self._b) == dict(other._b)
        return NotImplemented

    def __repr__(self):
        return f"TraceAssignment({dict(self._b)!r})"

    @property
    def variables(self) -> frozenset:
        return frozenset(self._b)

    def update(self, pi, trace: Trace) -> "TraceAssignment":
        d = dict(self._b)
        d[pi] = trace
        return TraceAssignment(d)

    def map(self, f) -> "TraceAssignment":
        """Apply ``f`` to every bound trace (``f ∘ Π``)."""
        return TraceAssignment({pi: f(t) for pi, t in self._b.items()})

    def describe(self, T: TraceSet | None = None) -> dict:
        if T is None:
            return {pi: repr(self._b[pi]) for pi in self}
        return {pi: T.label(self._b[pi]) for pi in self}


def flat_alphabet(assignment: TraceAssignment) -> tuple:
    """Flattened variable names, sorted by trace variable then variable."""
    return tuple(
        flat_name(a, pi) for pi in sorted(assignment) for a in sorted(assignment[pi].variables)
    )


def flatten(assignment: TraceAssignment) -> Trace:
    for pi, t in assignment.items():
        if not t.is_lasso:
            raise FiniteTraceInAssignment(f"trace bound to {pi} is finite")
    return _flatten_cached(tuple(sorted(assignment.items(), key=lambda kv: kv[0])))


@lru_cache(maxsize=65536)
def _flatten_cached(items) -> Trace:
    parts = [t.rename(lambda a, pi=pi: flat_name(a, pi)) for pi, t in items]
    return compose_all(parts)


def _check_alphabet(body: Formula, T: TraceSet):
    for a in atoms(body):
        if a.trace_var is not None and a.var not in T.alphabet:
            raise AlphabetMismatch(f"variable {a.var!r} not in alphabet {list(T.alphabet)}")


@dataclass(frozen=True)
class CheckResult:
    value: bool
    witness: TraceAssignment | None = None
    counterexample: TraceAssignment | None = None


def hyperltl_check(phi: HyperLtlFormula, T: TraceSet) -> CheckResult:
    """Evaluate a closed sentence at time 0, reporting the deciding choice.

    For a sentence starting with a block of ``forall`` that is false, the
    falsifying bindings of that block are returned as the counterexample;
    dually for a leading ``exists`` block that is true.
    """
    if phi.free:
        raise UnboundFreeVariable(f"free trace variables {sorted(phi.free)}")
    _check_alphabet(phi.body, T)
    if not T.lasso_only:
        raise FiniteTraceInAssignment("HyperLTL is evaluated over infinite traces only")
    flat_body = flatten_formula(phi.body)
    traces = T.ordered
    prefix = phi.prefix
    lead = prefix[0][0] if prefix else None
    cache = {}

    def body_value(assignment):
        used = {pi: assignment[pi] for pi in assignment}
        key = frozenset(used.items())
        if key not in cache:
            cache[key] = ltl_eval(flat_body, flatten(TraceAssignment(used)), 0)
        return cache[key]

    def go(k, assignment):
        if k == len(prefix):
            return body_value(assignment), assignment
        q, pi = prefix[k]
        want = q is Quantifier.EXISTS
        for t in traces:
            v, path = go(k + 1, assignment.update(pi, t))
            if v == want:
                return want, path
        return (not want), assignment

    value, path = go(0, TraceAssignment())
    # only the leading block has a meaningful deciding choice
    lead_vars = []
    for q, pi in prefix:
        if q is not lead:
            break
        lead_vars.append(pi)
    decided = (lead is Quantifier.FORALL and not value) or (lead is Quantifier.EXISTS and value)
    if not decided:
        return CheckResult(value)
    path = TraceAssignment({pi: path[pi] for pi in lead_vars})
    if value:
        return CheckResult(value, witness=path)
    return CheckResult(value, counterexample=path)


def hyperltl_eval(phi: HyperLtlFormula, T: TraceSet) -> bool:
    return hyperltl_check(phi, T).value


# -- direct semantics ---------------------------------------------------------


def eval_with_assignment(phi, assignment: TraceAssignment, T: TraceSet, i: int = 0) -> bool:
    """Satisfaction ``(Π, i) ⊨ φ`` by direct recursion on the formula.

    ``phi`` may be a :class:`HyperLtlFormula` (possibly open) or a bare body.
    """
    if isinstance(phi, HyperLtlFormula):
        prefix, body = phi.prefix, phi.body
    else:
        prefix, body = (), phi
    bound = {pi for _, pi in prefix} | set(assignment)
    missing = {a.trace_var for a in atoms(body) if a.trace_var is not None} - bound
    if missing:
        raise UnboundFreeVariable(f"free trace variables {sorted(missing)} are not assigned")
    _check_alphabet(body, T)
    return _quantify(prefix, body, assignment, T, i)


def _quantify(prefix, body, assignment, T, i):
    if not prefix:
        return _Direct(body, assignment).at(i)
    (q, pi), rest = prefix[0], prefix[1:]
    results = (_quantify(rest, body, assignment.update(pi, t), T, i) for t in T.ordered)
    return any(results) if q is Quantifier.EXISTS else all(results)


class _Direct:
    """Recursive bounded evaluation over the joint shape of the assignment."""

    def __init__(self, body, assignment):
        for pi, t in assignment.items():
            if not t.is_lasso:
                raise FiniteTraceInAssignment(f"trace bound to {pi} is finite")
        self.body = body
        self.asg = assignment
        traces = list(assignment.values())
        self.S = max((len(t.stem) for t in traces), default=0)
        self.L = math.lcm(*(len(t.period) for t in traces)) if traces else 1
        self.memo = {}

    def norm(self, i):
        if i >= self.S + self.L:
            return self.S + (i - self.S) % self.L
        return i

    def window(self, i):
        # every value on the suffix from i shows up in [i, max(i,S)+L)
        return range(i, max(i, self.S) + self.L)

    def at(self, i):
        return self.ev(self.body, self.norm(i))

    def ev(self, f, i):
        key = (f, i)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        v = self._ev(f, i)
        self.memo[key] = v
        return v

    def _ev(self, f, i):
        ev, norm = self.ev, self.norm
        if isinstance(f, Atom):
            if f.trace_var is None:
                raise ValueError(f"plain atom {f.var!r} in a hyper formula")
            return index(self.asg[f.trace_var], i)[f.var]
        if isinstance(f, Const):
            return f.value
        if isinstance(f, Not):
            return not ev(f.arg, i)
        if isinstance(f, Or):
            return ev(f.left, i) or ev(f.right, i)
        if isinstance(f, And):
            return ev(f.left, i) and ev(f.right, i)
        if isinstance(f, Implies):
            return (not ev(f.left, i)) or ev(f.right, i)
        if isinstance(f, Iff):
            return ev(f.left, i) == ev(f.right, i)
        if isinstance(f, Next):
            return ev(f.arg, norm(i + 1))
        if isinstance(f, Until):
            for j in self.window(i):
                if ev(f.right, norm(j)):
                    return True
                if not ev(f.left, norm(j)):
                    return False
            return False
        if isinstance(f, Globally):
            return all(ev(f.arg, norm(j)) for j in self.window(i))
        if isinstance(f, Finally):
            return any(ev(f.arg, norm(j)) for j in self.window(i))
        raise TypeError(f"unknown node {type(f).__name__}")
