"""Command-line front end.

Exit status: 0 true, 1 false, 2 unknown, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import families
from .equivalence import GloballyLetters, NStutterOneStep, Exact, kc_check, k_point_violation
from .errors import HypertraceError
from .hyperltl import hyperltl_check
from .independence import (
    BoundedUnknown,
    dropped_by_slicing,
    point_violation,
    segment_violation,
    slice_after,
    slice_before,
    two_state_report,
)
from .io import read_traces, read_witness, render_traces, render_witness, write_traces
from .syntax import Action, PropertySelector, Semantics, parse_formula
from .traces import restrict

EXIT = {"true": 0, "false": 1, "unknown": 2}
USAGE_ERROR = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Verdict:
    check: str
    result: str  # "true" | "false" | "unknown"
    witness: object = None
    counterexample: object = None
    elapsed_ms: float = 0.0
    details: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "check": self.check,
                "result": self.result,
                "witness": self.witness,
                "counterexample": self.counterexample,
                "elapsed_ms": round(self.elapsed_ms, 3),
                "details": self.details,
                "warnings": self.warnings,
            },
            indent=2,
            sort_keys=True,
        )

    def to_text(self) -> str:
        lines = [f"{self.check}: {self.result}"]
        if self.witness is not None:
            lines.append(f"  witness: {self.witness}")
        if self.counterexample is not None:
            lines.append(f"  counterexample: {self.counterexample}")
        for k, v in self.details.items():
            lines.append(f"  {k}: {v}")
        lines.append(f"  elapsed: {self.elapsed_ms:.1f} ms")
        return "\n".join(lines)


def _word(b: bool) -> str:
    return "true" if b else "false"


def _cmd_eval(args) -> Verdict:
    text = Path(args.formula).read_text()
    phi = parse_formula(text, source=args.formula)
    T = read_traces(args.traces)
    res = hyperltl_check(phi, T)
    return Verdict(
        "eval",
        _word(res.value),
        witness=res.witness.describe(T) if res.witness is not None else None,
        counterexample=res.counterexample.describe(T) if res.counterexample is not None else None,
        details={"formula": str(phi)},
    )


def _cmd_two_state(args) -> Verdict:
    T = read_traces(args.traces)
    action = Action(args.action)
    warnings = []
    if action is Action.HIDDEN:
        if args.a is not None and args.a in T.alphabet:
            T = restrict(T, args.a)
            warnings.append(f"variable {args.a!r} removed before the hidden-action search")
        sel = PropertySelector(args.semantics, action, args.x, args.y, args.z, None)
    else:
        if args.a is None:
            raise UsageError("--a is required unless --action hidden")
        sel = PropertySelector(args.semantics, action, args.x, args.y, args.z, args.a)
        T.check_variable(args.a)
        dropped = dropped_by_slicing(T, args.a)
        if dropped:
            warnings.append(f"traces never reaching {args.a!r} dropped from the slices: {', '.join(dropped)}")
    rep = two_state_report(T, sel, args.hidden_bound)
    if isinstance(rep.value, BoundedUnknown):
        result = "unknown"
        details = {"searched_bound": rep.value.bound, "exhaustive_from": rep.value.cap}
    else:
        result = _word(rep.value)
        details = {}
    name = f"two-state/{sel.semantics.value}/{sel.action.value}"
    return Verdict(
        name,
        result,
        witness=rep.cuts if (rep.value is True and action is Action.HIDDEN) else None,
        counterexample=rep.counterexample if rep.value is not True else None,
        details={**details, **({"cuts": rep.cuts} if rep.cuts and action is not Action.HIDDEN else {})},
        warnings=warnings,
    )


def _cmd_independence(args) -> Verdict:
    T = read_traces(args.traces)
    sem = Semantics(args.semantics)
    if sem is Semantics.POINT:
        v = point_violation(T, args.x, args.y)
        cex = None if v is None else {"time": v[0], "x_from": T.label(v[1]), "y_from": T.label(v[2])}
    else:
        v = segment_violation(T, args.x, args.y)
        cex = None if v is None else {"x_from": T.label(v[0]), "y_from": T.label(v[1])}
    return Verdict(f"independence/{sem.value}", _word(v is None), counterexample=cex)


def _cmd_equiv(args) -> Verdict:
    A, B = read_traces(args.a_traces), read_traces(args.b_traces)
    if args.kind == "kpoint":
        v = k_point_violation(A, B, args.k)
        cex = None
        if v == ():
            cex = {"reason": "different cardinalities"}
        elif v is not None:
            cex = {"positions": list(v)}
        return Verdict(f"equiv/kpoint(k={args.k})", _word(v is None), counterexample=cex)
    if args.kind == "nstutter":
        if args.n is None:
            raise UsageError("--n is required for --kind nstutter")
        eq = NStutterOneStep(args.n)
    elif args.kind == "globally":
        eq = GloballyLetters()
    else:
        eq = Exact()
    f = read_witness(args.witness, A, B) if args.witness else None
    res = kc_check(A, B, args.k, eq, f)
    if res.value:
        result = "true"
    elif args.kind == "nstutter":
        # one-step deletion only under-approximates stutter equivalence
        result = "unknown"
    else:
        result = "false"
    cex = None
    if res.counterexample is not None:
        side = A if res.direction == "forward" else B
        cex = {"direction": res.direction, "assignment": res.counterexample.describe(side)}
    elif not res.value:
        cex = {"reason": "different cardinalities" if len(A) != len(B) else f"no bijection passed ({res.tried} tried)"}
    wit = dict(res.witness.pairs()) if (res.witness is not None and f is None) else None
    return Verdict(f"equiv/{args.kind}(k={args.k}, {eq!r})", result, witness=wit, counterexample=cex)


def _cmd_gen(args) -> Verdict:
    if args.family == "table1":
        T, Tp, f = families.motivating_example(), None, None
    elif args.family == "point":
        T, Tp, f = families.point_family(args.n)
    else:
        T, Tp, f = families.async_family(args.n)
    write_traces(T, args.out)
    written = [args.out]
    if args.out_prime:
        if Tp is None:
            raise UsageError("family table1 has no primed set")
        write_traces(Tp, args.out_prime)
        written.append(args.out_prime)
    if args.out_witness:
        if f is None:
            raise UsageError("family table1 has no witness map")
        Path(args.out_witness).write_text(render_witness(f))
        written.append(args.out_witness)
    return Verdict(f"gen-family/{args.family}", "true", details={"written": written})


def _cmd_slice(args) -> Verdict:
    T = read_traces(args.traces)
    S = slice_before(T, args.a) if args.part == "before" else slice_after(T, args.a)
    dropped = dropped_by_slicing(T, args.a)
    v = Verdict(f"slice/{args.part}", "true", details={"traces": render_traces(S)})
    if dropped:
        v.warnings.append(f"traces never reaching {args.a!r} dropped: {', '.join(dropped)}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypertrace", description="Check hyperproperties over finite sets of lasso traces.")
    p.add_argument("--json", action="store_true", help="emit a JSON verdict")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate a HyperLTL sentence")
    e.add_argument("formula")
    e.add_argument("traces")
    e.set_defaults(run=_cmd_eval)

    c = sub.add_parser("check", help="run an independence or equivalence check")
    csub = c.add_subparsers(dest="what", required=True, parser_class=_Parser)

    ts = csub.add_parser("two-state")
    ts.add_argument("--semantics", choices=["point", "segment"], required=True)
    ts.add_argument("--action", choices=["sync", "async", "hidden"], required=True)
    ts.add_argument("--x", required=True)
    ts.add_argument("--y", required=True)
    ts.add_argument("--z", required=True)
    ts.add_argument("--a")
    ts.add_argument("--hidden-bound", type=int, help="largest cut searched (default: horizon + lcm)")
    ts.add_argument("traces")
    ts.set_defaults(run=_cmd_two_state)

    ind = csub.add_parser("independence")
    ind.add_argument("--semantics", choices=["point", "segment"], required=True)
    ind.add_argument("--x", required=True)
    ind.add_argument("--y", required=True)
    ind.add_argument("traces")
    ind.set_defaults(run=_cmd_independence)

    eq = csub.add_parser("equiv")
    eq.add_argument("--kind", choices=["kc", "kpoint", "globally", "nstutter"], required=True)
    eq.add_argument("--k", type=int, required=True)
    eq.add_argument("--n", type=int)
    eq.add_argument("--witness")
    eq.add_argument("a_traces")
    eq.add_argument("b_traces")
    eq.set_defaults(run=_cmd_equiv)

    g = sub.add_parser("gen-family", help="write a generated family to trace files")
    g.add_argument("--family", choices=["point", "async", "table1"], required=True)
    g.add_argument("--n", type=int, default=1)
    g.add_argument("--out", required=True)
    g.add_argument("--out-prime")
    g.add_argument("--out-witness")
    g.set_defaults(run=_cmd_gen)

    s = sub.add_parser("slice", help="print the before/after slice")
    s.add_argument("--a", required=True)
    s.add_argument("--part", choices=["before", "after"], required=True)
    s.add_argument("traces")
    s.set_defaults(run=_cmd_slice)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return USAGE_ERROR
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        verdict = args.run(args)
    except UsageError as exc:
        print(f"hypertrace: {exc}", file=err)
        return USAGE_ERROR
    except (HypertraceError, OSError, ValueError, KeyError) as exc:
        print(f"hypertrace: error: {exc}", file=err)
        return USAGE_ERROR
    verdict.elapsed_ms = (time.perf_counter() - start) * 1000
    for w in verdict.warnings:
        print(f"warning: {w}", file=err)
    if args.json:
        print(verdict.to_json(), file=out)
    elif args.command == "slice":
        out.write(verdict.details["traces"])
    else:
        print(verdict.to_text(), file=out)
    return EXIT[verdict.result]


def main():
    sys.exit(run())
