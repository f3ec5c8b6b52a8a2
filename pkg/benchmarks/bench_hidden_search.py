"""Time the hidden-action cut search with and without numba.

    python benchmarks/bench_hidden_search.py [--repeat 3]

The backend is picked per call from HYPERTRACE_DISABLE_NUMBA, so both runs
happen in one process. The numba numbers exclude the first (compiling) call.
"""

import argparse
import os
import random
import time

from hypertrace import _kernels
from hypertrace.families import async_family
from hypertrace.generators import random_trace_set
from hypertrace.independence import hidden_cap, two_state_report
from hypertrace.syntax import PropertySelector
from hypertrace.traces import restrict


def cases():
    for n in (0, 1, 2):
        R = restrict(async_family(n).primed, "a")
        yield f"async'|a n={n} point", R, "point", 5 * n + 24
        yield f"async'|a n={n} segment", R, "segment", 5 * n + 24
    rng = random.Random(1)
    sets = [random_trace_set(rng, ("x", "y", "z"), 4, 3, 2) for _ in range(30)]
    yield "30 random sets point", sets, "point", None
    yield "30 random sets segment", sets, "segment", None


def run_case(target, sem, bound):
    sel = PropertySelector(sem, "hidden", a=None)
    targets = target if isinstance(target, list) else [target]
    return [two_state_report(T, sel, bound if bound is not None else hidden_cap(T)).value for T in targets]


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba is not installed; only the numpy backend is available")
    print(f"{'case':28} {'numpy s':>10} {'numba s':>10} {'speedup':>8}  same")
    for name, target, sem, bound in cases():
        os.environ["HYPERTRACE_DISABLE_NUMBA"] = "1"
        t_np, v_np = timed(lambda: run_case(target, sem, bound), args.repeat)
        if _kernels.HAVE_NUMBA:
            os.environ["HYPERTRACE_DISABLE_NUMBA"] = "0"
            run_case(target, sem, bound)  # compile
            t_nb, v_nb = timed(lambda: run_case(target, sem, bound), args.repeat)
            print(f"{name:28} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}  {v_np == v_nb}")
        else:
            print(f"{name:28} {t_np:10.4f} {'-':>10} {'-':>8}  -")


if __name__ == "__main__":
    main()
