"""Time both validators on the numba and numpy kernels.

    python3 benchmarks/bench_validators.py [--count N] [--repeat R]

Candidates are generated once and reused, so only validation is timed.
The first numba pass is a warm-up and absorbs compilation.
"""

from __future__ import annotations

import argparse
import time

from accessknow import _kernels
from accessknow.kernel import Logic, LogicId
from accessknow.models import validate_def810, validate_thm870
from accessknow.models.generate import candidate_stream

LOGICS = [LogicId(Logic.IEL), LogicId(Logic.L5), LogicId(Logic.EL5),
          LogicId(Logic.L5ACminus, 2), LogicId(Logic.L5AC, 2)]


def time_backend(use_numba: bool, batches, repeat: int) -> float:
    _kernels.HAVE_NUMBA = use_numba
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for logic, models in batches:
            for M in models:
                validate_def810(logic, M)
                validate_thm870(logic, M)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=2000, help="candidates per logic")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    batches = [(lg, list(candidate_stream(lg, args.count, seed=1))) for lg in LOGICS]
    n = sum(len(m) for _, m in batches)
    have = _kernels.HAVE_NUMBA
    rows = []
    if have:
        time_backend(True, [(lg, m[:20]) for lg, m in batches], 1)   # compile
        rows.append(("numba", time_backend(True, batches, args.repeat)))
    else:
        print("numba unavailable (or ACCESSKNOW_PURE_NUMPY=1); timing numpy only")
    rows.append(("numpy", time_backend(False, batches, args.repeat)))
    _kernels.HAVE_NUMBA = have

    print(f"{n} candidates x 2 validators, best of {args.repeat}")
    for name, t in rows:
        print(f"  {name:6s} {t:8.3f}s  {1e6 * t / (2 * n):8.1f} us/validation")
    if len(rows) == 2:
        print(f"  speedup {rows[1][1] / rows[0][1]:.2f}x")


if __name__ == "__main__":
    main()
