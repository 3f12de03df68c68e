"""Native vs pure-Python kernel timing.

Runs the same bytecode programs through both backends: expression grids of
increasing size and a fixed-step frame integration. Invoke from the repo
root after an editable install:

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from mannheim import kernel
from mannheim.expr import parse_expr
from mannheim.kernel import pure

EXPR = "-(cosh(3 - s)/(sinh(3 - s))) + sin(s)*exp(-(s^2))/(2 + s^2)"


def _best(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_eval(repeat: int) -> None:
    try:
        from mannheim.kernel import _native as native
    except ImportError:
        native = None
    prog = kernel.compile_ast(parse_expr(EXPR))
    print(f"expression grid: {EXPR}")
    print(f"{'n':>10} {'pure':>12} {'native':>12} {'speedup':>9}")
    for n in (1_000, 10_000, 100_000, 1_000_000):
        svals = np.linspace(0.1, 2.0, n)
        t_pure = _best(lambda: kernel.eval_program_many(prog, svals,
                                                        backend=pure), repeat)
        if native is None:
            print(f"{n:>10} {t_pure * 1e3:>10.3f}ms {'-':>12} {'-':>9}")
            continue
        t_nat = _best(lambda: kernel.eval_program_many(prog, svals,
                                                       backend=native), repeat)
        print(f"{n:>10} {t_pure * 1e3:>10.3f}ms {t_nat * 1e3:>10.3f}ms "
              f"{t_pure / t_nat:>8.1f}x")


def bench_rk4(repeat: int) -> None:
    try:
        from mannheim.kernel import _native as native
    except ImportError:
        native = None
    ds1 = kernel.compile_ast(parse_expr("1"))
    kap = kernel.compile_ast(parse_expr("-(cosh(3 - s)/sinh(3 - s))"))
    y0 = np.array([1.0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0])
    print("\nframe integration (RK4 over s in [0, 2])")
    print(f"{'steps':>10} {'pure':>12} {'native':>12} {'speedup':>9}")
    for n in (2_000, 20_000, 200_000):
        args = (ds1, kap, False, 1, -1, y0, 0.0, 2.0 / n, n)
        t_pure = _best(lambda: kernel.rk4_frame(*args, backend=pure), repeat)
        if native is None:
            print(f"{n:>10} {t_pure * 1e3:>10.3f}ms {'-':>12} {'-':>9}")
            continue
        t_nat = _best(lambda: kernel.rk4_frame(*args, backend=native), repeat)
        print(f"{n:>10} {t_pure * 1e3:>10.3f}ms {t_nat * 1e3:>10.3f}ms "
              f"{t_pure / t_nat:>8.1f}x")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3,
                    help="repetitions per measurement, best-of is reported")
    args = ap.parse_args()
    print(f"selected backend at import: {kernel.BACKEND}")
    bench_eval(args.repeat)
    bench_rk4(args.repeat)


if __name__ == "__main__":
    main()
