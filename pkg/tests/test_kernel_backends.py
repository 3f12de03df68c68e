"""Native extension vs pure-Python kernel: identical bytecode, identical
results. Skipped when the extension is not built."""

import numpy as np
import pytest

from mannheim import kernel
from mannheim.expr import parse_expr
from mannheim.kernel import pure

native = pytest.importorskip("mannheim.kernel._native",
                             reason="native kernel not built")

SOURCES = (
    "1 + s",
    "sin(s)*cosh(s) - s^3/(2 + s^2)",
    "exp(-(s^2))*atan(s) + sqrt(s + 4)",
    "tan(s/4) + atanh(s/5)*acosh(s + 2)",
    "-(cosh(3 - s)/sinh(3 - s))",
)


def test_eval_program_parity_arithmetic_exact():
    # IEEE +-*/ round identically in C and numpy, so these are bit-exact
    svals = np.linspace(0.1, 2.0, 257)
    for src in ("1 + s", "s*s*(2 + s) - s*(1 - s)", "(s + 1)/(s + 2)"):
        prog = kernel.compile_ast(parse_expr(src))
        a = kernel.eval_program_many(prog, svals, backend=native)
        b = kernel.eval_program_many(prog, svals, backend=pure)
        assert np.array_equal(a, b), src


def test_eval_program_parity_transcendental():
    # pow and the transcendentals go through libm on one side and numpy
    # on the other; those carry a couple of ulp of latitude
    svals = np.linspace(0.1, 2.0, 257)
    for src in SOURCES:
        prog = kernel.compile_ast(parse_expr(src))
        a = kernel.eval_program_many(prog, svals, backend=native)
        b = kernel.eval_program_many(prog, svals, backend=pure)
        rel = np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b)))
        assert rel <= 5e-16, (src, rel)


def test_eval_program_scalar_matches_grid():
    prog = kernel.compile_ast(parse_expr(SOURCES[1]))
    grid = kernel.eval_program_many(prog, np.array([0.0, 0.3, 1.7]),
                                    backend=native)
    for s, want in zip((0.0, 0.3, 1.7), grid):
        assert kernel.eval_program(prog, s, backend=native) == want


def test_rk4_frame_parity():
    ds1 = kernel.compile_ast(parse_expr("1"))
    kap = kernel.compile_ast(parse_expr("-(cosh(3 - s)/sinh(3 - s))"))
    y0 = np.array([1.0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0], dtype=np.float64)
    args = (ds1, kap, False, 1, -1, y0, 0.0, 1e-3, 2000)
    ya, dya, da = kernel.rk4_frame(*args, backend=native)
    yb, dyb, db = kernel.rk4_frame(*args, backend=pure)
    assert np.max(np.abs(ya - yb)) <= 1e-13
    assert np.max(np.abs(dya - dyb)) <= 1e-13
    assert abs(da - db) <= 1e-13


def test_rk4_frame_circular_branch_parity():
    ds1 = kernel.compile_ast(parse_expr("1"))
    kap = kernel.compile_ast(parse_expr("0.5"))
    y0 = np.array([0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0], dtype=np.float64)
    args = (ds1, kap, True, -1, 1, y0, 0.0, 1e-3, 1500)
    ya, _, _ = kernel.rk4_frame(*args, backend=native)
    yb, _, _ = kernel.rk4_frame(*args, backend=pure)
    assert np.max(np.abs(ya - yb)) <= 1e-13


def test_backend_is_reported():
    assert kernel.BACKEND in ("native", "pure")
