"""Kernel backend selection.

The compiled Cython extension is preferred when present; the pure Python
backend (numpy-vectorized for grids) is the fallback. Set MANNHEIM_PURE_KERNEL=1
to force the fallback, e.g. for the backend comparison benchmark.
"""

from __future__ import annotations

import os

import numpy as np

from . import pure

if os.environ.get("MANNHEIM_PURE_KERNEL") == "1":
    _backend = pure
    BACKEND = "pure"
else:
    try:
        from . import _native as _backend  # type: ignore[no-redef]
        BACKEND = "native"
    except ImportError:
        _backend = pure
        BACKEND = "pure"

from .program import Program, compile_ast, compile_source  # noqa: E402


def eval_program(prog: Program, s: float, backend=None) -> float:
    b = backend if backend is not None else _backend
    return b.eval_program(prog.code, prog.consts, s)


def eval_program_many(prog: Program, svals, backend=None) -> np.ndarray:
    b = backend if backend is not None else _backend
    svals = np.ascontiguousarray(svals, dtype=np.float64)
    out = np.empty(svals.shape[0], dtype=np.float64)
    b.eval_program_many(prog.code, prog.consts, svals, out)
    return out


def rk4_frame(ds1_prog: Program, kappa_prog: Program, m2plus: bool,
              eps1: int, eps2: int, y0, s0: float, step: float, n: int,
              ortho_every: int = 16, backend=None):
    """Integrate the frame ODE; returns (nodes, node_derivatives, max_drift)."""
    b = backend if backend is not None else _backend
    y0 = np.ascontiguousarray(y0, dtype=np.float64)
    out_y = np.empty((n + 1, 12), dtype=np.float64)
    out_dy = np.empty((n + 1, 12), dtype=np.float64)
    drift = b.rk4_frame(ds1_prog.code, ds1_prog.consts,
                        kappa_prog.code, kappa_prog.consts,
                        bool(m2plus), float(eps1), float(eps2),
                        y0, float(s0), float(step), int(n), int(ortho_every),
                        out_y, out_dy)
    return out_y, out_dy, drift
