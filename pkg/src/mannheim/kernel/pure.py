"""Pure Python kernel backend.

Scalar program evaluation is a plain interpreter loop; grid evaluation runs
the same stack machine over whole numpy arrays so large grids stay fast even
without the compiled extension. The RK4 loop mirrors _native.pyx exactly.
"""

from __future__ import annotations

import math

import numpy as np

_FUNCS = (math.sin, math.cos, math.tan, math.sinh, math.cosh, math.tanh,
          math.exp, math.log, math.sqrt, math.asin, math.acos, math.atan,
          math.asinh, math.acosh, math.atanh)

_NP_FUNCS = (np.sin, np.cos, np.tan, np.sinh, np.cosh, np.tanh,
             np.exp, np.log, np.sqrt, np.arcsin, np.arccos, np.arctan,
             np.arcsinh, np.arccosh, np.arctanh)


def eval_program(code, consts, s):
    stack = []
    push = stack.append
    n = len(code)
    i = 0
    while i < n:
        op = code[i]
        arg = code[i + 1]
        i += 2
        if op == 0:
            push(consts[arg])
        elif op == 1:
            push(s)
        elif op == 2:
            stack[-1] = -stack[-1]
        elif op <= 7:
            b = stack.pop()
            a = stack[-1]
            if op == 3:
                stack[-1] = a + b
            elif op == 4:
                stack[-1] = a - b
            elif op == 5:
                stack[-1] = a * b
            elif op == 6:
                stack[-1] = a / b if b != 0.0 else math.nan
            else:
                try:
                    stack[-1] = math.pow(a, b)
                except (ValueError, OverflowError):
                    stack[-1] = math.nan
        else:
            try:
                stack[-1] = _FUNCS[op - 8](stack[-1])
            except (ValueError, OverflowError):
                stack[-1] = math.nan
    return stack[-1]


def eval_program_many(code, consts, svals, out):
    svals = np.asarray(svals, dtype=np.float64)
    stack = []
    push = stack.append
    n = len(code)
    with np.errstate(all="ignore"):
        i = 0
        while i < n:
            op = code[i]
            arg = code[i + 1]
            i += 2
            if op == 0:
                push(consts[arg])
            elif op == 1:
                push(svals)
            elif op == 2:
                stack[-1] = np.negative(stack[-1])
            elif op <= 7:
                b = stack.pop()
                a = stack[-1]
                if op == 3:
                    stack[-1] = a + b
                elif op == 4:
                    stack[-1] = a - b
                elif op == 5:
                    stack[-1] = a * b
                elif op == 6:
                    stack[-1] = np.divide(a, b)
                else:
                    stack[-1] = np.power(a, b, where=True)
            else:
                stack[-1] = _NP_FUNCS[op - 8](stack[-1])
    res = stack[-1]
    out[:] = res  # broadcasts when the program is constant
    return out


def _ldot(ax, ay, az, bx, by, bz):
    return -ax * bx + ay * by + az * bz


def _gram_drift(y, eps1, eps2, epsa):
    q = y[0:3]
    h = y[3:6]
    a = y[6:9]
    d = abs(_ldot(*q, *q) - eps2)
    d = max(d, abs(_ldot(*h, *h) - eps1))
    d = max(d, abs(_ldot(*a, *a) - epsa))
    d = max(d, abs(_ldot(*q, *h)))
    d = max(d, abs(_ldot(*q, *a)))
    d = max(d, abs(_ldot(*h, *a)))
    return d


def _normalize(v, i):
    n2 = _ldot(v[i], v[i + 1], v[i + 2], v[i], v[i + 1], v[i + 2])
    n = math.sqrt(abs(n2))
    v[i] /= n
    v[i + 1] /= n
    v[i + 2] /= n


def _project_out(v, i, u, j, eps):
    d = eps * _ldot(v[i], v[i + 1], v[i + 2], u[j], u[j + 1], u[j + 2])
    v[i] -= d * u[j]
    v[i + 1] -= d * u[j + 1]
    v[i + 2] -= d * u[j + 2]


def _gram_schmidt(y, eps1, eps2):
    _normalize(y, 0)
    _project_out(y, 3, y, 0, eps2)
    _normalize(y, 3)
    _project_out(y, 6, y, 0, eps2)
    _project_out(y, 6, y, 3, eps1)
    _normalize(y, 6)


def _rhs(wc, wk, kc, kk, m2plus, eps2, s, y, dy):
    w = eval_program(wc, wk, s)
    kap = eval_program(kc, kk, s)
    # layout: q h a c; dc/ds = q
    for m in range(3):
        q = y[m]
        h = y[3 + m]
        a = y[6 + m]
        dy[m] = w * h
        if m2plus:
            dy[3 + m] = w * (q + kap * a)
            dy[6 + m] = w * kap * h
        else:
            dy[3 + m] = w * (-eps2 * q + kap * a)
            dy[6 + m] = w * eps2 * kap * h
        dy[9 + m] = q


def rk4_frame(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps1, eps2,
              y0, s0, step, n, ortho_every, out_y, out_dy):
    """Classic fixed-step RK4 for the moving frame plus its striction curve.

    Re-orthonormalizes with Lorentz Gram-Schmidt every ortho_every steps and
    returns the worst pre-correction Gram deviation seen.
    """
    epsa = -eps1 * eps2
    y = [float(v) for v in y0]
    k1 = [0.0] * 12
    k2 = [0.0] * 12
    k3 = [0.0] * 12
    k4 = [0.0] * 12
    yt = [0.0] * 12
    max_drift = 0.0

    _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2, s0, y, k1)
    out_y[0, :] = y
    out_dy[0, :] = k1

    for i in range(n):
        s = s0 + i * step
        _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2, s, y, k1)
        for m in range(12):
            yt[m] = y[m] + 0.5 * step * k1[m]
        _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2, s + 0.5 * step, yt, k2)
        for m in range(12):
            yt[m] = y[m] + 0.5 * step * k2[m]
        _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2, s + 0.5 * step, yt, k3)
        for m in range(12):
            yt[m] = y[m] + step * k3[m]
        _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2, s + step, yt, k4)
        for m in range(12):
            y[m] += step / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m])
        if (i + 1) % ortho_every == 0 or i == n - 1:
            drift = _gram_drift(y, eps1, eps2, epsa)
            if drift > max_drift:
                max_drift = drift
            _gram_schmidt(y, eps1, eps2)
        _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2,
             s0 + (i + 1) * step, y, k1)
        out_y[i + 1, :] = y
        out_dy[i + 1, :] = k1

    return max_drift
