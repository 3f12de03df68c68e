# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: stack-machine expression evaluation and the RK4
frame-integration loop. Mirrors pure.py instruction for instruction."""

from libc.math cimport (sin, cos, tan, sinh, cosh, tanh, exp, log, sqrt,
                        asin, acos, atan, asinh, acosh, atanh, pow, fabs, NAN)


cdef double _apply_fn(int idx, double x) nogil:
    if idx == 0:
        return sin(x)
    elif idx == 1:
        return cos(x)
    elif idx == 2:
        return tan(x)
    elif idx == 3:
        return sinh(x)
    elif idx == 4:
        return cosh(x)
    elif idx == 5:
        return tanh(x)
    elif idx == 6:
        return exp(x)
    elif idx == 7:
        return log(x)
    elif idx == 8:
        return sqrt(x)
    elif idx == 9:
        return asin(x)
    elif idx == 10:
        return acos(x)
    elif idx == 11:
        return atan(x)
    elif idx == 12:
        return asinh(x)
    elif idx == 13:
        return acosh(x)
    else:
        return atanh(x)


cdef double _eval(const int[::1] code, const double[::1] consts, double s) nogil:
    cdef double stack[256]
    cdef int sp = 0
    cdef int i = 0
    cdef int n = code.shape[0]
    cdef int op, arg
    cdef double a, b
    while i < n:
        op = code[i]
        arg = code[i + 1]
        i += 2
        if op == 0:
            stack[sp] = consts[arg]
            sp += 1
        elif op == 1:
            stack[sp] = s
            sp += 1
        elif op == 2:
            stack[sp - 1] = -stack[sp - 1]
        elif op <= 7:
            sp -= 1
            b = stack[sp]
            a = stack[sp - 1]
            if op == 3:
                stack[sp - 1] = a + b
            elif op == 4:
                stack[sp - 1] = a - b
            elif op == 5:
                stack[sp - 1] = a * b
            elif op == 6:
                stack[sp - 1] = a / b if b != 0.0 else NAN
            else:
                stack[sp - 1] = pow(a, b)
        else:
            stack[sp - 1] = _apply_fn(op - 8, stack[sp - 1])
    return stack[sp - 1]


def eval_program(const int[::1] code, const double[::1] consts, double s):
    return _eval(code, consts, s)


def eval_program_many(const int[::1] code, const double[::1] consts,
                      const double[::1] svals, double[::1] out):
    cdef Py_ssize_t j
    with nogil:
        for j in range(svals.shape[0]):
            out[j] = _eval(code, consts, svals[j])
    return out


cdef inline double _ldot3(const double* a, const double* b) nogil:
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


cdef double _gram_drift(const double* y, double eps1, double eps2, double epsa) nogil:
    cdef double d = fabs(_ldot3(y, y) - eps2)
    cdef double t
    t = fabs(_ldot3(y + 3, y + 3) - eps1)
    if t > d:
        d = t
    t = fabs(_ldot3(y + 6, y + 6) - epsa)
    if t > d:
        d = t
    t = fabs(_ldot3(y, y + 3))
    if t > d:
        d = t
    t = fabs(_ldot3(y, y + 6))
    if t > d:
        d = t
    t = fabs(_ldot3(y + 3, y + 6))
    if t > d:
        d = t
    return d


cdef void _normalize3(double* v) nogil:
    cdef double n = sqrt(fabs(_ldot3(v, v)))
    v[0] /= n
    v[1] /= n
    v[2] /= n


cdef void _project_out(double* v, const double* u, double eps) nogil:
    cdef double d = eps * _ldot3(v, u)
    v[0] -= d * u[0]
    v[1] -= d * u[1]
    v[2] -= d * u[2]


cdef void _gram_schmidt(double* y, double eps1, double eps2) nogil:
    _normalize3(y)
    _project_out(y + 3, y, eps2)
    _normalize3(y + 3)
    _project_out(y + 6, y, eps2)
    _project_out(y + 6, y + 3, eps1)
    _normalize3(y + 6)


cdef void _rhs(const int[::1] wc, const double[::1] wk,
               const int[::1] kc, const double[::1] kk,
               bint m2plus, double eps2, double s,
               const double* y, double* dy) nogil:
    cdef double w = _eval(wc, wk, s)
    cdef double kap = _eval(kc, kk, s)
    cdef int m
    cdef double q, h, a
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


def rk4_frame(const int[::1] ds1_code, const double[::1] ds1_consts,
              const int[::1] kappa_code, const double[::1] kappa_consts,
              bint m2plus, double eps1, double eps2,
              const double[::1] y0, double s0, double step, int n, int ortho_every,
              double[:, ::1] out_y, double[:, ::1] out_dy):
    cdef double epsa = -eps1 * eps2
    cdef double y[12]
    cdef double k1[12]
    cdef double k2[12]
    cdef double k3[12]
    cdef double k4[12]
    cdef double yt[12]
    cdef double max_drift = 0.0
    cdef double drift, s
    cdef int i, m

    for m in range(12):
        y[m] = y0[m]

    with nogil:
        _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2, s0, y, k1)
        for m in range(12):
            out_y[0, m] = y[m]
            out_dy[0, m] = k1[m]

        for i in range(n):
            s = s0 + i * step
            _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2, s, y, k1)
            for m in range(12):
                yt[m] = y[m] + 0.5 * step * k1[m]
            _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2,
                 s + 0.5 * step, yt, k2)
            for m in range(12):
                yt[m] = y[m] + 0.5 * step * k2[m]
            _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2,
                 s + 0.5 * step, yt, k3)
            for m in range(12):
                yt[m] = y[m] + step * k3[m]
            _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2,
                 s + step, yt, k4)
            for m in range(12):
                y[m] += step / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m])
            if (i + 1) % ortho_every == 0 or i == n - 1:
                drift = _gram_drift(y, eps1, eps2, epsa)
                if drift > max_drift:
                    max_drift = drift
                _gram_schmidt(y, eps1, eps2)
            _rhs(ds1_code, ds1_consts, kappa_code, kappa_consts, m2plus, eps2,
                 s0 + (i + 1) * step, y, k1)
            for m in range(12):
                out_y[i + 1, m] = y[m]
                out_dy[i + 1, m] = k1[m]

    return max_drift
