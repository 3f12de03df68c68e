"""Parametric curves built from expression triples.

A CurveDef owns three component ASTs and a parameter interval. Derivative
curves are produced symbolically and cached together with their compiled
programs, so repeated frame computations stay cheap.
"""

from __future__ import annotations

import math

import numpy as np

from . import expr as ex
from . import kernel
from .errors import EvalDomainError, NullTangentError, QuadratureError, UnitSpeedError

MAX_DERIV_ORDER = 4


class CurveDef:
    def __init__(self, components, domain):
        if len(components) != 3:
            raise ValueError("a curve needs exactly three components")
        s0, s1 = float(domain[0]), float(domain[1])
        if not (math.isfinite(s0) and math.isfinite(s1)) or s1 <= s0:
            raise ValueError(f"invalid domain [{s0}, {s1}]")
        self.components = tuple(components)
        self.domain = (s0, s1)
        self._derivs = {0: self.components}
        self._progs = {}

    @classmethod
    def from_source(cls, src: str, domain) -> "CurveDef":
        return cls(ex.parse_curve(src), domain)

    def deriv_components(self, order: int):
        if order < 0 or order > MAX_DERIV_ORDER:
            raise ValueError(f"derivative order must be in 0..{MAX_DERIV_ORDER}")
        while order not in self._derivs:
            prev = max(self._derivs)
            self._derivs[prev + 1] = tuple(ex.differentiate(c) for c in self._derivs[prev])
        return self._derivs[order]

    def programs(self, order: int):
        if order not in self._progs:
            self._progs[order] = tuple(kernel.compile_ast(c)
                                       for c in self.deriv_components(order))
        return self._progs[order]

    def _check_s(self, s: float) -> float:
        s = float(s)
        s0, s1 = self.domain
        edge = 1e-9 * max(1.0, s1 - s0)
        if s < s0 - edge or s > s1 + edge:
            raise ValueError(f"parameter {s} outside domain [{s0}, {s1}]")
        return s

    def eval(self, s: float, order: int = 0) -> np.ndarray:
        s = self._check_s(s)
        out = np.array([p(s) for p in self.programs(order)])
        if not np.all(np.isfinite(out)):
            raise EvalDomainError(f"curve evaluation non-finite at s={s}", s=s)
        return out

    def eval_many(self, svals, order: int = 0) -> np.ndarray:
        svals = np.asarray(svals, dtype=np.float64)
        cols = [p.eval_many(svals) for p in self.programs(order)]
        out = np.stack(cols, axis=-1)
        bad = ~np.isfinite(out)
        if bad.any():
            idx = int(np.argwhere(bad.any(axis=-1))[0])
            raise EvalDomainError(f"curve evaluation non-finite at s={svals[idx]}",
                                  s=float(svals[idx]))
        return out

    def sources(self) -> tuple[str, str, str]:
        return tuple(ex.to_source(c) for c in self.components)


def eval_curve(curve: CurveDef, order: int, s: float) -> np.ndarray:
    return curve.eval(s, order)


def speed(curve: CurveDef, s: float) -> float:
    d = curve.eval(s, 1)
    return math.sqrt(abs(-d[0] * d[0] + d[1] * d[1] + d[2] * d[2]))


# ---------------------------------------------------------------------------
# adaptive Simpson quadrature (Richardson-corrected, absolute tolerance)

def _asr(f, a, fa, m, fm, b, fb, whole, tol, depth):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * tol:
        return left + right + delta / 15.0
    if depth <= 0:
        raise QuadratureError(f"adaptive Simpson did not converge on [{a}, {b}]")
    half = 0.5 * tol
    return (_asr(f, a, fa, lm, flm, m, fm, left, half, depth - 1)
            + _asr(f, m, fm, rm, frm, b, fb, right, half, depth - 1))


def adaptive_simpson(f, a, b, tol=1e-10, max_depth=48):
    if b == a:
        return 0.0
    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _asr(f, a, fa, m, fm, b, fb, whole, tol, max_depth)


def arclength(curve: CurveDef, s0: float, s1: float, tol: float = 1e-10) -> float:
    """Lorentzian arclength of the curve between s0 and s1.

    The tangent must stay away from the null cone on the whole range; this is
    checked by sampling before integrating.
    """
    curve._check_s(s0)
    curve._check_s(s1)
    if s1 < s0:
        raise ValueError("s1 must not precede s0")
    if s1 == s0:
        return 0.0
    d = curve.eval_many(np.linspace(s0, s1, 129), order=1)
    norms = np.sqrt(np.abs(-d[:, 0] ** 2 + d[:, 1] ** 2 + d[:, 2] ** 2))
    scale = float(np.max(np.abs(d)))
    if float(np.min(norms)) <= 1e-7 * max(1.0, scale):
        smin = float(np.linspace(s0, s1, 129)[int(np.argmin(norms))])
        raise NullTangentError(f"tangent is null near s={smin}")
    return adaptive_simpson(lambda s: speed(curve, s), s0, s1, tol)


def unit_speed_deviation(curve: CurveDef, n: int = 129) -> float:
    s0, s1 = curve.domain
    d = curve.eval_many(np.linspace(s0, s1, n), order=1)
    norms = np.sqrt(np.abs(-d[:, 0] ** 2 + d[:, 1] ** 2 + d[:, 2] ** 2))
    return float(np.max(np.abs(norms - 1.0)))


def assert_unit_speed(curve: CurveDef, tol: float = 1e-6) -> None:
    dev = unit_speed_deviation(curve)
    if dev > tol:
        raise UnitSpeedError(f"curve is not unit speed (max deviation {dev:.3e})")


# ---------------------------------------------------------------------------
# cumulative arclength and its monotone cubic inverse (reparametrization)

def arclength_table(curve: CurveDef, n: int = 129, tol: float = 1e-10):
    """Knots s_i, cumulative lengths L_i and speeds v_i over the curve domain."""
    s0, s1 = curve.domain
    svals = np.linspace(s0, s1, n)
    speeds = np.array([speed(curve, s) for s in svals])
    if float(np.min(speeds)) <= 1e-7:
        raise NullTangentError("tangent is null somewhere on the domain")
    lengths = np.empty(n)
    lengths[0] = 0.0
    for i in range(1, n):
        lengths[i] = lengths[i - 1] + adaptive_simpson(
            lambda s: speed(curve, s), svals[i - 1], svals[i], tol)
    return svals, lengths, speeds


def _pchip_slopes(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Fritsch-Carlson monotone slopes for strictly increasing data."""
    h = np.diff(x)
    delta = np.diff(y) / h
    n = len(x)
    m = np.empty(n)
    m[0] = delta[0]
    m[-1] = delta[-1]
    for i in range(1, n - 1):
        if delta[i - 1] * delta[i] <= 0.0:
            m[i] = 0.0
        else:
            w1 = 2.0 * h[i] + h[i - 1]
            w2 = h[i] + 2.0 * h[i - 1]
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i])
    return m


def inverse_arclength(curve: CurveDef, n: int = 129):
    """Monotone cubic interpolant of s as a function of arclength.

    Returns (total_length, fn) where fn maps l in [0, total] to s.
    """
    svals, lengths, _ = arclength_table(curve, n)
    slopes = _pchip_slopes(lengths, svals)

    def fn(l: float) -> float:
        l = min(max(float(l), lengths[0]), lengths[-1])
        i = int(np.searchsorted(lengths, l, side="right") - 1)
        i = min(max(i, 0), len(lengths) - 2)
        hl = lengths[i + 1] - lengths[i]
        t = (l - lengths[i]) / hl
        h00 = (1.0 + 2.0 * t) * (1.0 - t) ** 2
        h10 = t * (1.0 - t) ** 2
        h01 = t * t * (3.0 - 2.0 * t)
        h11 = t * t * (t - 1.0)
        return (h00 * svals[i] + h10 * hl * slopes[i]
                + h01 * svals[i + 1] + h11 * hl * slopes[i + 1])

    return float(lengths[-1]), fn
