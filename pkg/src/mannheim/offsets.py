"""Mannheim offsets of timelike ruled surfaces.

An offset surface shares rulings with its base in one-to-one correspondence,
with base curve c*(s) = c(s) + R(s)a(s) and director obtained by rotating
(q, h) by an angle theta inside the frame. Three pairings occur, named by the
base and target surface types. The middle row of every transformation is
h* = a: the asymptotic normal of the base is the central normal of the
offset, which is the defining Mannheim property.

R and theta are expressions in s. A developable pair additionally forces
d(theta)/ds = -ds1/ds, so constant-theta offsets of curved bases are not
Mannheim pairs even though the surface itself is well defined.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import expr as ex
from . import kernel
from . import surfaces as rg
from .errors import (DegenerateSurfaceError, DivisionByZero,
                     NoRealSolutionError, PairingMismatchError)
from .surfaces import FrameSample, M1_MINUS, M1_PLUS, M2_PLUS
from .vectors import ldot_arr, lcross_arr


class Pairing(enum.Enum):
    M1M_TO_M1P = "M1mToM1p"
    M1M_TO_M1M = "M1mToM1m"
    M1P_TO_M2P = "M1pToM2p"

    @property
    def base_tag(self) -> str:
        return M1_PLUS if self is Pairing.M1P_TO_M2P else M1_MINUS

    @property
    def target_tag(self) -> str:
        return {Pairing.M1M_TO_M1P: M1_PLUS, Pairing.M1M_TO_M1M: M1_MINUS,
                Pairing.M1P_TO_M2P: M2_PLUS}[self]

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]


_CLI_NAMES = {Pairing.M1M_TO_M1P: "eq11", Pairing.M1M_TO_M1M: "eq12",
              Pairing.M1P_TO_M2P: "eq13"}
_CLI_LOOKUP = {v: k for k, v in _CLI_NAMES.items()}

# director and asymptotic rows as (function on theta, function on theta) for
# the (q, h) coefficients; the central row is always (0, 0, 1)
_Q_ROW = {Pairing.M1M_TO_M1P: ("sinh", "cosh", 1.0),
          Pairing.M1M_TO_M1M: ("cosh", "sinh", 1.0),
          Pairing.M1P_TO_M2P: ("cos", "sin", 1.0)}
_A_ROW = {Pairing.M1M_TO_M1P: ("cosh", "sinh", 1.0),
          Pairing.M1M_TO_M1M: ("sinh", "cosh", 1.0),
          Pairing.M1P_TO_M2P: ("sin", "cos", -1.0)}


def as_pairing(value) -> Pairing:
    if isinstance(value, Pairing):
        return value
    key = str(value)
    if key in _CLI_LOOKUP:
        return _CLI_LOOKUP[key]
    for p in Pairing:
        if key == p.value:
            return p
    raise ValueError(f"unknown pairing {value!r}")


def offset_frame(f: FrameSample, theta: float, pairing) -> tuple:
    """Offset frame (q*, h*, a*) from a base frame and the offset angle."""
    pairing = as_pairing(pairing)
    want = rg._EPS[pairing.base_tag]
    if (f.eps2, f.eps1) != want:
        raise PairingMismatchError(
            f"{pairing.value} needs a {pairing.base_tag} base frame, got "
            f"eps2={f.eps2}, eps1={f.eps1}")
    fn_q, fn_h, sign = _Q_ROW[pairing]
    fa_q, fa_h, sa = _A_ROW[pairing]
    mq = getattr(math, fn_q)
    mh = getattr(math, fn_h)
    q_star = mq(theta) * f.q + sign * mh(theta) * f.h
    a_star = getattr(math, fa_q)(theta) * f.q + sa * getattr(math, fa_h)(theta) * f.h
    return q_star, f.a.copy(), a_star


def _combo_asts(row, theta_ast):
    fn_q, fn_h, sign = row
    return (ex.call(fn_q, theta_ast),
            ex.mul(ex.Number(sign), ex.call(fn_h, theta_ast)),
            ex.ZERO)


@dataclass
class OffsetSpec:
    """Offset recipe: base surface, distance R(s), angle theta(s), pairing."""

    base: object
    R: object
    theta: object
    pairing: Pairing
    samples: int | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.pairing = as_pairing(self.pairing)
        if isinstance(self.R, str):
            self.R = ex.parse_expr(self.R)
        if isinstance(self.theta, str):
            self.theta = ex.parse_expr(self.theta)
        if self.samples is None:
            self.samples = getattr(self.base, "samples", rg.DEFAULT_SAMPLES)

    def _surface(self, which: str):
        if which not in self._cache:
            t = rg.classify_surface(self.base)
            if t.tag != self.pairing.base_tag:
                raise PairingMismatchError(
                    f"pairing {self.pairing.value} requires a "
                    f"{self.pairing.base_tag} base, surface classifies as {t}")
            if which == "offset":
                combo = _combo_asts(_Q_ROW[self.pairing], self.theta)
            elif which == "traj_h":
                combo = (ex.ZERO, ex.ZERO, ex.ONE)
            elif which == "traj_a":
                combo = _combo_asts(_A_ROW[self.pairing], self.theta)
            else:
                raise KeyError(which)
            self._cache[which] = FrameComboSurface(self.base, combo, self.R,
                                                   samples=self.samples)
        return self._cache[which]


class FrameComboSurface:
    """Ruled surface with director A(s)q + B(s)h + C(s)a over a base frame.

    The base curve is the base striction curve displaced by rho(s) along a.
    Offsets and the trajectory surfaces of the offset frame vectors are all
    instances of this shape, so every generic query (classification, drall,
    frames) applies to them unchanged. Non-unit combinations are renormalized
    the same way raw directors are.
    """

    def __init__(self, base, combo, rho, samples: int | None = None,
                 tol: float = 1e-9):
        base_type = rg.classify_surface(base)
        if base_type.is_degenerate:
            raise DegenerateSurfaceError(
                f"combo base is degenerate: {base_type.reason}")
        self.base = base
        self.samples = int(samples or getattr(base, "samples", rg.DEFAULT_SAMPLES))
        self._type = None
        self._grid_cache = {}
        eb2, eb1 = base_type.eps2, base_type.eps1
        self._base_eps = (eb2, eb1, -eb1 * eb2)
        if rho is None:
            rho = ex.ZERO
        if isinstance(rho, str):
            rho = ex.parse_expr(rho)
        combo = tuple(ex.parse_expr(c) if isinstance(c, str) else c for c in combo)

        a_ast, b_ast, c_ast = combo
        norm2 = ex.add(ex.mul(ex.Number(float(eb2)), ex.mul(a_ast, a_ast)),
                       ex.add(ex.mul(ex.Number(float(eb1)), ex.mul(b_ast, b_ast)),
                              ex.mul(ex.Number(float(-eb1 * eb2)),
                                     ex.mul(c_ast, c_ast))))
        svals = np.linspace(self.domain[0], self.domain[1], min(self.samples, 512))
        nvals = kernel.compile_ast(norm2).eval_many(svals)
        if not np.all(np.isfinite(nvals)):
            raise ValueError("frame combination not finite on the domain")
        null = np.abs(nvals) <= tol
        if null.any():
            s_bad = float(svals[int(np.argmax(null))])
            self._type = rg.SurfaceType(rg.DEGENERATE,
                                        f"director is null near s={s_bad:g}")
            self._eps2 = 0
        else:
            signs = np.sign(nvals)
            if signs.min() != signs.max():
                self._type = rg.SurfaceType(rg.DEGENERATE,
                                            "director causal character changes")
                self._eps2 = 0
            else:
                self._eps2 = int(signs[0])
                if float(np.max(np.abs(np.abs(nvals) - 1.0))) > 1e-10:
                    scale = ex.call("sqrt", ex.mul(ex.Number(float(self._eps2)),
                                                   norm2))
                    combo = tuple(ex.div(c, scale) for c in combo)
        self.combo = combo
        self.rho = rho
        self._progs = {}

    @property
    def domain(self):
        return self.base.domain

    @property
    def eps2(self) -> int:
        return self._eps2

    def _prog(self, ast, name: str, order: int):
        key = (name, order)
        if key not in self._progs:
            d = ast
            for _ in range(order):
                d = ex.differentiate(d)
            self._progs[key] = kernel.compile_ast(d)
        return self._progs[key]

    def _frame_data(self, svals: np.ndarray) -> dict:
        key = svals.tobytes()
        if key not in self._grid_cache:
            if len(self._grid_cache) >= 8:
                self._grid_cache.clear()
            g = rg.frame_grid(self.base, svals)
            g["kappa_d"] = rg.kappa_deriv_grid(self.base, svals)
            g["striction"] = self.base.striction_grid(svals, 0)
            g["striction_d"] = self.base.striction_grid(svals, 1)
            self._grid_cache[key] = g
        return self._grid_cache[key]

    def director_grid(self, svals, order: int = 0) -> np.ndarray:
        svals = np.asarray(svals, dtype=np.float64)
        g = self._frame_data(svals)
        qv, h, a = g["q"], g["h"], g["a"]
        coef = [self._prog(cst, f"c{i}", 0).eval_many(svals)
                for i, cst in enumerate(self.combo)]
        if order == 0:
            return (coef[0][:, None] * qv + coef[1][:, None] * h
                    + coef[2][:, None] * a)
        w, kap = g["ds1_ds"], g["kappa"]
        e2, e1, _ = self._base_eps
        dcoef = [self._prog(cst, f"c{i}", 1).eval_many(svals)
                 for i, cst in enumerate(self.combo)]
        # rotation of frame-coordinate functions: (A,B,C)' relative to the
        # moving frame picks up w-terms from q' = wh, h' = w(-e1*e2*q + kap*a),
        # a' = w*e2*kap*h
        p = dcoef[0] - coef[1] * w * e1 * e2
        r = dcoef[1] + coef[0] * w + coef[2] * w * e2 * kap
        t = dcoef[2] + coef[1] * w * kap
        if order == 1:
            return p[:, None] * qv + r[:, None] * h + t[:, None] * a
        if order != 2:
            raise ValueError("director derivatives available up to order 2")
        wp, kap_d = g["ds1_ds_d"], g["kappa_d"]
        ddcoef = [self._prog(cst, f"c{i}", 2).eval_many(svals)
                  for i, cst in enumerate(self.combo)]
        dp = ddcoef[0] - (dcoef[1] * w + coef[1] * wp) * e1 * e2
        dr = (ddcoef[1] + dcoef[0] * w + coef[0] * wp
              + (dcoef[2] * w * kap + coef[2] * wp * kap + coef[2] * w * kap_d) * e2)
        dt = ddcoef[2] + dcoef[1] * w * kap + coef[1] * (wp * kap + w * kap_d)
        p2 = dp - r * w * e1 * e2
        r2 = dr + p * w + t * w * e2 * kap
        t2 = dt + r * w * kap
        return p2[:, None] * qv + r2[:, None] * h + t2[:, None] * a

    def base_grid(self, svals, order: int = 0) -> np.ndarray:
        svals = np.asarray(svals, dtype=np.float64)
        g = self._frame_data(svals)
        rho = self._prog(self.rho, "rho", 0).eval_many(svals)
        if order == 0:
            return g["striction"] + rho[:, None] * g["a"]
        if order == 1:
            rho_d = self._prog(self.rho, "rho", 1).eval_many(svals)
            e2 = self._base_eps[0]
            a_d = (g["ds1_ds"] * e2 * g["kappa"])[:, None] * g["h"]
            return g["striction_d"] + rho_d[:, None] * g["a"] + rho[:, None] * a_d
        raise ValueError("base-curve derivatives available up to order 1")

    def striction_grid(self, svals, order: int = 0) -> np.ndarray:
        if order != 0:
            raise ValueError("striction derivative not available for "
                             "frame-combination surfaces")
        svals = np.asarray(svals, dtype=np.float64)
        qv = self.director_grid(svals, 0)
        qd = self.director_grid(svals, 1)
        kd = self.base_grid(svals, 1)
        b = ldot_arr(qd, qd)
        rg._guard_denominator(b, svals, "<q', q'>")
        lam = ldot_arr(qd, kd) / b
        return self.base_grid(svals, 0) - lam[:, None] * qv


def build_offset(spec: OffsetSpec) -> FrameComboSurface:
    """Construct the offset surface c(s) + R(s)a(s) + v q*(s)."""
    surf = spec._surface("offset")
    svals = np.linspace(surf.domain[0], surf.domain[1], min(spec.samples, 512))
    for name, ast in (("R", spec.R), ("theta", spec.theta)):
        vals = kernel.compile_ast(ast).eval_many(svals)
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"{name} is not finite on the base domain")
    return surf


def trajectory_surfaces(spec: OffsetSpec) -> tuple:
    """Surfaces swept along c* by the offset central/asymptotic normals."""
    return spec._surface("traj_h"), spec._surface("traj_a")


def mannheim_condition_check(base, offset, tol: float = 1e-6,
                             samples: int | None = None) -> bool:
    """True when the offset central normal is the base asymptotic normal
    (one global sign) across the shared parameter grid."""
    s0, s1 = base.domain
    n = samples or getattr(base, "samples", rg.DEFAULT_SAMPLES)
    svals = np.linspace(s0, s1, n)
    a = rg.frame_grid(base, svals)["a"]
    h_star = rg.frame_grid(offset, svals)["h"]
    for sign in (1.0, -1.0):
        if float(np.max(np.linalg.norm(h_star - sign * a, axis=1))) <= tol:
            return True
    return False


def striction_offset_residual_grid(spec: OffsetSpec, svals) -> np.ndarray:
    svals = np.asarray(svals, dtype=np.float64)
    g = rg.frame_grid(spec.base, svals)
    d = rg.drall_grid(spec.base, svals)
    r_d = kernel.compile_ast(ex.differentiate(spec.R)).eval_many(svals)
    return g["eps2"] * g["ds1_ds"] * d + r_d


def striction_offset_residual(spec: OffsetSpec, s: float) -> float:
    """eps2*||dq/ds||*drall + dR/ds; zero iff c* is the offset striction."""
    return float(striction_offset_residual_grid(spec, np.array([float(s)]))[0])


def developability_residual(pairing, theta: float, R: float, kappa: float,
                            ds1_ds: float) -> float:
    """Scalar whose vanishing makes the offset with these data developable."""
    pairing = as_pairing(pairing)
    x = R * kappa * ds1_ds
    if pairing is Pairing.M1M_TO_M1P:
        return math.cosh(theta) + x * math.sinh(theta)
    if pairing is Pairing.M1M_TO_M1M:
        return math.sinh(theta) + x * math.cosh(theta)
    return math.sin(theta) - x * math.cos(theta)


def solve_theta(pairing, R: float, kappa: float, ds1_ds: float) -> float:
    """Principal-value angle solving developability_residual = 0.

    The hyperbolic branches have real solutions only when R*kappa*(ds1/ds)
    lies beyond (first pairing) or inside (second pairing) the unit interval;
    outside those ranges the obstruction is geometric, not numerical.
    """
    pairing = as_pairing(pairing)
    x = R * kappa * ds1_ds
    if pairing is Pairing.M1M_TO_M1P:
        if abs(x) <= 1.0:
            raise NoRealSolutionError(
                f"no real angle: |R*kappa*ds1_ds| = {abs(x):g} <= 1",
                value=x, bound="|R*kappa*ds1_ds| > 1")
        return math.atanh(-1.0 / x)
    if pairing is Pairing.M1M_TO_M1M:
        if abs(x) >= 1.0:
            raise NoRealSolutionError(
                f"no real angle: |R*kappa*ds1_ds| = {abs(x):g} >= 1",
                value=x, bound="|R*kappa*ds1_ds| < 1")
        return math.atanh(-x)
    return math.atan(x)


def theta_evolution_residual_grid(spec: OffsetSpec, svals) -> np.ndarray:
    svals = np.asarray(svals, dtype=np.float64)
    th_d = kernel.compile_ast(ex.differentiate(spec.theta)).eval_many(svals)
    w = rg.frame_grid(spec.base, svals)["ds1_ds"]
    return th_d + w


def theta_evolution_residual(spec: OffsetSpec, s: float) -> float:
    """d(theta)/ds + ds1/ds; zero along any developable Mannheim pair."""
    return float(theta_evolution_residual_grid(spec, np.array([float(s)]))[0])


_VARIANTS = {"M1Minus": -1.0, "M1-": -1.0, "M1Plus": 1.0, "M1+": 1.0}


def characterization_residual_grid(base, R: float, svals, variant) -> np.ndarray:
    if isinstance(variant, str):
        try:
            sgn = _VARIANTS[variant]
        except KeyError:
            raise ValueError(f"unknown characterization variant {variant!r}")
    else:
        sgn = float(variant)
    if R == 0.0:
        raise ValueError("offset distance R must be nonzero")
    if not rg.is_developable(base):
        raise DegenerateSurfaceError(
            "curvature-evolution characterization requires a developable base")
    svals = np.asarray(svals, dtype=np.float64)
    g = rg.frame_grid(base, svals)
    kap, w, wp = g["kappa"], g["ds1_ds"], g["ds1_ds_d"]
    kap_d = rg.kappa_deriv_grid(base, svals)
    return kap_d + (R * R * kap * kap * w * w + sgn) / R + wp * kap / w


def characterization_residual(base, R: float, s: float, variant) -> float:
    """Residual of the curvature evolution law for developable Mannheim
    offsets; the hyperbolic pairings take the -1 term, the circular one +1.
    """
    return float(characterization_residual_grid(base, R,
                                                np.array([float(s)]), variant)[0])


# ---------------------------------------------------------------------------
# trajectory surfaces of the offset frame vectors


def _euclid_sin(u: np.ndarray, v: np.ndarray) -> float:
    c = np.cross(u, v)
    den = float(np.linalg.norm(u) * np.linalg.norm(v))
    return float(np.linalg.norm(c)) / den


def _flip(f: FrameSample) -> FrameSample:
    return FrameSample(s=f.s, q=f.q, h=-f.h, a=-f.a, eps1=f.eps1, eps2=f.eps2,
                       ds1_ds=f.ds1_ds, kappa=f.kappa, darboux=f.darboux)


def trajectory_frames(spec: OffsetSpec, s: float) -> tuple:
    """Frames of the two trajectory surfaces, oriented toward the base frame.

    The first frame's central normal is aligned with the base h, the second
    with the base a (flipping h and a of a frame together stays a valid
    frame; the orientation is otherwise free).
    """
    f_h, f_a = trajectory_surfaces(spec)
    base_f = rg.frenet_frame(spec.base, s)
    f1 = rg.frenet_frame(f_h, s)
    f2 = rg.frenet_frame(f_a, s)
    if float(np.dot(f1.h, base_f.h)) < 0.0:
        f1 = _flip(f1)
    if float(np.dot(f2.h, base_f.a)) < 0.0:
        f2 = _flip(f2)
    return f1, f2


@dataclass
class TrajectoryEntry:
    s: float
    p_h_star: float
    p_a_star: float
    bertrand_ok: bool
    mannheim_ok: bool


@dataclass
class TrajectoryReport:
    s: np.ndarray
    p_h_star: np.ndarray
    p_a_star: np.ndarray
    p_h_star_measured: np.ndarray
    p_a_star_measured: np.ndarray
    bertrand_ok: bool
    mannheim_ok: bool
    excluded: list
    bertrand_defect: float = 0.0
    mannheim_defect: float = 0.0


def _closed_form_dralls(spec: OffsetSpec, svals: np.ndarray):
    g = rg.frame_grid(spec.base, svals)
    w, kap = g["ds1_ds"], g["kappa"]
    theta = kernel.compile_ast(spec.theta).eval_many(svals)
    r_val = kernel.compile_ast(spec.R).eval_many(svals)
    bad = np.abs(kap) <= 1e-9
    if bad.any():
        raise DivisionByZero(
            f"conical curvature vanishes near s={float(svals[int(np.argmax(bad))]):g}"
            " (cylindrical directing cone)")
    x = r_val * w * kap
    if spec.pairing is Pairing.M1M_TO_M1P:
        den = np.sinh(theta)
        _deno_guard(den, svals, "sinh(theta)")
        p_h = -1.0 / (w * kap)
        p_a = -(np.sinh(theta) + x * np.cosh(theta)) / (w * kap * den)
    elif spec.pairing is Pairing.M1M_TO_M1M:
        den = np.cosh(theta)
        p_h = -1.0 / (w * kap)
        p_a = -(np.cosh(theta) + x * np.sinh(theta)) / (w * kap * den)
    else:
        den = np.cos(theta)
        _deno_guard(den, svals, "cos(theta)")
        p_h = 1.0 / (w * kap)
        p_a = (np.cos(theta) + x * np.sin(theta)) / (w * kap * den)
    return p_h, p_a


def _deno_guard(vals, svals, name, tol: float = 1e-9):
    bad = np.abs(vals) <= tol
    if bad.any():
        s_bad = float(np.asarray(svals)[int(np.argmax(bad))])
        raise DivisionByZero(f"{name} vanishes near s={s_bad:g}")


def trajectory_dralls(spec: OffsetSpec, s: float,
                      parallel_tol: float = 1e-8) -> TrajectoryEntry:
    """Closed-form dralls of the trajectory surfaces at s, with the Bertrand
    and Mannheim parallelism verdicts."""
    svals = np.array([float(s)])
    p_h, p_a = _closed_form_dralls(spec, svals)
    f1, f2 = trajectory_frames(spec, s)
    base_f = rg.frenet_frame(spec.base, s)
    bertrand = _euclid_sin(f1.h, base_f.h) <= parallel_tol
    mannheim = _euclid_sin(f2.h, base_f.a) <= parallel_tol
    return TrajectoryEntry(s=float(s), p_h_star=float(p_h[0]),
                           p_a_star=float(p_a[0]), bertrand_ok=bertrand,
                           mannheim_ok=mannheim)


def mask_intervals(svals, bad_mask) -> list:
    """Contiguous runs of masked grid points as closed s-intervals."""
    svals = np.asarray(svals, dtype=np.float64)
    bad = np.asarray(bad_mask, dtype=bool)
    out = []
    i = 0
    n = len(svals)
    while i < n:
        if bad[i]:
            j = i
            while j + 1 < n and bad[j + 1]:
                j += 1
            out.append((float(svals[i]), float(svals[j])))
            i = j + 1
        else:
            i += 1
    return out


def pole_exclusions(spec: OffsetSpec, svals, tol: float = 1e-9):
    """Mask of grid points where the trajectory dralls have poles.

    A vanishing conical curvature makes both trajectory rulings stationary;
    sinh(theta) and cos(theta) zeros are poles of the second drall for the
    hyperbolic-to-spacelike and circular pairings. The stricter w*|kappa|
    bound keeps the measured drall's <q', q'> denominator off its own guard.
    Returns (good_mask, excluded_intervals).
    """
    svals = np.asarray(svals, dtype=np.float64)
    g = rg.frame_grid(spec.base, svals)
    w, kap = g["ds1_ds"], g["kappa"]
    theta = kernel.compile_ast(spec.theta).eval_many(svals)
    bad = (np.abs(kap) <= tol) | (w * np.abs(kap) <= 1e-6)
    if spec.pairing is Pairing.M1M_TO_M1P:
        bad |= np.abs(np.sinh(theta)) <= tol
    elif spec.pairing is Pairing.M1P_TO_M2P:
        bad |= np.abs(np.cos(theta)) <= tol
    return ~bad, mask_intervals(svals, bad)


def trajectory_report(spec: OffsetSpec, svals,
                      parallel_tol: float = 1e-8) -> TrajectoryReport:
    """Grid version: closed-form dralls next to dralls measured on the
    explicitly built trajectory surfaces. Pole neighborhoods are dropped
    from the grid and reported as excluded intervals."""
    svals = np.asarray(svals, dtype=np.float64)
    good, excluded = pole_exclusions(spec, svals)
    if not good.any():
        raise DivisionByZero("trajectory dralls are singular on the whole grid")
    svals = svals[good]
    p_h, p_a = _closed_form_dralls(spec, svals)
    f_h, f_a = trajectory_surfaces(spec)
    m_h = rg.drall_grid(f_h, svals)
    m_a = rg.drall_grid(f_a, svals)
    gb = rg.frame_grid(spec.base, svals)
    g1 = rg.frame_grid(f_h, svals)
    g2 = rg.frame_grid(f_a, svals)
    cr1 = np.cross(g1["h"], gb["h"])
    cr2 = np.cross(g2["h"], gb["a"])
    sin1 = np.linalg.norm(cr1, axis=1) / (np.linalg.norm(g1["h"], axis=1)
                                          * np.linalg.norm(gb["h"], axis=1))
    sin2 = np.linalg.norm(cr2, axis=1) / (np.linalg.norm(g2["h"], axis=1)
                                          * np.linalg.norm(gb["a"], axis=1))
    d1 = float(np.max(sin1))
    d2 = float(np.max(sin2))
    return TrajectoryReport(s=svals, p_h_star=p_h, p_a_star=p_a,
                            p_h_star_measured=m_h, p_a_star_measured=m_a,
                            bertrand_ok=d1 <= parallel_tol,
                            mannheim_ok=d2 <= parallel_tol,
                            excluded=excluded,
                            bertrand_defect=d1, mannheim_defect=d2)
