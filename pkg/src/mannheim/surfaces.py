"""Ruled surfaces in Minkowski 3-space: classification, striction, drall,
moving frames, and frame-ODE integration.

A ruled surface is phi(s, v) = k(s) + v*q(s). Three regular types occur,
named by the causal characters (eps2, eps1) of the unit director q and its
derivative: M1- (q timelike), M1+ (q and dq/ds spacelike), M2+ (dq/ds
timelike). The frame (q, h, a) uses h = q'/||q'|| and fixes the sign of a so
that the cross-product identities

    q X h = eps2 * a,   h X a = -eps2 * q,   a X q = -h      (timelike types)
    q X h = -a,         h X a = -q,          a X q = h        (M2+)

hold; equivalently a = -eps1*eps2 * (q' X q)/||q'||. The conical curvature
kappa is the signed projection of da/ds1 onto h.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import expr as ex
from . import kernel
from .curves import CurveDef
from .errors import (DegenerateSurfaceError, DivisionByZero, FrameDriftError,
                     NullNormalError, SingularPointError)
from .vectors import CausalClass, ldot_arr, lcross_arr

M1_MINUS = "M1-"
M1_PLUS = "M1+"
M2_PLUS = "M2+"
DEGENERATE = "degenerate"

_EPS = {M1_MINUS: (-1, 1), M1_PLUS: (1, 1), M2_PLUS: (1, -1)}  # tag -> (eps2, eps1)

DEFAULT_SAMPLES = 512
DEFAULT_STEP = 1e-3
FD_STEP = 1e-4


@dataclass(frozen=True)
class SurfaceType:
    tag: str
    reason: str = ""

    @property
    def is_degenerate(self) -> bool:
        return self.tag == DEGENERATE

    @property
    def eps2(self) -> int:
        return _EPS[self.tag][0]

    @property
    def eps1(self) -> int:
        return _EPS[self.tag][1]

    def __str__(self) -> str:
        if self.is_degenerate and self.reason:
            return f"{self.tag}({self.reason})"
        return self.tag


@dataclass
class FrameSample:
    s: float
    q: np.ndarray
    h: np.ndarray
    a: np.ndarray
    eps1: int
    eps2: int
    ds1_ds: float
    kappa: float
    darboux: np.ndarray


def _lorentz_sq_ast(comps):
    c1, c2, c3 = comps
    return ex.add(ex.neg(ex.mul(c1, c1)), ex.add(ex.mul(c2, c2), ex.mul(c3, c3)))


class AnalyticRuledSurface:
    """Surface given by closed-form base curve k and director q.

    The director is normalized to unit Lorentz norm at construction. When the
    input is already unit to 1e-12 the symbolic normalization is skipped,
    which keeps derivative trees small for the canonical examples.
    """

    def __init__(self, k: CurveDef, q: CurveDef, samples: int = DEFAULT_SAMPLES,
                 tol: float = 1e-9):
        if k.domain != q.domain:
            raise ValueError("base curve and director must share the domain")
        self.k = k
        self.raw_director = q
        self.samples = int(samples)
        self._type = None

        svals = np.linspace(q.domain[0], q.domain[1], min(self.samples, 512))
        qv = q.eval_many(svals)
        qq = ldot_arr(qv, qv)
        e2 = np.sum(qv * qv, axis=-1)
        null = np.abs(qq) <= tol * np.maximum(1.0, e2)
        if null.any():
            s_bad = float(svals[int(np.argmax(null))])
            self._type = SurfaceType(DEGENERATE, f"director is null near s={s_bad:g}")
            self.director = q
            self._eps2 = 0
            return
        signs = np.sign(qq)
        if signs.min() != signs.max():
            self._type = SurfaceType(DEGENERATE, "director causal character changes")
            self.director = q
            self._eps2 = 0
            return
        eps2 = int(signs[0])
        self._eps2 = eps2
        dev = float(np.max(np.abs(np.abs(qq) - 1.0)))
        if dev <= 1e-12:
            self.director = q
        else:
            if dev > 1e-6:
                warnings.warn(f"director renormalized (norm deviation {dev:.3e})",
                              stacklevel=2)
            norm = ex.call("sqrt", ex.mul(ex.Number(float(eps2)),
                                          _lorentz_sq_ast(q.components)))
            self.director = CurveDef(tuple(ex.div(c, norm) for c in q.components),
                                     q.domain)

    @property
    def domain(self):
        return self.k.domain

    @property
    def eps2(self) -> int:
        return self._eps2

    def director_grid(self, svals, order: int = 0) -> np.ndarray:
        return self.director.eval_many(svals, order)

    def base_grid(self, svals, order: int = 0) -> np.ndarray:
        return self.k.eval_many(svals, order)

    def striction_grid(self, svals, order: int = 0) -> np.ndarray:
        qv = self.director_grid(svals, 0)
        qd = self.director_grid(svals, 1)
        kd = self.base_grid(svals, 1)
        b = ldot_arr(qd, qd)
        _guard_denominator(b, svals, "<q', q'>")
        lam = ldot_arr(qd, kd) / b
        if order == 0:
            return self.base_grid(svals, 0) - lam[:, None] * qv
        qdd = self.director_grid(svals, 2)
        kdd = self.base_grid(svals, 2)
        lam_d = (ldot_arr(qdd, kd) + ldot_arr(qd, kdd)
                 - 2.0 * lam * ldot_arr(qdd, qd)) / b
        return kd - lam_d[:, None] * qv - lam[:, None] * qd


class IntegratedSurface:
    """Sampled developable surface produced by integrate_frame.

    Node values come from RK4; queries between nodes use cubic Hermite
    interpolation with the stored ODE derivatives. The striction curve is the
    integrated base curve itself (dc/ds = q by construction).
    """

    def __init__(self, tag: str, s0: float, step: float, nodes: np.ndarray,
                 dnodes: np.ndarray, kappa_ast, ds1_ast,
                 samples: int = DEFAULT_SAMPLES):
        self.type_tag = tag
        self._eps2, self._eps1 = _EPS[tag]
        self.s0 = float(s0)
        self.step = float(step)
        self.nodes = nodes
        self.dnodes = dnodes
        self.kappa_ast = kappa_ast
        self.ds1_ast = ds1_ast
        self.samples = int(samples)
        self._type = SurfaceType(tag)
        self._progs = {}

    @property
    def domain(self):
        return (self.s0, self.s0 + (len(self.nodes) - 1) * self.step)

    @property
    def eps2(self) -> int:
        return self._eps2

    def _prog(self, name: str):
        if name not in self._progs:
            if name == "kappa":
                ast = self.kappa_ast
            elif name == "kappa_d":
                ast = ex.differentiate(self.kappa_ast)
            elif name == "ds1":
                ast = self.ds1_ast
            elif name == "ds1_d":
                ast = ex.differentiate(self.ds1_ast)
            elif name == "ds1_dd":
                ast = ex.differentiate(ex.differentiate(self.ds1_ast))
            else:
                raise KeyError(name)
            self._progs[name] = kernel.compile_ast(ast)
        return self._progs[name]

    def kappa_grid(self, svals) -> np.ndarray:
        return self._prog("kappa").eval_many(np.asarray(svals, dtype=np.float64))

    def kappa_deriv_grid(self, svals) -> np.ndarray:
        return self._prog("kappa_d").eval_many(np.asarray(svals, dtype=np.float64))

    def ds1_grid(self, svals) -> np.ndarray:
        return self._prog("ds1").eval_many(np.asarray(svals, dtype=np.float64))

    def ds1_deriv_grid(self, svals) -> np.ndarray:
        return self._prog("ds1_d").eval_many(np.asarray(svals, dtype=np.float64))

    def ds1_second_grid(self, svals) -> np.ndarray:
        return self._prog("ds1_dd").eval_many(np.asarray(svals, dtype=np.float64))

    def _hermite(self, svals) -> np.ndarray:
        svals = np.asarray(svals, dtype=np.float64)
        s0, s1 = self.domain
        edge = 1e-9 * max(1.0, s1 - s0)
        if np.any(svals < s0 - edge) or np.any(svals > s1 + edge):
            raise ValueError(f"parameter outside domain [{s0}, {s1}]")
        t = np.clip((svals - s0) / self.step, 0.0, len(self.nodes) - 1.0)
        i = np.minimum(t.astype(np.int64), len(self.nodes) - 2)
        u = (t - i)[:, None]
        y0 = self.nodes[i]
        y1 = self.nodes[i + 1]
        d0 = self.dnodes[i] * self.step
        d1 = self.dnodes[i + 1] * self.step
        h00 = (1.0 + 2.0 * u) * (1.0 - u) ** 2
        h10 = u * (1.0 - u) ** 2
        h01 = u * u * (3.0 - 2.0 * u)
        h11 = u * u * (u - 1.0)
        return h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1

    def frame_nodes_grid(self, svals):
        y = self._hermite(svals)
        return y[:, 0:3], y[:, 3:6], y[:, 6:9], y[:, 9:12]

    def director_grid(self, svals, order: int = 0) -> np.ndarray:
        svals = np.asarray(svals, dtype=np.float64)
        q, h, a, _ = self.frame_nodes_grid(svals)
        if order == 0:
            return q
        w = self.ds1_grid(svals)[:, None]
        if order == 1:
            return w * h
        if order == 2:
            kap = self.kappa_grid(svals)[:, None]
            wp = self.ds1_deriv_grid(svals)[:, None]
            if self.type_tag == M2_PLUS:
                hp = w * (q + kap * a)
            else:
                hp = w * (-self._eps2 * q + kap * a)
            return wp * h + w * hp
        raise ValueError("director derivatives available up to order 2")

    def base_grid(self, svals, order: int = 0) -> np.ndarray:
        svals = np.asarray(svals, dtype=np.float64)
        q, h, a, c = self.frame_nodes_grid(svals)
        if order == 0:
            return c
        if order == 1:
            return q
        if order == 2:
            return self.ds1_grid(svals)[:, None] * h
        raise ValueError("base derivatives available up to order 2")

    def striction_grid(self, svals, order: int = 0) -> np.ndarray:
        return self.base_grid(svals, order)


# ---------------------------------------------------------------------------
# generic queries (work for analytic, integrated and frame-combination
# surfaces; the latter are defined in offsets.py)

def _guard_denominator(vals, svals, name, tol: float = 1e-12):
    bad = np.abs(vals) <= tol
    if np.any(bad):
        s_bad = float(np.asarray(svals)[int(np.argmax(bad))])
        raise DivisionByZero(f"{name} vanishes near s={s_bad:g}")


def classify_surface(surface, tol: float = 1e-9) -> SurfaceType:
    """Surface type from the causal characters of q and dq/ds on a grid.

    Degeneracy (null director, null or vanishing dq/ds, causal character
    flips) is reported as a value, not an exception.
    """
    if getattr(surface, "_type", None) is not None:
        return surface._type
    s0, s1 = surface.domain
    svals = np.linspace(s0, s1, getattr(surface, "samples", DEFAULT_SAMPLES))
    qv = surface.director_grid(svals, 0)
    qq = ldot_arr(qv, qv)
    if np.max(np.abs(np.abs(qq) - 1.0)) > 1e-6:
        t = SurfaceType(DEGENERATE, "director is not unit after normalization")
    else:
        qd = surface.director_grid(svals, 1)
        w2 = ldot_arr(qd, qd)
        e2 = np.sum(qd * qd, axis=-1)
        null = np.abs(w2) <= tol * np.maximum(1.0, e2)
        if null.any():
            s_bad = float(svals[int(np.argmax(null))])
            t = SurfaceType(DEGENERATE,
                            f"director derivative null or vanishing near s={s_bad:g}")
        else:
            signs = np.sign(w2)
            if signs.min() != signs.max():
                t = SurfaceType(DEGENERATE, "causal character of dq/ds changes")
            else:
                eps1 = int(signs[0])
                eps2 = surface.eps2
                if (eps2, eps1) == (-1, 1):
                    t = SurfaceType(M1_MINUS)
                elif (eps2, eps1) == (1, 1):
                    t = SurfaceType(M1_PLUS)
                elif (eps2, eps1) == (1, -1):
                    t = SurfaceType(M2_PLUS)
                else:
                    t = SurfaceType(DEGENERATE,
                                    f"inconsistent signs eps2={eps2}, eps1={eps1}")
    surface._type = t
    return t


def _regular_type(surface) -> SurfaceType:
    t = classify_surface(surface)
    if t.is_degenerate:
        raise DegenerateSurfaceError(f"surface is degenerate: {t.reason}")
    return t


def eval_surface(surface, s: float, v: float) -> np.ndarray:
    svals = np.array([float(s)])
    return (surface.base_grid(svals, 0) + float(v) * surface.director_grid(svals, 0))[0]


def surface_normal(surface, s: float, v: float, tol: float = 1e-9):
    """Unit Lorentz normal and its causal class at (s, v)."""
    svals = np.array([float(s)])
    p_s = (surface.base_grid(svals, 1) + float(v) * surface.director_grid(svals, 1))[0]
    p_v = surface.director_grid(svals, 0)[0]
    c = lcross_arr(p_s, p_v)
    e2 = float(np.dot(c, c))
    scale = max(1.0, float(np.dot(p_s, p_s)) * float(np.dot(p_v, p_v)))
    if e2 <= tol * tol * scale:
        raise SingularPointError(f"surface partials are parallel at (s={s}, v={v})")
    n2 = float(ldot_arr(c, c))
    if abs(n2) <= tol * max(1.0, e2):
        raise NullNormalError(f"surface normal is null at (s={s}, v={v})")
    m = c / math.sqrt(abs(n2))
    cls = CausalClass.TIMELIKE if n2 < 0.0 else CausalClass.SPACELIKE
    return m, cls


def striction_point(surface, s: float) -> np.ndarray:
    return surface.striction_grid(np.array([float(s)]), 0)[0]


def drall_grid(surface, svals) -> np.ndarray:
    """Distribution parameter |k', q, q'| / <q', q'> on a grid."""
    svals = np.asarray(svals, dtype=np.float64)
    qv = surface.director_grid(svals, 0)
    qd = surface.director_grid(svals, 1)
    kd = surface.base_grid(svals, 1)
    b = ldot_arr(qd, qd)
    _guard_denominator(b, svals, "<q', q'>")
    mixed = ldot_arr(lcross_arr(kd, qv), qd)
    return mixed / b


def drall(surface, s: float) -> float:
    return float(drall_grid(surface, np.array([float(s)]))[0])


def is_developable(surface, tol: float = 1e-8, samples: int | None = None) -> bool:
    s0, s1 = surface.domain
    n = samples or getattr(surface, "samples", DEFAULT_SAMPLES)
    return float(np.max(np.abs(drall_grid(surface, np.linspace(s0, s1, n))))) <= tol


def frame_grid(surface, svals) -> dict:
    """Moving frame, ds1/ds, and conical curvature on a grid."""
    t = _regular_type(surface)
    eps2 = t.eps2
    eps1 = t.eps1
    svals = np.asarray(svals, dtype=np.float64)
    qv = surface.director_grid(svals, 0)
    qd = surface.director_grid(svals, 1)
    qdd = surface.director_grid(svals, 2)
    w2 = ldot_arr(qd, qd)
    _guard_denominator(w2, svals, "<q', q'>")
    w = np.sqrt(np.abs(w2))
    h = qd / w[:, None]
    sign_a = float(-eps1 * eps2)
    a = sign_a * lcross_arr(qd, qv) / w[:, None]
    wp = eps1 * ldot_arr(qdd, qd) / w
    ap = sign_a * lcross_arr(qdd, qv) / w[:, None] - a * (wp / w)[:, None]
    kappa = eps1 * eps2 * ldot_arr(ap, h) / w
    hp = qdd / w[:, None] - qd * (wp / (w * w))[:, None]
    if eps1 == -1:
        darboux = -kappa[:, None] * qv + a
    else:
        darboux = eps2 * kappa[:, None] * qv - a
    return {"s": svals, "q": qv, "h": h, "a": a, "ds1_ds": w, "ds1_ds_d": wp,
            "kappa": kappa, "a_d": ap, "h_d": hp, "darboux": darboux,
            "eps1": eps1, "eps2": eps2}


def frenet_frame(surface, s: float) -> FrameSample:
    g = frame_grid(surface, np.array([float(s)]))
    return FrameSample(s=float(s), q=g["q"][0], h=g["h"][0], a=g["a"][0],
                       eps1=g["eps1"], eps2=g["eps2"],
                       ds1_ds=float(g["ds1_ds"][0]), kappa=float(g["kappa"][0]),
                       darboux=g["darboux"][0])


def _lnorm_rows(x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.abs(ldot_arr(x, x)))


def frame_ode_residual(surface, s: float, fd_step: float = FD_STEP):
    """Lorentz norms of the three frame-ODE defects and the Darboux defect.

    Closed-form surfaces use exact symbolic derivatives; integrated surfaces
    are checked with 5-point finite differences of the interpolated frame.
    """
    t = _regular_type(surface)
    eps2, eps1 = t.eps2, t.eps1
    s = float(s)
    if isinstance(surface, IntegratedSurface):
        centers, fd_step = _node_centers(surface, [s])
        s = float(centers[0])
        stencil = np.array([s - 2 * fd_step, s - fd_step, s + fd_step, s + 2 * fd_step])
        g = frame_grid(surface, np.concatenate((stencil, [s])))
        qs, hs, as_ = g["q"], g["h"], g["a"]

        def fd(vals):
            return (vals[0] - 8.0 * vals[1] + 8.0 * vals[2] - vals[3]) / (12.0 * fd_step)

        qp, hp, ap = fd(qs), fd(hs), fd(as_)
        qv, h, a = qs[4], hs[4], as_[4]
        w = float(g["ds1_ds"][4])
        kappa = float(g["kappa"][4])
        darboux = g["darboux"][4]
    else:
        g = frame_grid(surface, np.array([s]))
        qv, h, a = g["q"][0], g["h"][0], g["a"][0]
        w = float(g["ds1_ds"][0])
        kappa = float(g["kappa"][0])
        qp = surface.director_grid(np.array([s]), 1)[0]
        hp = g["h_d"][0]
        ap = g["a_d"][0]
        darboux = g["darboux"][0]
    if eps1 == -1:
        target_h = qv + kappa * a
        target_a = kappa * h
    else:
        target_h = -eps2 * qv + kappa * a
        target_a = eps2 * kappa * h
    r1 = _lnorm_rows(qp / w - h)
    r2 = _lnorm_rows(hp / w - target_h)
    r3 = _lnorm_rows(ap / w - target_a)
    rd = max(_lnorm_rows(qp / w - lcross_arr(darboux, qv)),
             _lnorm_rows(hp / w - lcross_arr(darboux, h)),
             _lnorm_rows(ap / w - lcross_arr(darboux, a)))
    return float(r1), float(r2), float(r3), float(rd)


# ---------------------------------------------------------------------------
# frame integration

_CROSS_TARGETS = {
    # (i, j) -> coefficient vector in (q, h, a) for v_i X v_j
    M1_MINUS: {(0, 1): (0, 0, -1), (1, 2): (1, 0, 0), (2, 0): (0, -1, 0)},
    M1_PLUS: {(0, 1): (0, 0, 1), (1, 2): (-1, 0, 0), (2, 0): (0, -1, 0)},
    M2_PLUS: {(0, 1): (0, 0, -1), (1, 2): (-1, 0, 0), (2, 0): (0, 1, 0)},
}


def _validate_seed_frame(tag: str, q0, h0, a0, tol: float = 1e-10):
    eps2, eps1 = _EPS[tag]
    epsa = -eps1 * eps2
    vecs = [np.asarray(q0, dtype=np.float64), np.asarray(h0, dtype=np.float64),
            np.asarray(a0, dtype=np.float64)]
    targets = [eps2, eps1, epsa]
    for i in range(3):
        for j in range(i, 3):
            want = targets[i] if i == j else 0.0
            got = float(ldot_arr(vecs[i], vecs[j]))
            if abs(got - want) > tol:
                raise ValueError(
                    f"seed frame fails pseudo-orthonormality: <v{i},v{j}> = {got}")
    for (i, j), coeff in _CROSS_TARGETS[tag].items():
        want = coeff[0] * vecs[0] + coeff[1] * vecs[1] + coeff[2] * vecs[2]
        got = lcross_arr(vecs[i], vecs[j])
        if float(np.max(np.abs(got - want))) > tol:
            raise ValueError(f"seed frame violates the {tag} cross relations")
    return vecs


def _as_ast(value):
    if isinstance(value, str):
        return ex.parse_expr(value)
    return value


def integrate_frame(surface_type: str, kappa, ds1_ds, frame0, c0, domain,
                    step: float = DEFAULT_STEP, ortho_every: int = 16,
                    drift_tol: float = 1e-6) -> IntegratedSurface:
    """Synthesize a developable surface with prescribed kappa(s) and ds1/ds.

    Integrates the frame ODE with classic fixed-step RK4, re-orthonormalizing
    by Lorentz Gram-Schmidt every ortho_every steps. The base curve follows
    dc/ds = q, so the result is developable with c as unit-speed striction
    curve.
    """
    if surface_type not in _EPS:
        raise ValueError(f"unknown surface type {surface_type!r}")
    eps2, eps1 = _EPS[surface_type]
    kappa_ast = _as_ast(kappa)
    ds1_ast = _as_ast(ds1_ds)
    if step <= 0.0:
        raise ValueError("step must be positive")
    s0, s1 = float(domain[0]), float(domain[1])
    if s1 <= s0:
        raise ValueError("empty integration domain")
    q0, h0, a0 = _validate_seed_frame(surface_type, *frame0)

    ds1_prog = kernel.compile_ast(ds1_ast)
    kappa_prog = kernel.compile_ast(kappa_ast)
    probe = ds1_prog.eval_many(np.linspace(s0, s1, 257))
    if not np.all(np.isfinite(probe)) or float(np.min(probe)) <= 0.0:
        raise ValueError("ds1/ds must be positive and finite on the domain")
    kprobe = kappa_prog.eval_many(np.linspace(s0, s1, 257))
    if not np.all(np.isfinite(kprobe)):
        raise ValueError("kappa must be finite on the domain")

    n = max(1, int(round((s1 - s0) / step)))
    step_adj = (s1 - s0) / n
    y0 = np.concatenate((q0, h0, a0, np.asarray(c0, dtype=np.float64)))
    nodes, dnodes, drift = kernel.rk4_frame(
        ds1_prog, kappa_prog, surface_type == M2_PLUS, eps1, eps2,
        y0, s0, step_adj, n, ortho_every)
    if drift > drift_tol:
        raise FrameDriftError(
            f"frame drift {drift:.3e} exceeds {drift_tol:.1e}; reduce the step")
    return IntegratedSurface(surface_type, s0, step_adj, nodes, dnodes,
                             kappa_ast, ds1_ast)


def five_point_derivative(f, s: float, h: float = FD_STEP):
    return (-f(s + 2 * h) + 8.0 * f(s + h) - 8.0 * f(s - h) + f(s - 2 * h)) / (12.0 * h)


def _node_centers(surface, svals) -> tuple:
    """Snap parameters to integration nodes two steps clear of the ends.

    Finite differences of the interpolated frame pick up interpolation error
    divided by the stencil width; at the nodes the stored frame is exact, so
    a node-aligned stencil sees only FD truncation.
    """
    h = surface.step
    s0 = surface.s0
    n = surface.nodes.shape[0] - 1
    idx = np.clip(np.rint((np.asarray(svals, dtype=np.float64) - s0) / h),
                  2, n - 2)
    return s0 + idx * h, h


def frame_residual_grid(surface, svals, fd_step: float = FD_STEP):
    """Vectorized frame-ODE defect norms (r1, r2, r3, darboux) on a grid."""
    t = _regular_type(surface)
    eps2, eps1 = t.eps2, t.eps1
    svals = np.asarray(svals, dtype=np.float64)
    if isinstance(surface, IntegratedSurface):
        centers, fd_step = _node_centers(surface, svals)
        shifted = [frame_grid(surface, centers + k * fd_step) for k in (-2, -1, 1, 2)]

        def fd(key):
            return (shifted[0][key] - 8.0 * shifted[1][key]
                    + 8.0 * shifted[2][key] - shifted[3][key]) / (12.0 * fd_step)

        g = frame_grid(surface, centers)
        qp, hp, ap = fd("q"), fd("h"), fd("a")
    else:
        g = frame_grid(surface, svals)
        qp = surface.director_grid(svals, 1)
        hp, ap = g["h_d"], g["a_d"]
    qv, h, a = g["q"], g["h"], g["a"]
    w = g["ds1_ds"][:, None]
    kappa = g["kappa"][:, None]
    if eps1 == -1:
        target_h = qv + kappa * a
        target_a = kappa * h
    else:
        target_h = -eps2 * qv + kappa * a
        target_a = eps2 * kappa * h
    r1 = _lnorm_rows(qp / w - h)
    r2 = _lnorm_rows(hp / w - target_h)
    r3 = _lnorm_rows(ap / w - target_a)
    dx = g["darboux"]
    rd = np.maximum(_lnorm_rows(qp / w - lcross_arr(dx, qv)),
                    np.maximum(_lnorm_rows(hp / w - lcross_arr(dx, h)),
                               _lnorm_rows(ap / w - lcross_arr(dx, a))))
    return r1, r2, r3, rd


def kappa_deriv_grid(surface, svals) -> np.ndarray:
    """d(kappa)/ds on a grid; exact when the surface carries its curvature
    expression, five-point finite differences (stencil clamped to the
    domain) otherwise."""
    svals = np.asarray(svals, dtype=np.float64)
    if isinstance(surface, IntegratedSurface):
        return surface.kappa_deriv_grid(svals)
    s0, s1 = surface.domain
    h = FD_STEP
    centers = np.clip(svals, s0 + 2 * h, s1 - 2 * h)
    km2, km1, kp1, kp2 = (frame_grid(surface, centers + k * h)["kappa"]
                          for k in (-2, -1, 1, 2))
    return (km2 - 8.0 * km1 + 8.0 * kp1 - kp2) / (12.0 * h)
