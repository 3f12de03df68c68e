"""Vector algebra of Minkowski 3-space IR_1^3.

The metric is <x, y> = -x1*y1 + x2*y2 + x3*y3 (signature -,+,+); the first
component is the timelike direction. The cross product follows the same
component convention as the frame identities used throughout the package:

    x X y = (x2*y3 - x3*y2, x1*y3 - x3*y1, x2*y1 - x1*y2)

which satisfies <x X y, x> = <x X y, y> = 0 in this metric.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np

from .errors import (AngleDomainError, DegeneratePlaneError, NullVectorError,
                     OrientationError)

DEFAULT_TOL = 1e-9


class LVec3(NamedTuple):
    x1: float
    x2: float
    x3: float

    def __add__(self, other):
        return LVec3(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other):
        return LVec3(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def scaled(self, c: float) -> "LVec3":
        return LVec3(c * self.x1, c * self.x2, c * self.x3)

    def __neg__(self):
        return LVec3(-self.x1, -self.x2, -self.x3)

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=np.float64)


def lvec3(x1: float, x2: float, x3: float) -> LVec3:
    v = LVec3(float(x1), float(x2), float(x3))
    _check_finite(v)
    return v


def _check_finite(v) -> None:
    if not (math.isfinite(v[0]) and math.isfinite(v[1]) and math.isfinite(v[2])):
        raise ValueError(f"non-finite vector component: {tuple(v)}")


class CausalClass(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"


class SphereMembership(enum.Enum):
    ON_S12 = "S12"      # pseudo-sphere <x, x> = r^2
    ON_H02 = "H02"      # hyperbolic sphere <x, x> = -r^2
    NEITHER = "neither"


class AngleKind(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    CENTRAL = "central"
    SPACELIKE = "spacelike"
    LORENTZIAN_TIMELIKE = "lorentzian_timelike"


class LorentzAngle(NamedTuple):
    kind: AngleKind
    theta: float


def lorentz_dot(x, y) -> float:
    _check_finite(x)
    _check_finite(y)
    return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]


def lorentz_norm(x) -> float:
    return math.sqrt(abs(lorentz_dot(x, x)))


def lorentz_cross(x, y) -> LVec3:
    _check_finite(x)
    _check_finite(y)
    return LVec3(x[1] * y[2] - x[2] * y[1],
                 x[0] * y[2] - x[2] * y[0],
                 x[1] * y[0] - x[0] * y[1])


def mixed_product(a, b, c) -> float:
    """Scalar triple product <a X b, c>."""
    return lorentz_dot(lorentz_cross(a, b), c)


def classify_causal(v, tol: float = DEFAULT_TOL) -> CausalClass:
    _check_finite(v)
    q = lorentz_dot(v, v)
    e2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2]
    if e2 == 0.0:
        return CausalClass.SPACELIKE  # zero vector is spacelike by convention
    if abs(q) <= tol * max(1.0, e2):
        return CausalClass.NULL
    return CausalClass.TIMELIKE if q < 0.0 else CausalClass.SPACELIKE


def is_future_pointing(v, tol: float = DEFAULT_TOL) -> bool:
    cls = classify_causal(v, tol)
    if cls is CausalClass.SPACELIKE:
        raise NullVectorError("time orientation undefined for spacelike vectors")
    return v[0] > 0.0


def sphere_membership(v, r: float, tol: float = DEFAULT_TOL) -> SphereMembership:
    if r <= 0.0:
        raise ValueError("sphere radius must be positive")
    q = lorentz_dot(v, v)
    scale = max(1.0, abs(q), r * r)
    if abs(q - r * r) <= tol * scale:
        return SphereMembership.ON_S12
    if abs(q + r * r) <= tol * scale:
        return SphereMembership.ON_H02
    return SphereMembership.NEITHER


def lorentz_angle(x, y, tol: float = DEFAULT_TOL) -> LorentzAngle:
    """Angle between two non-null vectors, by causal configuration.

    Timelike pair (same orientation): <x,y> = -|x||y| cosh(theta).
    Spacelike pair spanning a timelike plane: |<x,y>| = |x||y| cosh(theta).
    Spacelike pair spanning a spacelike plane: |<x,y>| = |x||y| cos(theta).
    Mixed pair: |<x,y>| = |x||y| sinh(theta).
    """
    cx = classify_causal(x, tol)
    cy = classify_causal(y, tol)
    if cx is CausalClass.NULL or cy is CausalClass.NULL:
        raise NullVectorError("angle undefined for null vectors")
    nx = lorentz_norm(x)
    ny = lorentz_norm(y)
    if nx == 0.0 or ny == 0.0:
        raise NullVectorError("angle undefined for the zero vector")
    d = lorentz_dot(x, y)

    if cx is CausalClass.TIMELIKE and cy is CausalClass.TIMELIKE:
        if (x[0] > 0.0) != (y[0] > 0.0):
            raise OrientationError("timelike vectors have opposite time orientation")
        ratio = -d / (nx * ny)
        if ratio < 1.0 - tol:
            raise AngleDomainError(f"cosh ratio {ratio} below 1")
        return LorentzAngle(AngleKind.HYPERBOLIC, math.acosh(max(ratio, 1.0)))

    if cx is CausalClass.SPACELIKE and cy is CausalClass.SPACELIKE:
        qx = lorentz_dot(x, x)
        qy = lorentz_dot(y, y)
        gram = qx * qy - d * d
        scale = max(1.0, abs(qx * qy), d * d)
        if abs(gram) <= tol * scale:
            raise DegeneratePlaneError("vectors span a degenerate plane")
        ratio = abs(d) / (nx * ny)
        if gram < 0.0:
            # timelike plane: central angle
            if ratio < 1.0 - tol:
                raise AngleDomainError(f"cosh ratio {ratio} below 1")
            return LorentzAngle(AngleKind.CENTRAL, math.acosh(max(ratio, 1.0)))
        if ratio > 1.0 + tol:
            raise AngleDomainError(f"cos ratio {ratio} above 1")
        return LorentzAngle(AngleKind.SPACELIKE, math.acos(min(ratio, 1.0)))

    # one timelike, one spacelike
    return LorentzAngle(AngleKind.LORENTZIAN_TIMELIKE, math.asinh(abs(d) / (nx * ny)))


# ---------------------------------------------------------------------------
# batched helpers on (..., 3) float arrays, used by grids and sampled checks

def ldot_arr(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return -x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + x[..., 2] * y[..., 2]


def lnorm_arr(x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.abs(ldot_arr(x, x)))


def lcross_arr(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.empty(np.broadcast(x, y).shape, dtype=np.float64)
    out[..., 0] = x[..., 1] * y[..., 2] - x[..., 2] * y[..., 1]
    out[..., 1] = x[..., 0] * y[..., 2] - x[..., 2] * y[..., 0]
    out[..., 2] = x[..., 1] * y[..., 0] - x[..., 0] * y[..., 1]
    return out


def mixed_arr(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    return ldot_arr(lcross_arr(a, b), c)
