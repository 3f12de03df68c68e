"""Canonical ruled surfaces used across the theorem cases and tests.

Every closed-form base curve here is chosen with k' = q where a developable
surface is wanted, so the base curve is simultaneously the striction curve
and the surface is a cone or tangent developable by construction.
"""

from __future__ import annotations

import math

from .curves import CurveDef
from .surfaces import (AnalyticRuledSurface, DEFAULT_SAMPLES, IntegratedSurface,
                       M1_MINUS, M1_PLUS, M2_PLUS, integrate_frame)

# seed frames satisfying the cross-product tables of the three types
SEED_M1_MINUS = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
SEED_M1_PLUS = ((0.0, 1.0, 0.0), (0.0, 0.0, 1.0), (1.0, 0.0, 0.0))
SEED_M2_PLUS = ((0.0, 1.0, 0.0), (1.0, 0.0, 0.0), (0.0, 0.0, -1.0))


def _surface(k_src: str, q_src: str, domain, samples: int) -> AnalyticRuledSurface:
    return AnalyticRuledSurface(CurveDef.from_source(k_src, domain),
                                CurveDef.from_source(q_src, domain),
                                samples=samples)


def helicoid(domain=(0.0, 2.0), samples: int = DEFAULT_SAMPLES):
    """Timelike-director helicoid: kappa = 0, drall = -1, a = (0, 0, 1)."""
    return _surface("(0, 0, s)", "(cosh(s), sinh(s), 0)", domain, samples)


def tangent_developable(domain=(0.0, 2.0), samples: int = DEFAULT_SAMPLES):
    """Tangent surface of a timelike curve; drall vanishes identically."""
    return _surface("(sinh(s), cosh(s), 0)", "(cosh(s), sinh(s), 0)",
                    domain, samples)


def cone_m1_minus(alpha: float = 1.0, omega: float = 1.0, domain=(0.0, 2.0),
                  samples: int = DEFAULT_SAMPLES):
    """Developable cone with timelike director.

    kappa = coth(alpha) independent of omega; ds1/ds = omega*sinh(alpha).
    """
    ca, sa, om = repr(math.cosh(alpha)), repr(math.sinh(alpha)), repr(float(omega))
    k = f"({ca}*s, ({sa}/{om})*sin({om}*s), -({sa}/{om})*cos({om}*s))"
    q = f"({ca}, {sa}*cos({om}*s), {sa}*sin({om}*s))"
    return _surface(k, q, domain, samples)


def cone_m1_plus(alpha: float = 1.0, domain=(0.0, 0.8),
                 samples: int = DEFAULT_SAMPLES):
    """Developable cone with spacelike director and spacelike derivative.

    kappa = tanh(alpha); ds1/ds = cosh(alpha).
    """
    ca, sa = repr(math.cosh(alpha)), repr(math.sinh(alpha))
    k = f"({sa}*s, {ca}*sin(s), -{ca}*cos(s))"
    q = f"({sa}, {ca}*cos(s), {ca}*sin(s))"
    return _surface(k, q, domain, samples)


def m2_plus_analytic(domain=(0.0, 2.0), samples: int = DEFAULT_SAMPLES):
    """Spacelike director with timelike derivative: kappa = 0, drall = -1."""
    return _surface("(0, 0, s)", "(sinh(s), cosh(s), 0)", domain, samples)


def cylinder_like(domain=(0.0, 2.0), samples: int = DEFAULT_SAMPLES):
    """Constant director; dq/ds vanishes, so classification degenerates."""
    return _surface("(0, s, 0)", "(cosh(1), sinh(1), 0)", domain, samples)


def null_director(domain=(0.0, 2.0), samples: int = DEFAULT_SAMPLES):
    """Null director everywhere; no unit normalization exists."""
    return _surface("(0, 0, s)",
                    "((1 + s*s), (1 + s*s)*cos(s), (1 + s*s)*sin(s))",
                    domain, samples)


M1_MINUS_POLE = 3.0
M1_PLUS_POLE = 3.0
M1_PLUS_SPAN = 3.0 - math.pi / 2 - 0.05


def curvature_law_base_m1_minus(R: float = 1.0, domain=(0.0, 2.0),
                                step: float = 1e-3) -> IntegratedSurface:
    """Integrated timelike-director base whose curvature follows the
    developable-offset evolution law with the -1 sign; the offset angle
    3 - s then produces a developable Mannheim offset."""
    kappa = f"-(cosh({M1_MINUS_POLE!r} - s)/(sinh({M1_MINUS_POLE!r} - s)*{R!r}))"
    return integrate_frame(M1_MINUS, kappa, "1", SEED_M1_MINUS,
                           (0.0, 0.0, 0.0), domain, step=step)


def curvature_law_base_m1_plus(R: float = 1.0, domain=(0.0, M1_PLUS_SPAN),
                               step: float = 1e-3) -> IntegratedSurface:
    """Spacelike-director analogue with the +1 sign: kappa = tan(3 - s)/R."""
    kappa = f"tan({M1_PLUS_POLE!r} - s)/{R!r}"
    return integrate_frame(M1_PLUS, kappa, "1", SEED_M1_PLUS,
                           (0.0, 0.0, 0.0), domain, step=step)


def integrated_m2_plus(kappa: str = "0.5", domain=(0.0, 2.0),
                       step: float = 1e-3) -> IntegratedSurface:
    return integrate_frame(M2_PLUS, kappa, "1", SEED_M2_PLUS,
                           (0.0, 0.0, 0.0), domain, step=step)
