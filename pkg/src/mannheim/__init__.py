"""Ruled surfaces and Mannheim-type offsets in Minkowski 3-space.

Layers, bottom up: vectors (Lorentzian linear algebra), expr (symbolic
expressions with exact derivatives), kernel (compiled evaluation and frame
integration, native extension with a pure-Python fallback), curves, surfaces
(classification, moving frame, invariants), offsets (the three offset
constructions and their verification), theorems (the scripted claim suite),
surface_io and cli (file format, exports, subcommands).
"""

from .vectors import (CausalClass, classify_causal, lorentz_cross,
                      lorentz_dot, mixed_product)
from .expr import differentiate, parse_curve, parse_expr, to_source
from .curves import CurveDef, arclength, inverse_arclength
from .surfaces import (AnalyticRuledSurface, FrameSample, IntegratedSurface,
                       SurfaceType, classify_surface, drall, drall_grid,
                       frame_grid, frenet_frame, integrate_frame,
                       is_developable, striction_point)
from .offsets import (OffsetSpec, Pairing, build_offset,
                      characterization_residual, developability_residual,
                      mannheim_condition_check, offset_frame, solve_theta,
                      trajectory_report, trajectory_surfaces)
from .theorems import REGISTRY, run_case, run_suite
from .surface_io import load_surface, parse_surface_text, surface_from_text
from . import errors

__version__ = "1.0.0"

__all__ = [
    "CausalClass", "classify_causal", "lorentz_cross", "lorentz_dot",
    "mixed_product",
    "differentiate", "parse_curve", "parse_expr", "to_source",
    "CurveDef", "arclength", "inverse_arclength",
    "AnalyticRuledSurface", "FrameSample", "IntegratedSurface", "SurfaceType",
    "classify_surface", "drall", "drall_grid", "frame_grid", "frenet_frame",
    "integrate_frame", "is_developable", "striction_point",
    "OffsetSpec", "Pairing", "build_offset", "characterization_residual",
    "developability_residual", "mannheim_condition_check", "offset_frame",
    "solve_theta", "trajectory_report", "trajectory_surfaces",
    "REGISTRY", "run_case", "run_suite",
    "load_surface", "parse_surface_text", "surface_from_text",
    "errors",
    "__version__",
]
