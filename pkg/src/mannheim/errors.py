"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for geometric failures (degeneracies, causal violations)."""


class NullVectorError(GeometryError):
    """An operation received a null (or zero) vector where one is not allowed."""


class OrientationError(GeometryError):
    """Two timelike vectors with opposite time orientation where a hyperbolic
    angle was requested."""


class DegeneratePlaneError(GeometryError):
    """The span of the two vectors is degenerate (Gram determinant zero)."""


class AngleDomainError(GeometryError):
    """The normalized inner-product ratio left the admissible range beyond
    tolerance."""


class ExprSyntaxError(ValueError):
    """Syntax error while parsing an expression or curve.

    offset is the 0-based byte offset into the source text; expected lists
    the token kinds that would have been accepted at that point.
    """

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset
        self.expected = tuple(expected)


class EvalDomainError(ValueError):
    """Expression evaluation produced a non-finite value."""

    def __init__(self, message, s=None):
        super().__init__(message)
        self.s = s


class NullTangentError(GeometryError):
    """Curve tangent is null (or vanishes) somewhere on the requested range."""


class QuadratureError(GeometryError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class SingularPointError(GeometryError):
    """Surface normal undefined: the partials are parallel or their cross
    product is null."""


class NullNormalError(GeometryError):
    """Surface normal is a null vector; no unit normal exists."""


class DegenerateSurfaceError(GeometryError):
    """Ruled surface fails the regularity assumptions (null director, null or
    vanishing director derivative, causal character flip, ...)."""


class UnitSpeedError(GeometryError):
    """Striction curve is not unit speed within tolerance."""


class PairingMismatchError(GeometryError):
    """Offset pairing does not match the base surface type."""


class NoRealSolutionError(GeometryError):
    """The offset-angle equation has no real solution for the given data."""

    def __init__(self, message, value=None, bound=None):
        super().__init__(message)
        self.value = value
        self.bound = bound


class DivisionByZero(GeometryError):
    """A closed-form denominator vanished; message names the denominator."""


class FrameDriftError(GeometryError):
    """Integrated frame drifted from pseudo-orthonormality beyond tolerance."""


class SurfaceFileError(ValueError):
    """Malformed surface description file.

    line/column are 1-based positions of the offending text.
    """

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line = line
        self.column = column
