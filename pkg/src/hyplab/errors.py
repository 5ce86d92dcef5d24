"""Exception types shared across the package."""


class HyperbolicityError(ValueError):
    """A polynomial that was required to be hyperbolic is not (numerically)."""

    def __init__(self, message, *, node=None, x=None):
        super().__init__(message)
        self.node = node
        self.x = x


class ToleranceError(ArithmeticError):
    """Root isolation could not reach the requested tolerance."""


class DegenerateError(ValueError):
    """Normalization of a polynomial that is numerically Z^d."""


class InternalError(RuntimeError):
    """An invariant guaranteed by the theory failed numerically."""


class GridError(ValueError):
    """A stencil or interval does not fit the sampling grid."""


class SpecError(ValueError):
    """Invalid experiment specification."""

    def __init__(self, message, *, field=None, line=None, path=None):
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.field = field
        self.line = line
        self.path = path
