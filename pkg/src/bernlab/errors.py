"""Exception hierarchy.

``ParameterError`` covers bad inputs and violated hypotheses (CLI exit 2);
``NumericalError`` covers failures of the numerics themselves (CLI exit 3).
"""


class BernlabError(Exception):
    """Base class for all bernlab errors."""


class ParameterError(BernlabError, ValueError):
    pass


class HypothesisError(ParameterError):
    """A theorem's hypothesis is violated; the message names the inequality."""


class ConstructionError(ParameterError):
    pass


class NumericalError(BernlabError, ArithmeticError):
    pass


class DomainError(NumericalError):
    """Non-finite evaluation, e.g. a pole on the integration circle."""


class ZeroOnCircleError(NumericalError):
    def __init__(self, radius, min_abs):
        self.radius = radius
        self.min_abs = min_abs
        super().__init__(
            f"f has a zero on the circle |z| = {radius!r} (min |f| = {min_abs:.3e}); "
            f"retry with a perturbed radius (perturb=True shifts by 2**-30)"
        )


class ContourTooCloseError(NumericalError):
    """w lies too close to the image of the counting contour."""


class NonIntegerResidueError(NumericalError):
    """Argument-principle integral did not settle on an integer."""
