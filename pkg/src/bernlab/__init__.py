"""bernlab: integral means of derivatives, valence and rational approximation on the unit disk."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BernlabError,
    DomainError,
    HypothesisError,
    NumericalError,
    ParameterError,
    ZeroOnCircleError,
)
from .functions import (  # noqa: E402
    BlaschkeProduct,
    LacunarySeries,
    Polynomial,
    ProductFunction,
    RationalFunction,
    derivative,
    eval_deriv,
    evaluate,
    from_spec,
    lacunary_partial_sum,
    power,
    random_family,
    taylor_coeffs,
)
from .kernels import BACKEND  # noqa: E402
from .norms import (  # noqa: E402
    NormReport,
    bergman_deriv_norm,
    besov_seminorm,
    bmoa_surrogate,
    hardy_norm,
    hayman_lhs,
    littlewood_paley_norm,
    max_modulus,
    pommerenke_mixed_norm,
    square_function,
)
from .quadrature import CircleGrid, DiskQuadrature, RadialPanels, circle_mean, disk_integral  # noqa: E402

__all__ = [
    "__version__", "BACKEND",
    "BernlabError", "ParameterError", "HypothesisError", "NumericalError", "DomainError", "ZeroOnCircleError",
    "Polynomial", "LacunarySeries", "BlaschkeProduct", "RationalFunction", "ProductFunction",
    "derivative", "evaluate", "eval_deriv", "from_spec", "lacunary_partial_sum", "power",
    "random_family", "taylor_coeffs",
    "NormReport", "hardy_norm", "bergman_deriv_norm", "besov_seminorm", "littlewood_paley_norm",
    "square_function", "hayman_lhs", "max_modulus", "pommerenke_mixed_norm", "bmoa_surrogate",
    "CircleGrid", "RadialPanels", "DiskQuadrature", "circle_mean", "disk_integral",
]
