"""Functionals of analytic functions on the disk.

Hardy-side quantities (circle means, ``hardy_norm``, square-function norms)
use the normalized angular measure dt/2pi; area quantities use Lebesgue dA.
``hayman_lhs`` and the Pommerenke mixed norm keep the raw dt of their
defining formulas. Every :class:`NormReport` records which is which.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import golden

from . import quadrature as quad_mod
from .errors import ParameterError, ZeroOnCircleError
from .functions import LacunarySeries
from .quadrature import (
    CONVENTIONS,
    CircleGrid,
    DiskQuadrature,
    RadialPanels,
    circle_integrand,
    default_angular,
)

log = logging.getLogger(__name__)

ZERO_TOL = 1e-13
PERTURB = 2.0**-30


@dataclass
class NormReport:
    functional: str
    params: dict
    value: float
    error_estimate: float
    grid: dict
    conventions: dict = field(default_factory=lambda: dict(CONVENTIONS))
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.value = float(self.value)
        self.error_estimate = float(abs(self.error_estimate))

    def __float__(self):
        return self.value

    def to_dict(self):
        return asdict(self)

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _disk_quad(f, quad, gamma=0.0):
    if quad is None:
        return DiskQuadrature(M=default_angular(f.degree), gamma=gamma)
    if quad.gamma != gamma:
        return DiskQuadrature(radial=quad.radial, M=quad.M, gamma=gamma)
    return quad


def abs_power(f, p, deriv=False):
    """Integrand |f|^p (or |f'|^p) evaluated circle by circle."""
    return circle_integrand(lambda r, M: np.abs(f.circle_values(r, M, deriv=deriv)) ** p)


def _root_error(integral, err, p):
    if integral <= 0:
        return err ** (1.0 / p) if err > 0 else 0.0
    return err * integral ** (1.0 / p - 1.0) / p


def hardy_norm(f, p, M=None):
    """||f||_{H^p} from the boundary trace, with r = 0.5, 0.9, 1 means as diagnostics."""
    if p < 1:
        raise ParameterError(f"Hardy norm needs p >= 1, got {p}")
    M = default_angular(f.degree) if M is None else int(M)
    mean, rel = quad_mod.circle_mean(f, 1.0, p, M, with_error=True)
    value = mean ** (1.0 / p)
    radii = {}
    for r in (0.5, 0.9, 1.0):
        radii[str(r)] = quad_mod.circle_mean(f, r, p, M) ** (1.0 / p) if r < 1 else value
    seq = list(radii.values())
    return NormReport(
        functional="hardy",
        params={"p": p},
        value=value,
        error_estimate=value * rel / p,
        grid={"M": M, "r": 1.0},
        diagnostics={
            "means_by_radius": radii,
            "nondecreasing": all(b >= a * (1 - 1e-12) for a, b in zip(seq, seq[1:])),
        },
    )


def bergman_deriv_norm(f, p, quad=None):
    """(integral over D of |f'|^p dA)^{1/p}."""
    if p < 1:
        raise ParameterError(f"Bergman exponent must be >= 1, got {p}")
    q = _disk_quad(f, quad)
    integral, err = quad_mod.with_error(quad_mod.disk_integral, abs_power(f, p, deriv=True), q)
    return NormReport(
        functional="bergman-deriv",
        params={"p": p},
        value=integral ** (1.0 / p),
        error_estimate=_root_error(integral, err, p),
        grid=q.describe(),
        diagnostics={"integral": integral, "integral_error": err},
    )


def besov_seminorm(f, sigma, alpha, quad=None):
    """sigma-th root of integral over D of |f'|^sigma (1 - |z|^2)^{(1-alpha)sigma - 1} dA."""
    if sigma <= 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    gamma = (1.0 - alpha) * sigma - 1.0
    if gamma <= -1:
        raise ParameterError(
            f"weight exponent (1-alpha)*sigma - 1 = {gamma:g} <= -1 is not integrable (need alpha < 1)"
        )
    q = _disk_quad(f, quad, gamma)
    integral, err = quad_mod.with_error(quad_mod.disk_integral, abs_power(f, sigma, deriv=True), q)
    return NormReport(
        functional="besov",
        params={"sigma": sigma, "alpha": alpha},
        value=integral ** (1.0 / sigma),
        error_estimate=_root_error(integral, err, sigma),
        grid=q.describe(),
        diagnostics={"integral": integral, "integral_error": err, "weight_exponent": gamma},
    )


def _square_function_sq(f, radial, M):
    # S(f)^2 at all M angles: integral_0^1 (1 - r) |f'(r e^{it})|^2 dr
    x, w = radial.rule(0.0)
    acc = np.zeros(M)
    for r, wr in zip(x, w):
        acc += wr * (1.0 - r) * np.abs(f.circle_values(float(r), M, deriv=True)) ** 2
    return acc


def square_function(f, t, radial=RadialPanels()):
    """Littlewood-Paley S(f)(e^{it}) by radial quadrature."""
    x, w = radial.rule(0.0)
    d = f.deriv(x * np.exp(1j * t))
    return math.sqrt(math.fsum(w * (1.0 - x) * np.abs(d) ** 2))


def littlewood_paley_norm(f, p, M=None, radial=RadialPanels()):
    """||S(f)||_{L^p(T)} with the normalized measure dt/2pi."""
    if p <= 0:
        raise ParameterError("p must be positive")
    M = default_angular(f.degree) if M is None else int(M)

    def norm(rad, m):
        s2 = _square_function_sq(f, rad, m)
        return float(np.sum(s2 ** (p / 2)) / m) ** (1.0 / p)

    value = norm(radial, M)
    fine = norm(radial.refined(4), 2 * M)
    return NormReport(
        functional="littlewood-paley",
        params={"p": p},
        value=value,
        error_estimate=abs(fine - value),
        grid={"J": radial.J, "J0": radial.J0, "G": radial.G, "M": M},
    )


def hayman_lhs(f, r_tilde, lam, M=None, perturb=False):
    """integral_0^{2pi} |f'|^2 |f|^{lam-2} dt on |z| = r_tilde (raw dt, not normalized).

    Raises :class:`ZeroOnCircleError` when min |f| on the sampled circle is
    below 1e-13, unless ``perturb`` is set, in which case the radius is moved
    inward by 2**-30 and a warning is logged.
    """
    if not 0 < lam < 2 and lam != 2:
        raise ParameterError(f"lambda must lie in (0, 2], got {lam}")
    M = default_angular(f.degree) if M is None else int(M)
    r = float(r_tilde)
    for attempt in range(2):
        v = f.circle_values(r, M)
        d = f.circle_values(r, M, deriv=True)
        if np.all(d == 0):
            return 0.0
        amin = float(np.min(np.abs(v)))
        if amin >= ZERO_TOL or lam == 2:
            return float(2 * np.pi * np.sum(np.abs(d) ** 2 * np.abs(v) ** (lam - 2)) / M)
        if not perturb or attempt:
            raise ZeroOnCircleError(r, amin)
        log.warning("hayman_lhs: zero of f near |z| = %r, perturbing radius by -2**-30", r)
        r = r - PERTURB
    raise AssertionError("unreachable")


def max_modulus(f, r, M=None):
    """M(r, f) = max over |z| = r of |f|: grid maximum refined by golden-section search."""
    M = default_angular(f.degree) if M is None else int(M)
    grid = CircleGrid(M, r)
    vals = np.abs(f.circle_values(r, M))
    j = int(np.argmax(vals))
    best = float(vals[j])
    if r == 0:
        return best
    t = grid.angles
    step = 2 * np.pi / M

    def neg(theta):
        return -abs(f(r * np.exp(1j * theta)))

    try:
        theta = golden(neg, brack=(t[j] - step, t[j], t[j] + step), tol=1e-12)
        best = max(best, -neg(theta))
    except (ValueError, RuntimeError):
        pass  # flat neighbourhood: the grid value is already the maximum
    return best


def pommerenke_mixed_norm(f, p, M=None, radial=RadialPanels()):
    """integral_0^1 (integral_0^{2pi} |f'(r e^{it})| dt)^p dr (raw dt)."""
    if p < 1:
        raise ParameterError("p must be >= 1")
    M = default_angular(f.degree) if M is None else int(M)

    def run(rad, m):
        x, w = rad.rule(0.0)
        terms = []
        for r, wr in zip(x, w):
            inner = 2 * np.pi * float(np.sum(np.abs(f.circle_values(float(r), m, deriv=True))) / m)
            terms.append(wr * inner**p)
        return math.fsum(terms)

    value = run(radial, M)
    fine = run(radial.refined(4), 2 * M)
    return NormReport(
        functional="pommerenke",
        params={"p": p},
        value=value,
        error_estimate=abs(fine - value),
        grid={"J": radial.J, "J0": radial.J0, "G": radial.G, "M": M},
        conventions={"angular": "raw dt over [0, 2pi]", "radial": "dr over [0, 1]"},
    )


def bmoa_surrogate(f, M=None):
    """H^2 norm standing in for the BMOA norm; valid for lacunary series only."""
    if not isinstance(f, LacunarySeries):
        raise ParameterError("the BMOA surrogate ||f||_{H^2} is only valid for lacunary series")
    if not f.terms:
        return NormReport("bmoa-surrogate", {}, 0.0, 0.0, {"M": 0}, diagnostics={"surrogate": True})
    rep = hardy_norm(f, 2, M)
    rep.functional = "bmoa-surrogate"
    rep.params = {}
    rep.diagnostics = {
        "surrogate": True,
        "note": "||f||_BMOA is comparable to ||f||_H2 for lacunary series; this is the H2 norm",
        "parseval": math.sqrt(f.h2_norm_squared()),
    }
    return rep
