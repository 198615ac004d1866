"""Quadrature on circles and on the unit disk.

Angular integrals use the trapezoid rule on equispaced angles. Radial
integrals use Gauss-Legendre panels on [1 - 2**-j, 1 - 2**-(j+1)] with a
terminal panel [1 - 2**-J, 1] treated by Gauss-Jacobi so that a boundary
weight (1 - r)**gamma is absorbed into the rule instead of sampled.

Area integrals are with respect to Lebesgue measure dA (area of the disk
is pi); circle means are normalized by 1/(2 pi).
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import roots_jacobi

from .errors import DomainError, ParameterError

DEFAULT_J = 40
DEFAULT_G = 16
DEFAULT_J0 = 6
MIN_ANGULAR = 4096
MAX_J = 53

CONVENTIONS = {
    "angular": "normalized: (1/2pi) * integral dt",
    "area": "Lebesgue dA, area(D) = pi",
}


def default_angular(n):
    """Default angle count: |B'| has n boundary peaks of width ~1/n."""
    return max(MIN_ANGULAR, 64 * int(n))


@dataclass(frozen=True)
class CircleGrid:
    """Equispaced angles t_j = 2 pi j / M on the circle of radius r."""

    M: int
    r: float = 1.0

    def __post_init__(self):
        if self.M < 1:
            raise ParameterError("M must be positive")

    @property
    def angles(self):
        return 2 * np.pi * np.arange(self.M) / self.M

    @property
    def points(self):
        return self.r * np.exp(1j * self.angles)

    def mean(self, values):
        """Trapezoid approximation of (1/2pi) * integral over the circle."""
        return float(np.sum(values) / self.M)


@functools.lru_cache(maxsize=64)
def _legendre(G):
    x, w = np.polynomial.legendre.leggauss(G)
    return x, w


@functools.lru_cache(maxsize=64)
def _jacobi(G, gamma):
    x, w = roots_jacobi(G, gamma, 0.0)
    return np.asarray(x), np.asarray(w)


@dataclass(frozen=True)
class RadialPanels:
    """Geometric panels with breakpoints 1 - 2**-j, j = 1..J, plus a terminal panel.

    The first panel [0, 1/2] is itself graded towards 0 with breakpoints
    2**-(2j+1), j = 0..J0, because radial integrands such as r**a with
    non-integer a are not smooth at the origin.
    """

    J: int = DEFAULT_J
    G: int = DEFAULT_G
    terminal_rule: bool = True
    J0: int = DEFAULT_J0

    def __post_init__(self):
        if self.J < 1 or self.G < 1 or self.J0 < 0:
            raise ParameterError("J and G must be positive and J0 nonnegative")
        if self.J > MAX_J:
            # 1 - 2**-j is no longer representable beyond j = 53
            raise ParameterError(f"J must be <= {MAX_J}, got {self.J}")

    @property
    def breakpoints(self):
        inner = [2.0 ** -(2 * j + 1) for j in range(self.J0, 0, -1)]
        outer = [1.0 - 2.0**-j for j in range(1, self.J + 1)]
        return np.array([0.0] + inner + outer + [1.0])

    def rule(self, gamma=0.0, lo=0.0, hi=1.0):
        """Nodes and weights for integral_lo^hi F(r) (1 - r**2)**gamma dr.

        Panels are clipped to [lo, hi]. A piece ending at r = 1 uses
        Gauss-Jacobi for (1 - r)**gamma (when ``terminal_rule``); every other
        piece samples the weight at Gauss-Legendre nodes.
        """
        return _panel_rule(self.J, self.G, self.terminal_rule, self.J0, float(gamma), float(lo), float(hi))

    def refined(self, extra=4):
        return replace(self, J=self.J + extra, J0=self.J0 + extra // 2 if self.J0 else 0)


@functools.lru_cache(maxsize=256)
def _panel_rule(J, G, terminal, J0, gamma, lo, hi):
    if gamma <= -1:
        raise ParameterError(f"weight exponent gamma = {gamma} <= -1 is not integrable")
    if not (0.0 <= lo < hi <= 1.0):
        raise ParameterError(f"invalid radial interval [{lo}, {hi}]")
    xs, ws = [], []
    xl, wl = _legendre(G)
    # inner panels [0, 2**-(2 J0 + 1)], ..., [1/8, 1/2] in the r coordinate
    inner = [0.0] + [2.0 ** -(2 * j + 1) for j in range(J0, -1, -1)]
    for a, b in zip(inner, inner[1:]):
        a, b = max(a, lo), min(b, hi)
        if b <= a:
            continue
        half = (b - a) / 2
        r = a + half * (xl + 1.0)
        xs.append(r)
        ws.append(half * wl * (1.0 - r * r) ** gamma)
    # outer panels are handled through their distance to r = 1, which is exact
    # at the breakpoints 1 - 2**-j; forming 1 - r*r from r loses digits near 1
    gaps = [2.0**-j for j in range(1, J + 1)] + [0.0]
    for j in range(len(gaps) - 1):
        da = gaps[j] if 1.0 - gaps[j] >= lo else 1.0 - lo
        db = gaps[j + 1] if 1.0 - gaps[j + 1] <= hi else 1.0 - hi
        if da <= db:
            continue
        half = (da - db) / 2
        if db == 0.0 and terminal:
            xj, wj = _jacobi(G, gamma)
            s = half * (1.0 - xj)
            r = 1.0 - s
            xs.append(r)
            ws.append(half ** (gamma + 1) * wj * (2.0 - s) ** gamma)
        else:
            s = da - half * (xl + 1.0)
            xs.append(1.0 - s)
            ws.append(half * wl * (s * (2.0 - s)) ** gamma)
    x = np.concatenate(xs)
    w = np.concatenate(ws)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class DiskQuadrature:
    """Radial panels times a uniform angular grid, with weight (1 - |z|^2)**gamma.

    ``M`` is either a single angle count used at every radial node or a
    callable ``r -> M``.
    """

    radial: RadialPanels = RadialPanels()
    M: int = MIN_ANGULAR
    gamma: float = 0.0

    def __post_init__(self):
        if self.gamma <= -1:
            raise ParameterError(f"weight exponent gamma = {self.gamma} <= -1 is not integrable")

    def angular_count(self, r):
        return int(self.M(r)) if callable(self.M) else int(self.M)

    def refined(self):
        """The comparison grid for the error estimate: J + 4 panels, 2M angles."""
        M = self.M
        doubled = (lambda r: 2 * M(r)) if callable(M) else 2 * M
        return replace(self, radial=self.radial.refined(4), M=doubled)

    def describe(self):
        return {
            "J": self.radial.J,
            "J0": self.radial.J0,
            "G": self.radial.G,
            "terminal_rule": "gauss-jacobi" if self.radial.terminal_rule else "gauss-legendre",
            "M": "per-node" if callable(self.M) else self.M,
            "gamma": self.gamma,
        }


def circle_integrand(fn):
    """Wrap ``fn(r, M) -> values on the circle`` as a disk integrand."""

    def pointwise(z):
        raise ParameterError("this integrand is only defined on circle grids")

    pointwise.on_circle = fn
    return pointwise


def _on_circle(h, r, M):
    fast = getattr(h, "on_circle", None)
    if fast is not None:
        return np.asarray(fast(r, M))
    return np.asarray(h(CircleGrid(M, r).points))


def _radial_sum(h, quad, lo, hi):
    x, w = quad.radial.rule(quad.gamma, lo, hi)
    terms = []
    for r, wr in zip(x, w):
        M = quad.angular_count(r)
        vals = _on_circle(h, float(r), M)
        if not np.all(np.isfinite(vals)):
            raise DomainError(f"non-finite integrand on the circle |z| = {float(r)!r}")
        terms.append(wr * r * 2 * np.pi * float(np.sum(vals) / M))
    # fsum: exact rounding, independent of evaluation order
    return math.fsum(terms)


def disk_integral(h, quad=DiskQuadrature()):
    """integral over D of h(z) (1 - |z|^2)**gamma dA(z)."""
    return _radial_sum(h, quad, 0.0, 1.0)


def annulus_integral(h, quad, r_min):
    """Same as :func:`disk_integral` over {r_min <= |z| < 1}.

    When r_min falls inside the terminal panel the panel is split at r_min,
    keeping the Gauss-Jacobi treatment of the weight on [r_min, 1].
    """
    if not 0.0 <= r_min < 1.0:
        raise ParameterError(f"r_min must lie in [0, 1), got {r_min}")
    if r_min == 0.0:
        return disk_integral(h, quad)
    return _radial_sum(h, quad, r_min, 1.0)


def inner_disk_integral(h, quad, r_max):
    """Same as :func:`disk_integral` over {|z| < r_max}."""
    if not 0.0 < r_max <= 1.0:
        raise ParameterError(f"r_max must lie in (0, 1], got {r_max}")
    return _radial_sum(h, quad, 0.0, r_max)


def band_integral(h, quad, r_lo, r_hi):
    """Same as :func:`disk_integral` over {r_lo <= |z| <= r_hi}."""
    if not 0.0 <= r_lo < r_hi <= 1.0:
        raise ParameterError(f"invalid band [{r_lo}, {r_hi}]")
    return _radial_sum(h, quad, r_lo, r_hi)


def with_error(integral, h, quad, *args):
    """Run ``integral`` on ``quad`` and on ``quad.refined()``; return (value, |difference|)."""
    value = integral(h, quad, *args)
    fine = integral(h, quad.refined(), *args)
    return value, abs(fine - value)


def circle_mean(f, r, p, M=None, *, with_error=False):
    """(1/2pi) * integral_0^{2pi} |f(r e^{it})|^p dt by the trapezoid rule.

    ``f`` may be any :class:`~bernlab.functions.AnalyticFunction`, including
    ``Derivative(g)`` for means of g'. With ``with_error=True`` returns
    ``(value, relative_error)`` where the error compares M with 2M angles.
    """
    if p <= 0:
        raise ParameterError("exponent p must be positive")
    if not 0.0 <= r <= 1.0:
        raise ParameterError(f"radius must lie in [0, 1], got {r}")
    M = default_angular(f.degree) if M is None else int(M)

    def mean(m):
        vals = f.circle_values(r, m)
        if not np.all(np.isfinite(vals)):
            raise DomainError(f"non-finite values of f on the circle |z| = {r!r}")
        return float(np.sum(np.abs(vals) ** p) / m)

    value = mean(M)
    if not with_error:
        return value
    fine = mean(2 * M)
    return value, abs(fine - value) / max(abs(fine), np.finfo(float).tiny)
