"""Aberth-Ehrlich simultaneous root finder for complex polynomials."""
import numpy as np

from .errors import NumericalError, ParameterError


def aberth(coeffs, tol=1e-12, max_sweeps=200):
    """All roots of ``sum coeffs[k] z**k`` (ascending coefficients).

    Parameters
    ----------
    coeffs : array_like of complex
        Taylor coefficients a_0..a_d; trailing zeros are dropped.
    tol : float
        A root is frozen when its correction is below ``tol * (1 + |z_i|)``
        or its residual is at roundoff level (backward-error test).
    max_sweeps : int
        Iteration cap; exceeding it raises :class:`NumericalError`.

    Returns
    -------
    ndarray of complex
        The d roots, with multiplicity. Exact zeros at the origin are split
        off before iterating.
    """
    a = np.trim_zeros(np.asarray(coeffs, dtype=np.complex128), "b")
    if a.size == 0:
        raise ParameterError("zero polynomial has no well-defined roots")
    lead_zeros = 0
    while a[lead_zeros] == 0:
        lead_zeros += 1
    a = a[lead_zeros:]
    d = a.size - 1
    origin = np.zeros(lead_zeros, dtype=np.complex128)
    if d == 0:
        return origin
    if d == 1:
        return np.concatenate((origin, [-a[0] / a[1]]))

    desc = a[::-1] / a[-1]
    dder = np.polyder(desc)
    absdesc = np.abs(desc)
    # Fujiwara bound: every root lies in |z| <= radius, so the start circle encloses them all
    k = np.arange(1, d + 1)
    radius = 2 * float(np.max(absdesc[1:] ** (1.0 / k)))
    if k.size and absdesc[-1] > 0:
        radius = max(radius, 2 * float((absdesc[-1] / 2) ** (1.0 / d)))
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    active = np.ones(d, dtype=bool)
    eps = 8 * d * np.finfo(float).eps

    for _ in range(max_sweeps):
        idx = np.flatnonzero(active)
        zi = z[idx]
        p = np.polyval(desc, zi)
        dp = np.polyval(dder, zi)
        # backward error: |p| at roundoff level of sum |a_k| |z|^k (also settles multiple roots)
        settled = np.abs(p) <= eps * np.polyval(absdesc, np.abs(zi))
        diff = zi[:, None] - z[None, :]
        diff[np.arange(idx.size), idx] = 1.0
        inv = 1.0 / diff
        inv[np.arange(idx.size), idx] = 0.0
        s = inv.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ratio = np.where(p == 0, 0.0, p / dp)
            w = np.where(p == 0, 0.0, ratio / (1 - ratio * s))
        bad = ~np.isfinite(w)
        if bad.any():
            w[bad] = 1e-3 * (1 + np.abs(zi[bad]))
        w[settled] = 0.0
        z[idx] = zi - w
        done = settled | (np.abs(w) <= tol * (1 + np.abs(z[idx])))
        active[idx[done]] = False
        if not active.any():
            return np.concatenate((origin, z))
    raise NumericalError(f"Aberth iteration did not converge in {max_sweeps} sweeps")


def count_inside(coeffs, radius, **kwargs):
    """Number of roots (with multiplicity) of modulus strictly below ``radius``."""
    return int(np.count_nonzero(np.abs(aberth(coeffs, **kwargs)) < radius))
