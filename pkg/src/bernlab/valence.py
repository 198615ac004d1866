"""Covering counts n(w) by the argument principle, and the area-mean valence.

n(w) = (1/2 pi i) * contour integral of f'(z)/(f(z) - w) dz over |z| = rho,
discretized by the trapezoid rule on M equispaced points. A count is
accepted only when the raw values at M and 2M round to the same integer
and both lie within 1e-3 of it; otherwise M is doubled up to a cap.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ContourTooCloseError, NonIntegerResidueError, ParameterError
from .quadrature import default_angular
from .roots import count_inside
from .tables import write_csv

DEFAULT_RHO = 1.0 - 2.0**-20
M_CAP = 1 << 20
DELTA = 1e-6
INTEGER_TOL = 1e-3
GRID_RADII = 32
GRID_ANGLES = 64
_CHUNK = 1 << 22


class Contour:
    """Samples of f and f' on |z| = rho, cached per resolution."""

    def __init__(self, f, rho=DEFAULT_RHO):
        if not 0.0 < rho <= 1.0:
            raise ParameterError(f"contour radius must lie in (0, 1], got {rho}")
        self.f = f
        self.rho = float(rho)
        self._cache = {}

    def samples(self, M):
        if M not in self._cache:
            v = self.f.circle_values(self.rho, M)
            d = self.f.circle_values(self.rho, M, deriv=True)
            z = self.rho * np.exp(2j * np.pi * np.arange(M) / M)
            self._cache[M] = (v, d * z)
        return self._cache[M]

    def raw(self, ws, M):
        """Raw argument-principle values and min |f - w| for every w."""
        v, dz = self.samples(M)
        ws = np.atleast_1d(np.asarray(ws, dtype=np.complex128))
        out = np.empty(ws.size, dtype=np.complex128)
        gap = np.empty(ws.size)
        step = max(1, _CHUNK // M)
        for s in range(0, ws.size, step):
            diff = v[None, :] - ws[s:s + step, None]
            gap[s:s + step] = np.min(np.abs(diff), axis=1)
            with np.errstate(divide="ignore", invalid="ignore"):  # w on the image: caught by the gap test
                out[s:s + step] = np.sum(dz[None, :] / diff, axis=1) / M
        return out, gap


def _settle(contour, ws, M):
    """Counts for every w, or (index, reason) of the first unresolved node."""
    ws = np.atleast_1d(np.asarray(ws, dtype=np.complex128))
    counts = np.full(ws.size, -1, dtype=np.int64)
    todo = np.arange(ws.size)
    m = int(M)
    prev, gap = contour.raw(ws, m)
    close = gap <= DELTA
    if close.any():
        return counts, ("close", int(np.flatnonzero(close)[0]), float(gap[close][0]))
    while todo.size:
        if 2 * m > M_CAP:
            i = int(todo[0])
            return counts, ("residue", i, complex(prev[i]))
        # prev is aligned with todo
        cur, _ = contour.raw(ws[todo], 2 * m)
        rp, rc = np.round(prev.real), np.round(cur.real)
        ok = (
            (rp == rc)
            & (np.abs(prev.real - rp) < INTEGER_TOL)
            & (np.abs(cur.real - rc) < INTEGER_TOL)
            & (np.abs(cur.imag) < INTEGER_TOL)
        )
        counts[todo[ok]] = rc[ok].astype(np.int64)
        todo = todo[~ok]
        prev = cur[~ok]
        m *= 2
    return counts, None


def _raise(f, rho, info):
    kind, i, val = info
    if kind == "close":
        raise ContourTooCloseError(
            f"w lies within {val:.3e} <= {DELTA:g} of f(|z| = {rho!r}); move w or the contour"
        )
    raise NonIntegerResidueError(
        f"argument-principle value {val!r} did not settle on an integer by M = {M_CAP}"
    )


def valence_at(f, w, rho=DEFAULT_RHO, M=None):
    """Number of solutions of f(z) = w in |z| < rho, with multiplicity."""
    M = default_angular(f.degree) if M is None else int(M)
    contour = Contour(f, rho)
    counts, info = _settle(contour, [w], M)
    if info is not None:
        _raise(f, rho, info)
    return int(counts[0])


def root_oracle_count(coeffs, w, rho=DEFAULT_RHO):
    """Count of roots of p - w inside |z| < rho by Aberth-Ehrlich (degree <= 64)."""
    c = np.array(coeffs, dtype=np.complex128)
    if c.size - 1 > 64:
        raise ParameterError("root oracle is limited to degree <= 64")
    c[0] -= w
    return count_inside(c, rho)


@dataclass
class ValenceProfile:
    R: float
    radii: list
    angles: list
    w: list
    counts: list
    mean_valence: float
    n_bound: float
    check_value: float
    rho: float
    perturbed: int = 0
    conventions: dict = field(
        default_factory=lambda: {"mean_valence": "(1/pi) * integral_{|w|<R} n(w) dA(w)"}
    )

    def to_dict(self):
        d = asdict(self)
        d["w"] = [[z.real, z.imag] for z in self.w]
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    def to_csv(self):
        rows = [{"w_re": z.real, "w_im": z.imag, "count": int(c)} for z, c in zip(self.w, self.counts)]
        return write_csv("valence.grid", ["w_re", "w_im", "count"], rows)


def polar_grid(R, n_radii=GRID_RADII, n_angles=GRID_ANGLES, seed=0):
    """Midpoint radii times equispaced angles with a seeded rotation per radius.

    Returns (radii, angle array of shape (n_radii, n_angles)). Rotating each
    ring as a whole keeps the angular rule exact while moving nodes off
    critical values.
    """
    if R <= 0:
        raise ParameterError("R must be positive")
    radii = (np.arange(n_radii) + 0.5) * R / n_radii
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))
    shift = rng.random(n_radii) * 2 * np.pi / n_angles
    angles = 2 * np.pi * np.arange(n_angles)[None, :] / n_angles + shift[:, None]
    return radii, angles


def mean_valence(f, R, w_grid=None, *, rho=DEFAULT_RHO, M=None, seed=0):
    """(1/pi) * integral over |w| < R of n(w), by the midpoint rule in r and trapezoid in angle.

    ``w_grid`` is ``(radii, angles)`` as returned by :func:`polar_grid`.
    Nodes that hit a critical value are moved by half an angular step.
    """
    radii, angles = polar_grid(R, seed=seed) if w_grid is None else w_grid
    radii = np.asarray(radii, dtype=float)
    angles = np.asarray(angles, dtype=float)
    M = default_angular(f.degree) if M is None else int(M)
    half = math.pi / angles.shape[1]
    ws = (radii[:, None] * np.exp(1j * angles)).ravel()
    contour = Contour(f, rho)
    counts, info = _settle(contour, ws, M)
    perturbed = 0
    if info is not None:
        # retry unresolved nodes once, each moved by half an angular step
        bad = np.flatnonzero(counts < 0)
        for i in bad:
            ws[i] = ws[i] * np.exp(1j * half)
        sub, info2 = _settle(contour, ws[bad], M)
        if info2 is not None:
            _raise(f, rho, (info2[0], int(bad[info2[1]]), info2[2]))
        counts[bad] = sub
        perturbed = int(bad.size)
    grid_counts = counts.reshape(radii.size, -1)
    dr = R / radii.size
    dphi = 2 * np.pi / angles.shape[1]
    ring = grid_counts.sum(axis=1) * dphi * radii * dr
    value = math.fsum(ring.tolist()) / math.pi
    n_bound = float(f.degree)
    return ValenceProfile(
        R=float(R),
        radii=radii.tolist(),
        angles=angles.tolist(),
        w=[complex(z) for z in ws],
        counts=[int(c) for c in counts],
        mean_valence=value,
        n_bound=n_bound,
        check_value=n_bound * R * R,
        rho=rho,
        perturbed=perturbed,
    )


@dataclass
class ValenceCertificate:
    n_claim: float
    passed: bool
    rows: list

    def to_dict(self):
        return asdict(self)


def certify_mean_valent(f, n_claim, R_list, **kw):
    """Check p(R) <= n_claim * R^2 (1 + 1e-6) + 1e-9 for every R in ``R_list``."""
    if n_claim <= 0:
        raise ParameterError("n_claim must be positive")
    rows = []
    for R in R_list:
        prof = mean_valence(f, R, **kw)
        bound = n_claim * R * R * (1 + 1e-6) + 1e-9
        rows.append({"R": float(R), "mean_valence": prof.mean_valence, "bound": bound,
                     "ok": prof.mean_valence <= bound})
    return ValenceCertificate(float(n_claim), all(r["ok"] for r in rows), rows)
