"""Sweeps that evaluate each inequality's ratio over a function family.

A sweep produces one row per family member, in n_list order, plus an
optional :class:`GrowthFit` of the model C * n^beta * (log n)^gamma. The
``n`` fed to every bound is the member's certified valence bound (its
degree); for lacunary P_m the rows record both 2^m and the term count m.
"""
from __future__ import annotations

import functools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import norms
from .errors import HypothesisError, ParameterError, ZeroOnCircleError
from .functions import (
    Derivative,
    FamilyMember,
    Polynomial,
    cauchy_kernel,
    lacunary_partial_sum,
    power,
    random_family,
)
from .quadrature import (
    CONVENTIONS,
    DEFAULT_G,
    DEFAULT_J,
    DiskQuadrature,
    RadialPanels,
    annulus_integral,
    circle_integrand,
    circle_mean,
    default_angular,
    disk_integral,
    inner_disk_integral,
    with_error,
)
from .tables import write_csv

THEOREMS = ("1", "1-sup", "2", "3", "pommerenke", "lemma32")
FAMILIES = ("power", "lacunary", "clustered-blaschke", "uniform-blaschke", "random-polynomial", "constant")
G_CHOICES = ("1", "cauchy", "randpoly")


def thread_count():
    """Worker threads for row-parallel sweeps, capped by BERNLAB_THREADS."""
    cap = os.environ.get("BERNLAB_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ParameterError(f"BERNLAB_THREADS must be an integer, got {cap!r}")
    return n


def _ordered_map(fn, items, threads=None):
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# -- growth fits ---------------------------------------------------------------


@dataclass
class GrowthFit:
    C: float
    beta: float
    gamma: float
    fixed: dict
    residual: float
    n_points: int
    model: str = "C*n^beta*(log n)^gamma"

    def to_dict(self):
        return asdict(self)


def fit_growth(points, fixed=None):
    """Least squares for log y = log C + beta log n + gamma log log n.

    Parameters
    ----------
    points : iterable of (n, y)
        At least three points with n >= 2 and y > 0.
    fixed : dict or iterable, optional
        Parameters held fixed: a mapping such as ``{"beta": 0.0}``, or names
        (held at 0).
    """
    if fixed is None:
        fixed = {}
    elif not isinstance(fixed, dict):
        fixed = {name: 0.0 for name in fixed}
    unknown = set(fixed) - {"beta", "gamma"}
    if unknown:
        raise ParameterError(f"only beta and gamma can be fixed, got {sorted(unknown)}")
    pts = [(float(n), float(y)) for n, y in points]
    if len(pts) < 3:
        raise ParameterError(f"fit_growth needs at least 3 points, got {len(pts)}")
    n = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.any(n < 2) or np.any(y <= 0) or not np.all(np.isfinite(y)):
        raise ParameterError("fit_growth needs n >= 2 and finite y > 0")
    ln, lln, ly = np.log(n), np.log(np.log(n)), np.log(y)
    target = ly - fixed.get("beta", 0.0) * ln - fixed.get("gamma", 0.0) * lln
    cols, names = [np.ones_like(ln)], ["logC"]
    if "beta" not in fixed:
        cols.append(ln)
        names.append("beta")
    if "gamma" not in fixed:
        cols.append(lln)
        names.append("gamma")
    A = np.column_stack(cols)
    if np.linalg.matrix_rank(A) < A.shape[1]:
        raise ParameterError("degenerate design matrix: too few distinct n for the free parameters")
    coef, *_ = np.linalg.lstsq(A, target, rcond=None)
    vals = dict(zip(names, coef.tolist()))
    beta = float(fixed.get("beta", vals.get("beta", 0.0)))
    gamma = float(fixed.get("gamma", vals.get("gamma", 0.0)))
    logC = float(vals["logC"])
    pred = logC + beta * ln + gamma * lln
    return GrowthFit(math.exp(logC), beta, gamma, {k: float(v) for k, v in fixed.items()},
                     float(np.max(np.abs(pred - ly))), len(pts))


# -- configuration and families ------------------------------------------------


def parse_n_list(text):
    """``"a..b"`` integer range, ``"2^a..2^b"`` powers of two, or ``"n1,n2,..."``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (s.strip() for s in text.split("..", 1))
            if lo.startswith("2^") and hi.startswith("2^"):
                return [2**k for k in range(int(lo[2:]), int(hi[2:]) + 1)]
            return list(range(int(lo), int(hi) + 1))
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ParameterError(f"cannot parse n list {text!r}") from None


def default_n_list(family):
    return list(range(4, 14)) if family == "lacunary" else [2**k for k in range(4, 13)]


@dataclass
class SweepConfig:
    theorem: str
    family: str
    n_list: list = None
    seed: int = 0
    p: float = None
    sigma: float = None
    alpha: float = None
    K: float = None
    g: str = "1"
    r_list: list = field(default_factory=lambda: [0.5, 0.9, 0.99])
    J: int = None
    G: int = None
    M: int = None
    fixed: dict = None

    def __post_init__(self):
        if self.n_list is None:
            self.n_list = default_n_list(self.family)
        self.n_list = [int(n) for n in self.n_list]

    def validate(self):
        if self.theorem not in THEOREMS:
            raise ParameterError(f"unknown theorem {self.theorem!r}; choose from {THEOREMS}")
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if not self.n_list:
            raise ParameterError("n_list is empty")
        if any(b <= a for a, b in zip(self.n_list, self.n_list[1:])):
            raise ParameterError("n_list must be strictly increasing")
        if any(n < 1 for n in self.n_list):
            raise ParameterError("n_list entries must be >= 1")
        return self

    def to_dict(self):
        return asdict(self)


@functools.lru_cache(maxsize=64)
def build_member(family, n, seed=0):
    """Family member with label n; cached so sweeps share extracted coefficients."""
    n = int(n)
    if family == "power":
        return FamilyMember(power(n), n, n)
    if family == "lacunary":
        return FamilyMember(lacunary_partial_sum(n), n, 2**n, terms=n)
    if family in ("clustered-blaschke", "uniform-blaschke", "random-polynomial"):
        return FamilyMember(random_family(family, n, seed), n, n)
    if family == "constant":
        return FamilyMember(Polynomial([1.0]), n, n)
    raise ParameterError(f"unknown family {family!r}")


def make_g(name, seed=0):
    """The H^p multiplier of the B' g sweep."""
    if name == "1":
        return Polynomial([1.0])
    if name == "cauchy":
        return cauchy_kernel(0.5)
    if name == "randpoly":
        return random_family("random-polynomial", 4, seed)
    raise ParameterError(f"unknown g {name!r}; choose from {G_CHOICES}")


def _quad(cfg, n_bound, gamma=0.0):
    radial = RadialPanels(cfg.J or DEFAULT_J, cfg.G or DEFAULT_G)
    return DiskQuadrature(radial, cfg.M or default_angular(n_bound), gamma)


def _angular(cfg, n_bound):
    return cfg.M or default_angular(n_bound)


def _sqrtlog(n):
    return math.sqrt(math.log(n + 1))


def _require(cond, message):
    if not cond:
        raise HypothesisError(message)


# -- results -------------------------------------------------------------------


@dataclass
class SweepResult:
    theorem: str
    config: dict
    columns: list
    rows: list
    fit: GrowthFit = None
    fit_target: str = ""
    fit_skipped: str = ""
    max_ratio_row: int = None
    conventions: dict = field(default_factory=lambda: dict(CONVENTIONS))
    notes: list = field(default_factory=list)

    def to_dict(self):
        d = asdict(self)
        d["fit"] = self.fit.to_dict() if self.fit else None
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    def to_csv(self):
        return write_csv(f"sweep.theorem-{self.theorem}", self.columns, self.rows)

    def plot_svg(self, path, y_column=None):
        """Log-log plot of the fitted quantity with the fitted curve; needs matplotlib."""
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        y_column = y_column or self.fit_target or "ratio"
        xs = [r["n_bound"] for r in self.rows]
        ys = [r[y_column] for r in self.rows]
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.loglog(xs, ys, "o", label=y_column)
        if self.fit:
            grid = np.geomspace(min(xs), max(xs), 100)
            f = self.fit
            ax.loglog(grid, f.C * grid**f.beta * np.log(grid) ** f.gamma, "-",
                      label=f"C={f.C:.3g} beta={f.beta:.3g} gamma={f.gamma:.3g}")
        ax.set_xlabel("n (valence bound)")
        ax.set_title(f"theorem {self.theorem}, {self.config['family']}")
        ax.legend(fontsize=7)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def _finish(theorem, cfg, columns, rows, target, fixed_default, notes=()):
    res = SweepResult(theorem, cfg.to_dict(), columns, rows, fit_target=target, notes=list(notes))
    ratios = [r["ratio"] for r in rows]
    finite = [i for i, v in enumerate(ratios) if math.isfinite(v)]
    if finite:
        res.max_ratio_row = max(finite, key=lambda i: ratios[i])
        for i, r in enumerate(rows):
            r["max_ratio"] = i == res.max_ratio_row
    if len(rows) < 3:
        res.fit_skipped = f"{len(rows)} point(s); a fit needs at least 3"
    else:
        pts = [(r["n_bound"], r[target]) for r in rows]
        if any(n < 2 or not y > 0 for n, y in pts):
            res.fit_skipped = f"nonpositive {target} or n < 2"
        else:
            res.fit = fit_growth(pts, cfg.fixed if cfg.fixed is not None else fixed_default)
    return res


def _members(cfg):
    return [build_member(cfg.family, n, cfg.seed) for n in cfg.n_list]


# -- sweeps --------------------------------------------------------------------


def sweep_theorem1(cfg):
    """Rows (n, integral |f'| dA, ||f||_{H^p}, ratio against sqrt(log(n+1)) ||f||_{H^p})."""
    cfg.validate()
    _require(cfg.p is not None and cfg.p > 1, "p > 1 required (Theorem 1.3)")

    def row(m):
        rep = norms.bergman_deriv_norm(m.f, 1, _quad(cfg, m.n_bound))
        hp = norms.hardy_norm(m.f, cfg.p, _angular(cfg, m.n_bound)).value
        lhs = rep.value
        return {
            "n": m.label, "n_bound": m.n_bound, "terms": m.terms, "lhs": lhs,
            "lhs_error": rep.error_estimate, "hp_norm": hp, "lhs_over_hp": lhs / hp if hp else 0.0,
            "ratio": lhs / (_sqrtlog(m.n_bound) * hp) if hp else 0.0,
        }

    rows = _ordered_map(row, _members(cfg))
    cols = ["n", "n_bound", "terms", "lhs", "lhs_error", "hp_norm", "lhs_over_hp", "ratio"]
    return _finish("1", cfg, cols, rows, "lhs_over_hp", {"beta": 0.0})


def sweep_theorem1_disk_sup(cfg):
    """Rows (n, ||f'||^p_{A^p}, ||f||^p_{H^inf}, ratio against n^(p-1), or sqrt(log(n+1)) at p = 1)."""
    cfg.validate()
    p = 1.0 if cfg.p is None else cfg.p
    _require(1 <= p <= 2, "1 <= p <= 2 required (Theorem 1.1 on the disk)")

    def row(m):
        rep = norms.bergman_deriv_norm(m.f, p, _quad(cfg, m.n_bound))
        ap = rep.diagnostics["integral"]
        sup = norms.max_modulus(m.f, 1.0, _angular(cfg, m.n_bound))
        supp = sup**p
        bound = m.n_bound ** (p - 1) if p > 1 else _sqrtlog(m.n_bound)
        ratio = ap / (bound * supp) if supp > 0 else 0.0
        return {
            "n": m.label, "n_bound": m.n_bound, "terms": m.terms, "ap_integral": ap,
            "ap_error": rep.diagnostics["integral_error"], "hinf_p": supp,
            "ap_over_hinf": ap / supp if supp > 0 else 0.0, "bound": bound, "ratio": ratio,
        }

    rows = _ordered_map(row, _members(cfg))
    cols = ["n", "n_bound", "terms", "ap_integral", "ap_error", "hinf_p", "ap_over_hinf", "bound", "ratio"]
    fixed = {"gamma": 0.0} if p > 1 else {"beta": 0.0}
    return _finish("1-sup", cfg, cols, rows, "ap_over_hinf", fixed)


def theorem2_regime(p, sigma, alpha):
    """Check the hypotheses and return (regime, description)."""
    _require(p is not None and p > 1, "p > 1 required (Theorem 1.4)")
    _require(alpha is not None and 0 < alpha < 0.5, "0 < alpha < 1/2 required (Theorem 1.4)")
    _require(sigma is not None and 0 < sigma < 2, "0 < sigma < 2 required (Theorem 1.4)")
    threshold = 2 * sigma / (2 - sigma)
    if p >= threshold:
        return 1, f"p >= 2 sigma/(2 - sigma) = {threshold:g}"
    _require(sigma < p / (alpha * p + 1),
             f"sigma < p/(alpha p + 1) = {p / (alpha * p + 1):g} required when p < 2 sigma/(2 - sigma)")
    return 2, f"p < 2 sigma/(2 - sigma) = {threshold:g}"


def lambda_policy(regime, n, p, sigma, alpha):
    """lambda of the proof, and whether both conditions p >= (2 - lambda) sigma/(2 - sigma), p(1 - 2 alpha) > lambda hold."""
    if regime == 1:
        lam = 1.0 / math.log(n) if n > 1 else float("inf")
    else:
        lam = 2.0 - p * (2.0 - sigma) / sigma
    c1 = p >= (2 - lam) * sigma / (2 - sigma) - 1e-12
    c2 = p * (1 - 2 * alpha) > lam
    return lam, c1, c2


def sweep_theorem2(cfg):
    """Rows (n, ||f||^sigma_{B}, ||f||^sigma_{H^p}, ratio against the regime's bound, lambda diagnostics)."""
    cfg.validate()
    regime, why = theorem2_regime(cfg.p, cfg.sigma, cfg.alpha)
    p, s, a = cfg.p, cfg.sigma, cfg.alpha

    def row(m):
        n = m.n_bound
        rep = norms.besov_seminorm(m.f, s, a, _quad(cfg, n, (1 - a) * s - 1))
        bes = rep.diagnostics["integral"]
        hp = norms.hardy_norm(m.f, p, _angular(cfg, n)).value ** s
        if regime == 1:
            bound = n ** (a * s) * math.log(n) ** (s / 2) if n > 1 else 0.0
        else:
            bound = n ** (a * s + s / p + s / 2 - 1)
        lam, c1, c2 = lambda_policy(regime, n, p, s, a)
        return {
            "n": m.label, "n_bound": n, "terms": m.terms, "besov_sigma": bes,
            "besov_error": rep.diagnostics["integral_error"], "hp_sigma": hp,
            "besov_over_hp": bes / hp if hp else 0.0, "bound": bound,
            "ratio": bes / (bound * hp) if bound > 0 and hp > 0 else float("inf") if bes > 0 else 0.0,
            "regime": regime, "lambda": lam, "hos_holder": c1, "hos_integrable": c2,
        }

    rows = _ordered_map(row, _members(cfg))
    cols = ["n", "n_bound", "terms", "besov_sigma", "besov_error", "hp_sigma", "besov_over_hp",
            "bound", "ratio", "regime", "lambda", "hos_holder", "hos_integrable"]
    return _finish("2", cfg, cols, rows, "besov_over_hp", {"gamma": 0.0}, [f"regime {regime}: {why}"])


def _bprime_g(B, g):
    trivial = isinstance(g, Polynomial) and g.degree == 0

    def on_circle(r, M):
        d = B.circle_values(r, M, deriv=True)
        if trivial:
            return np.abs(d) * abs(g.coeffs()[0])
        return np.abs(d * g.circle_values(r, M))

    return circle_integrand(on_circle)


def sweep_theorem3(cfg):
    """Rows (n, integral |B' g| dA, ||g||_{H^p}, ratio against sqrt(log(n+1)) ||g||_{H^p})."""
    cfg.validate()
    _require(cfg.p is not None and cfg.p > 1, "p > 1 required (Theorem 1.5)")
    if cfg.family not in ("power", "clustered-blaschke", "uniform-blaschke"):
        raise ParameterError("Theorem 1.5 needs a Blaschke family (power, clustered-blaschke, uniform-blaschke)")
    g = make_g(cfg.g, cfg.seed)
    gp = norms.hardy_norm(g, cfg.p).value

    def row(m):
        q = _quad(cfg, m.n_bound)
        lhs, err = with_error(disk_integral, _bprime_g(m.f, g), q)
        return {
            "n": m.label, "n_bound": m.n_bound, "lhs": lhs, "lhs_error": err, "g_hp_norm": gp,
            "lhs_over_g": lhs / gp, "ratio": lhs / (_sqrtlog(m.n_bound) * gp),
        }

    rows = _ordered_map(row, _members(cfg))
    cols = ["n", "n_bound", "lhs", "lhs_error", "g_hp_norm", "lhs_over_g", "ratio"]
    return _finish("3", cfg, cols, rows, "lhs_over_g", {"beta": 0.0}, [f"g = {cfg.g}"])


def sweep_pommerenke(cfg):
    """Rows (n, mixed norm, n^(p/2) ||f||^p_{H^p}, ratio)."""
    cfg.validate()
    p = 1.0 if cfg.p is None else cfg.p
    _require(1 <= p < 2, "1 <= p < 2 required (Pommerenke inequality)")

    def row(m):
        rep = norms.pommerenke_mixed_norm(m.f, p, _angular(cfg, m.n_bound))
        hp = norms.hardy_norm(m.f, p, _angular(cfg, m.n_bound)).value ** p
        bound = m.n_bound ** (p / 2) * hp
        return {
            "n": m.label, "n_bound": m.n_bound, "terms": m.terms, "mixed_norm": rep.value,
            "mixed_error": rep.error_estimate, "hp_p": hp, "mixed_over_hp": rep.value / hp if hp else 0.0,
            "bound": bound, "ratio": rep.value / bound if bound else 0.0,
        }

    rows = _ordered_map(row, _members(cfg))
    cols = ["n", "n_bound", "terms", "mixed_norm", "mixed_error", "hp_p", "mixed_over_hp", "bound", "ratio"]
    return _finish("pommerenke", cfg, cols, rows, "mixed_over_hp", {"gamma": 0.0})


def check_lemma32(f, p, n_bound, r_list, M=None):
    """Rows (r, integral |f'(re^it)| dt, n^(1/2) ||f||_{H^p} / (1 - r)^(1/p), ratio)."""
    _require(1 <= p < 2, "1 <= p < 2 required (Lemma 3.1)")
    M = M or default_angular(n_bound)
    hp = norms.hardy_norm(f, p, M).value
    rows = []
    for r in r_list:
        if not 0 <= r < 1:
            raise ParameterError(f"r must lie in [0, 1), got {r}")
        lhs = 2 * math.pi * circle_mean(Derivative(f), r, 1.0, M)
        bound = math.sqrt(n_bound) * hp / (1 - r) ** (1 / p)
        rows.append({"r": float(r), "lhs": lhs, "bound": bound, "ratio": lhs / bound if bound else 0.0})
    if rows:
        best = max(range(len(rows)), key=lambda i: rows[i]["ratio"])
        for i, row in enumerate(rows):
            row["max_ratio"] = i == best
    return rows


def sweep_lemma32(cfg):
    """check_lemma32 over the family: one row per (n, r)."""
    cfg.validate()
    p = 1.5 if cfg.p is None else cfg.p

    def rows_for(m):
        out = check_lemma32(m.f, p, m.n_bound, cfg.r_list, _angular(cfg, m.n_bound))
        for r in out:
            r.update({"n": m.label, "n_bound": m.n_bound, "terms": m.terms})
        return out

    rows = [r for block in _ordered_map(rows_for, _members(cfg)) for r in block]
    cols = ["n", "n_bound", "terms", "r", "lhs", "bound", "ratio"]
    res = SweepResult("lemma32", cfg.to_dict(), cols, rows, fit_skipped="no growth model for this table")
    if rows:
        res.max_ratio_row = max(range(len(rows)), key=lambda i: rows[i]["ratio"])
        for i, r in enumerate(rows):
            r["max_ratio"] = i == res.max_ratio_row
    return res


SWEEPS = {
    "1": sweep_theorem1,
    "1-sup": sweep_theorem1_disk_sup,
    "2": sweep_theorem2,
    "3": sweep_theorem3,
    "pommerenke": sweep_pommerenke,
    "lemma32": sweep_lemma32,
}


def run_sweep(cfg):
    cfg.validate()
    return SWEEPS[cfg.theorem](cfg)


# -- Hayman witness --------------------------------------------------------------


@dataclass
class HaymanWitness:
    found: bool
    r: float
    lam: float
    n_bound: float
    r_tilde: float
    lhs: float
    rhs: float
    ratio: float
    min_ratio: float
    candidates: int
    refined: bool
    perturbed: bool

    def to_dict(self):
        return asdict(self)


def hayman_witness_search(f, r, lam, n_bound, M=None):
    """Search r~ in [2r - 1, r] with hayman_lhs(f, r~, lam) <= 4 n M(r, f)^lam / (lam (1 - r)).

    Scans 64 equispaced candidates, then once more on an 8x finer grid
    around the best one. Zeros of f on a candidate circle are avoided by
    the 2**-30 radius perturbation of :func:`~bernlab.norms.hayman_lhs`.
    """
    if not 0.5 < r < 1:
        raise ParameterError(f"r must lie in (1/2, 1), got {r}")
    if not 0 < lam < 2:
        raise ParameterError(f"lambda must lie in (0, 2), got {lam}")
    M = M or default_angular(max(1, int(n_bound)))
    rhs = 4 * n_bound * norms.max_modulus(f, r, M) ** lam / (lam * (1 - r))
    lo = 2 * r - 1
    perturbed = False

    def lhs_at(rt):
        nonlocal perturbed
        try:
            return norms.hayman_lhs(f, rt, lam, M)
        except ZeroOnCircleError:
            perturbed = True
            return norms.hayman_lhs(f, rt, lam, M, perturb=True)

    def scan(cands):
        best = None
        for rt in cands:
            if rt <= 0:
                continue
            val = lhs_at(rt)
            ratio = val / rhs if rhs > 0 else (0.0 if val == 0 else float("inf"))
            if best is None or ratio < best[2]:
                best = (rt, val, ratio)
            if ratio <= 1:
                return (rt, val, ratio), best
        return None, best

    step = (r - lo) / 63
    cands = [lo + i * step for i in range(64)]
    hit, best = scan(cands)
    refined = False
    if hit is None and best is not None:
        refined = True
        fine = [min(r, max(lo, best[0] + i * step / 8)) for i in range(-8, 9)]
        hit, best2 = scan(fine)
        if best2 is not None and best2[2] < best[2]:
            best = best2
    count = 64 + (17 if refined else 0)
    if hit is not None:
        rt, val, ratio = hit
        return HaymanWitness(True, r, lam, n_bound, rt, val, rhs, ratio, best[2], count, refined, perturbed)
    rt, val, ratio = best if best else (float("nan"),) * 3
    return HaymanWitness(False, r, lam, n_bound, rt, val, rhs, ratio, ratio, count, refined, perturbed)


# -- split radius ----------------------------------------------------------------


@dataclass
class SplitDiagnostic:
    n_bound: float
    K: float
    r_split: float
    inner: float
    annulus: float
    total: float
    full: float
    hp_norm: float
    inner_ratio: float

    def to_dict(self):
        return asdict(self)


def split_radius_diagnostic(f, p, K, n_bound=None, quad=None):
    """integral |f'| dA over |z| < 1 - 1/n^K and over the complementary annulus."""
    if K <= 0:
        raise ParameterError("K must be positive")
    n = float(n_bound if n_bound is not None else max(f.degree, 1))
    q = quad or DiskQuadrature(M=default_angular(int(n)))
    h = norms.abs_power(f, 1.0, deriv=True)
    r_split = 1.0 - n ** (-K) if n > 1 else 0.0
    full = disk_integral(h, q)
    if r_split >= 1.0:
        inner, ann = full, 0.0
    elif r_split <= 0.0:
        inner, ann = 0.0, full
    else:
        inner = inner_disk_integral(h, q, r_split)
        ann = annulus_integral(h, q, r_split)
    hp = norms.hardy_norm(f, p).value
    ratio = inner / (_sqrtlog(n) * hp) if hp > 0 else 0.0
    return SplitDiagnostic(n, K, r_split, inner, ann, inner + ann, full, hp, ratio)
