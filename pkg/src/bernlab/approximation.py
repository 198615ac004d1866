"""Polynomial approximation in H^2 and the dyadic machinery around it.

Best rational approximation R_n(f) is not computed anywhere: every series
uses the best polynomial approximation E_n(f, H^2) (the Parseval tail),
which bounds R_n from above since polynomials are rational functions.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from . import norms
from .errors import ConstructionError, ParameterError
from .functions import LacunarySeries, Polynomial, lacunary_partial_sum
from .quadrature import DiskQuadrature, band_integral
from .tables import write_csv

SUPPORT_CAP = 1 << 20
DIRECT_BLOCK_MAX = 4
TRACE_KMAX = 4
RATE_MARGIN = 0.1
_E_FLOOR = math.sqrt(np.finfo(float).tiny / np.finfo(float).eps)
NOTE_EN = "R_n is replaced by its upper bound E_n (best polynomial approximation in H^2)"


class CoeffFunction:
    """Taylor coefficients a_0..a_N (N <= 2**20) plus an optional exact tail mass.

    ``tail_mass`` is sum_{k > N} |a_k|^2 for functions whose coefficients
    continue past the stored support (e.g. geometric or lacunary series).
    """

    def __init__(self, coeffs, *, lacunary=False, tail_mass=0.0, label=""):
        c = np.asarray(coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=np.complex128)
        if c.size - 1 > SUPPORT_CAP:
            raise ParameterError(f"coefficient support exceeds 2**20 (N = {c.size - 1})")
        if tail_mass < 0 or not math.isfinite(tail_mass):
            raise ParameterError("tail_mass must be finite and nonnegative")
        nz = np.flatnonzero(c)
        if lacunary and any(k & (k - 1) or k == 0 for k in nz.tolist()):
            raise ParameterError("lacunary flag set but a coefficient sits off the exponents 2**k")
        self.coeffs = c
        self.lacunary = bool(lacunary)
        self.tail_mass = float(tail_mass)
        self.label = label
        # E_n^2 = sum_{k > n} |a_k|^2 + tail, for n = 0..N
        sq = np.abs(c) ** 2
        rev = np.cumsum(sq[::-1])[::-1]
        self._tails = np.append(rev[1:], 0.0) + self.tail_mass

    @property
    def N(self):
        return self.coeffs.size - 1

    @classmethod
    def geometric(cls, q, N):
        """a_k = q**k, k = 0..N, with the exact tail beyond N."""
        q2 = abs(q) ** 2
        if q2 >= 1:
            raise ParameterError("geometric coefficients need |q| < 1")
        return cls(q ** np.arange(N + 1, dtype=float), tail_mass=q2 ** (N + 1) / (1 - q2),
                   label=f"geometric q={q}")

    @classmethod
    def from_lacunary(cls, terms, N=None, tail_mass=0.0, label=""):
        """Dense coefficients from terms [(k, a_k)] at exponents 2**k."""
        top = max((2**k for k, _ in terms), default=0)
        N = top if N is None else N
        c = np.zeros(N + 1, dtype=np.complex128)
        extra = 0.0
        for k, a in terms:
            if 2**k <= N:
                c[2**k] = a
            else:
                extra += abs(a) ** 2
        return cls(c, lacunary=True, tail_mass=tail_mass + extra, label=label)

    def lacunary_terms(self):
        idx = np.flatnonzero(self.coeffs)
        return [(int(k).bit_length() - 1, complex(self.coeffs[k])) for k in idx]

    def h2_norm_squared(self):
        return float(self._tails[0] + abs(self.coeffs[0]) ** 2)

    def E(self, n):
        """Best polynomial approximation E_n(f, H^2) for integer n or an array of them.

        Exact for n <= N. Beyond the stored support only the total tail mass
        is known, so n > N returns its square root, an upper bound for E_n.
        """
        n = np.asarray(n)
        if np.any(n < 0):
            raise ParameterError("n must be nonnegative")
        idx = np.minimum(n, self.N)
        tails = np.where(n >= self.N, self.tail_mass, self._tails[idx])
        out = np.sqrt(np.maximum(tails, 0.0))
        return float(out) if out.ndim == 0 else out

    def truncate(self, n):
        """f_n, the degree-n Taylor section, as coefficients."""
        return self.coeffs[: min(n, self.N) + 1].copy()

    def to_function(self, n=None):
        """The (truncated) stored polynomial as an AnalyticFunction."""
        c = self.coeffs if n is None else self.truncate(n)
        if self.lacunary and c[0] == 0:
            nz = np.flatnonzero(c)
            return LacunarySeries([(int(k).bit_length() - 1, c[k]) for k in nz])
        return Polynomial(c)


def best_poly_approx_h2(f, n):
    """E_n(f, H^2) = (sum_{k > n} |a_k|^2)^{1/2}, exact by Parseval."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    return f.E(int(n))


# -- dyadic block sums ---------------------------------------------------------


@dataclass
class BlockSum:
    m: int
    value: float
    method: str
    integral: float

    def __float__(self):
        return self.value


def dyadic_block_sum(m):
    """sum_{n = 2^(2^(m-1))}^{2^(2^m)} 1/(n sqrt(log n)).

    Exact summation for m <= 4 (upper limit 2**16); beyond that the
    integral 2 sqrt(log t) plus Euler-Maclaurin endpoint corrections, whose
    neglected remainder is below 1e-15 relative at these magnitudes.
    """
    if m < 1:
        raise ParameterError("m must be >= 1")
    lo_log = 2.0 ** (m - 1) * math.log(2.0)
    hi_log = 2.0**m * math.log(2.0)
    integral = 2.0 * (math.sqrt(hi_log) - math.sqrt(lo_log))
    if m <= DIRECT_BLOCK_MAX:
        n = np.arange(2 ** (2 ** (m - 1)), 2 ** (2**m) + 1, dtype=np.float64)
        return BlockSum(m, math.fsum((1.0 / (n * np.sqrt(np.log(n)))).tolist()), "direct", integral)
    # both endpoints are >= 2**16, so g and its derivatives are exact enough in logs
    a, b = lo_log, hi_log  # log of the endpoints

    def g_log(L):
        return math.exp(-L) / math.sqrt(L)

    def dg_log(L):
        # d/dx of 1/(x sqrt(log x)) = -(1 + 1/(2 log x)) / (x^2 sqrt(log x))
        return -(1.0 + 0.5 / L) * math.exp(-2 * L) / math.sqrt(L)

    value = integral + 0.5 * (g_log(a) + g_log(b)) + (dg_log(b) - dg_log(a)) / 12.0
    return BlockSum(m, value, "euler-maclaurin", integral)


# -- inverse series diagnosis -------------------------------------------------


@dataclass
class SeriesDiagnosis:
    verdict: str
    model: str
    rate: float
    residual: float
    partial_sum: float
    extrapolated_sum: float
    n_max: int
    weight: str
    block_sums: list
    partial_sums_dyadic: list
    fits: dict
    note: str = NOTE_EN

    def to_dict(self):
        return asdict(self)


def _fit_line(x, y):
    A = np.column_stack((np.ones_like(x), x))
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.max(np.abs(A @ coef - y)))
    return float(coef[0]), float(coef[1]), resid


def _weights(n, weight, p, phi):
    n = n.astype(float)
    if weight == "sqrtlog":
        w = 1.0 / (n * np.sqrt(np.log(n)))
    elif weight == "power":
        if p is None or p <= 0:
            raise ParameterError("weight 'power' needs p > 0")
        w = n ** (-1.0 / p)
    else:
        raise ParameterError(f"unknown weight {weight!r} (expected 'sqrtlog' or 'power')")
    if phi is not None:
        w = w * np.asarray(phi.values(n), dtype=float)
    return w


def inverse_series_test(f, weight="sqrtlog", *, p=None, phi=None, n_max=None):
    """Diagnose convergence of sum_{n >= 2} E_n(f) w(n) [phi(n)].

    ``weight`` is ``"sqrtlog"`` for w(n) = 1/(n sqrt(log n)) or ``"power"``
    for w(n) = n^(-1/p). Terms are summed to n = N. The tail is fitted
    with three models: dyadic block sums B_k against rho^k and k^(-s), and
    raw terms against rho^n. The best-fitting model decides: "converges"
    if its log residual is < 0.1 and the rate clears the boundary by a
    margin (s > 1.1, block rho < 2^-0.1, or three decades of raw decay
    across the fitted window); otherwise
    "diverges" if the partial sum exceeds 10x the first dyadic block, else
    "inconclusive".
    """
    N = f.N if n_max is None else min(int(n_max), f.N)
    wname = weight + ("*phi" if phi is not None else "")
    if N < 2:
        raise ParameterError("need coefficients up to at least n = 2")
    n = np.arange(2, N + 1)
    t = f.E(n) * _weights(n, weight, p, phi)
    S = np.cumsum(t)
    total = math.fsum(t.tolist())
    kmax = int(math.floor(math.log2(N + 1))) - 1
    blocks = [math.fsum(t[(n >= 2**k) & (n < 2 ** (k + 1))].tolist()) for k in range(1, kmax + 1)]
    dyadic = [float(S[min(2 ** (k + 1) - 1, N) - 2]) for k in range(1, kmax + 1)]

    def result(verdict, model, rate, resid, extrap, fits):
        return SeriesDiagnosis(verdict, model, rate, resid, total, extrap, N, wname,
                               blocks, dyadic, fits)

    if total == 0.0:
        return result("converges", "zero", 0.0, 0.0, 0.0, {})
    # E_n^2 near the subnormal range has lost its digits; such terms do not enter the fits
    sig = f.E(n) >= _E_FLOOR
    pos = np.flatnonzero((t > 0) & sig)
    if pos.size == 0 or pos[-1] < (N - 2) // 2:
        return result("converges", "finite-support", 0.0, 0.0, total, {})

    fits = {}
    kb = np.arange(1, kmax + 1, dtype=float)
    bpos = np.array(blocks) > 0
    half = kb >= max(1.0, kmax / 2)
    sel = half & bpos
    if np.count_nonzero(sel) >= 4:
        a, slope, res = _fit_line(kb[sel], np.log(np.array(blocks)[sel]))
        fits["block-geometric"] = {"rho": math.exp(slope), "residual": res}
        a2, slope2, res2 = _fit_line(np.log(kb[sel]), np.log(np.array(blocks)[sel]))
        fits["block-power"] = {"s": -slope2, "residual": res2}
    tail = pos[pos >= pos[-1] // 2]
    if tail.size >= 4:
        a3, slope3, res3 = _fit_line(n[tail].astype(float), np.log(t[tail]))
        fits["term-geometric"] = {"rho": math.exp(slope3), "residual": res3}
    if not fits:
        return result("inconclusive", "none", float("nan"), float("inf"), total, fits)

    name = min(fits, key=lambda k: fits[k]["residual"])
    fit = fits[name]
    last_block = blocks[-1] if blocks else float(t[-1])
    # rates must clear the convergence boundary by a margin: a fit with s = 1.04 over a
    # dozen dyadic blocks cannot tell k^-1 (divergent) from k^-1.04
    if name == "block-power":
        rate = fit["s"]
        ok = rate > 1 + RATE_MARGIN
        extrap = total + (last_block * kmax / (rate - 1) if rate > 1 else float("inf"))
    elif name == "block-geometric":
        rate = fit["rho"]
        ok = rate < 2.0**-RATE_MARGIN
        extrap = total + (last_block * rate / (1 - rate) if rate < 1 else float("inf"))
    else:
        rate = fit["rho"]
        ok = rate < 1 and tail.size * math.log(rate) < math.log(1e-3)
        last = float(t[-1])
        extrap = total + (last * rate / (1 - rate) if rate < 1 else float("inf"))
    if ok and fit["residual"] < 0.1:
        verdict = "converges"
    elif blocks and total > 10 * blocks[0]:
        verdict = "diverges"
    else:
        verdict = "inconclusive"
    return result(verdict, name, rate, fit["residual"], extrap, fits)


# -- Lemma on lacunary coefficients -------------------------------------------


@dataclass
class LacunaryTestReport:
    weighted_partial_sums: list
    coefficient_partial_sums: list
    annulus_rows: list
    literal_step_holds: bool
    rigorous_step_holds: bool

    def to_dict(self):
        return asdict(self)


def _lacunary_input(f):
    if isinstance(f, LacunarySeries):
        return [(int(k), complex(a)) for k, a in f.terms], f
    if isinstance(f, CoeffFunction):
        if not f.lacunary:
            raise ParameterError("lemma_lac_test needs lacunary exponent structure")
        terms = f.lacunary_terms()
        return terms, (LacunarySeries(terms) if terms else None)
    raise ParameterError("lemma_lac_test takes a LacunarySeries or a lacunary CoeffFunction")


def lacunary_norm_ratios(m_list=range(1, 14), p_list=(1, 4)):
    """Rows (m, p, ||P_m||_{H^p}, sqrt(m), ratio) measuring H^p against H^2 on lacunary P_m.

    Lacunary series have all H^p norms comparable to the H^2 norm, with
    constants depending only on p. The ratios are reported, not bounded.
    """
    rows = []
    for m in m_list:
        if m < 1:
            raise ParameterError(f"m must be >= 1, got {m}")
        P = lacunary_partial_sum(m)
        h2 = math.sqrt(m)
        for p in p_list:
            hp = norms.hardy_norm(P, p).value
            rows.append({"m": int(m), "p": float(p), "hp_norm": hp, "h2_norm": h2, "ratio": hp / h2})
    return rows


def lemma_lac_test(f, k_max=12, quad=None):
    """Partial sums of sum 2^-k |a_k| and sum |a_k|, plus annulus checks for k <= k_max.

    For each k the annulus A_k = {1 - 2^-k <= |z| <= 1 - 2^-(k+1)} gives
    I_k = integral over A_k of |f| dA. Two forms of the coefficient bound are
    reported:

    * literal: 2^-k |a_k| <= (1/2pi) I_k (1 - 2^-k)^(-2^k)
    * rigorous: |a_k| * integral_{A_k} r^(2^k + 1) dr <= (1/2pi) I_k,
      which follows from |a_k| r^(2^k) <= (1/2pi) integral |f(r e^it)| dt
      by integrating r dr across the annulus.
    """
    terms, fn = _lacunary_input(f)
    coeff = {k: abs(a) for k, a in terms}
    top = max(coeff, default=0)
    ks = list(range(1, max(top, k_max) + 1))
    weighted = np.cumsum([2.0**-k * coeff.get(k, 0.0) for k in ks]).tolist()
    plain = np.cumsum([coeff.get(k, 0.0) for k in ks]).tolist()
    rows = []
    for k in range(1, k_max + 1):
        lo, hi = 1.0 - 2.0**-k, 1.0 - 2.0 ** -(k + 1)
        ak = coeff.get(k, 0.0)
        if fn is None:
            I = 0.0
        else:
            q = quad or DiskQuadrature(M=max(4096, 8 * fn.degree))
            h = norms.abs_power(fn, 1.0)
            I = band_integral(h, q, lo, hi)
        scaled = I / (2 * math.pi)
        e = 2**k
        radial = (hi ** (e + 2) - lo ** (e + 2)) / (e + 2)
        lhs = 2.0**-k * ak
        literal = scaled * (1.0 - 2.0**-k) ** (-e)
        rows.append({
            "k": k,
            "abs_a_k": ak,
            "lhs": lhs,
            "annulus_integral": I,
            "literal_bound": literal,
            "literal_holds": lhs <= literal * (1 + 1e-12),
            "rigorous_lhs": ak * radial,
            "rigorous_rhs": scaled,
            "rigorous_holds": ak * radial <= scaled * (1 + 1e-10) + 1e-300,
        })
    return LacunaryTestReport(
        weighted, plain, rows,
        all(r["literal_holds"] for r in rows),
        all(r["rigorous_holds"] for r in rows),
    )


# -- Littlewood construction --------------------------------------------------

_MP_DPS = 40
_PROBE_BITS = 1024


class Phi:
    """Positive nonincreasing phi with evaluation at 2**k for huge integer k."""

    def __init__(self, name, mp_fn):
        self.name = name
        self._mp = mp_fn

    def at_pow2(self, k):
        with mpmath.workdps(_MP_DPS):
            return self._mp(mpmath.mpf(2) ** k)

    def values(self, x):
        """Float evaluation on an array; vectorized for the built-ins."""
        x = np.asarray(x, dtype=float)
        fn = _NUMPY_PHI.get(self.name)
        if fn is not None:
            return fn(x)
        with mpmath.workdps(20):
            return np.array([float(self._mp(mpmath.mpf(v))) for v in x.ravel()]).reshape(x.shape)

    def __call__(self, x):
        return float(self._mp(mpmath.mpf(x)))


_BUILTIN_PHI = {
    "log": lambda x: 1 / mpmath.log(x + 2),
    "sqrtlog": lambda x: 1 / mpmath.sqrt(mpmath.log(x + 2)),
    "loglog": lambda x: 1 / mpmath.log(mpmath.log(x + 16)),
}
_NUMPY_PHI = {
    "log": lambda x: 1 / np.log(x + 2),
    "sqrtlog": lambda x: 1 / np.sqrt(np.log(x + 2)),
    "loglog": lambda x: 1 / np.log(np.log(x + 16)),
}


def make_phi(phi):
    """A :class:`Phi` from a built-in name, an existing Phi, or an mpmath-compatible callable."""
    if isinstance(phi, Phi):
        return phi
    if isinstance(phi, str):
        if phi not in _BUILTIN_PHI:
            raise ParameterError(f"unknown phi {phi!r}; built-ins are {sorted(_BUILTIN_PHI)}")
        return Phi(phi, _BUILTIN_PHI[phi])
    if callable(phi):
        return Phi(getattr(phi, "__name__", "custom"), phi)
    raise ParameterError("phi must be a name or a callable")


def _harmonic(a, b):
    """sum_{k=a}^{b-1} 1/k."""
    return mpmath.digamma(b) - mpmath.digamma(a)


def _harmonic2(a, b):
    """sum_{k=a}^{b-1} 1/k^2."""
    return mpmath.psi(1, a) - mpmath.psi(1, b)


def _min_int(pred, lo):
    """Smallest integer K >= lo with pred(K), for pred monotone; None if none below 2**_PROBE_BITS."""
    if pred(lo):
        return lo
    step = 1
    hi = lo + step
    while not pred(hi):
        lo = hi
        step *= 2
        hi = lo + step
        if hi.bit_length() > _PROBE_BITS:
            return None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass
class CounterexampleReport:
    phi: str
    blocks: list
    levels: list
    head_level: float
    divergent_block_contributions: list
    divergence_partial_sums: list
    convergent_block_bounds: list
    convergent_tail_bounds: list
    h2_mass: float
    series_diagnosis: dict
    certificates: dict
    notes: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), default=str, **kw)

    def to_csv(self):
        """One row per block [K_j, K_{j+1})."""
        rows = [
            {"j": j + 1, "K_lo": self.blocks[j], "K_hi": self.blocks[j + 1], "level": self.levels[j],
             "divergent_contribution": self.divergent_block_contributions[j],
             "divergent_partial_sum": self.divergence_partial_sums[j],
             "convergent_bound": self.convergent_block_bounds[j],
             "convergent_tail_bound": self.convergent_tail_bounds[j]}
            for j in range(len(self.levels))
        ]
        cols = ["j", "K_lo", "K_hi", "level", "divergent_contribution", "divergent_partial_sum",
                "convergent_bound", "convergent_tail_bound"]
        return write_csv("counterexample.blocks", cols, rows)


def littlewood_counterexample(phi="log", J_blocks=6, support=SUPPORT_CAP):
    """Lacunary f = sum psi(j)/j z^(2^j) with divergent sum psi(k)/k and convergent sum psi(k) phi(2^k)/k.

    Blocks [K_j, K_{j+1}) carry a constant level c_j. K_j is minimal with
    phi(2^K_j) <= 2^-j and K_{j+1} >= K_j^2; c_j = min(c_{j-1}, 1/H_j) with
    H_j the harmonic sum over the block, and the block is extended until
    c_j H_j >= 1. Indices below K_1 use level c_1. Coefficients beyond the
    last block are zero.
    """
    if J_blocks < 3:
        raise ParameterError("J_blocks must be >= 3")
    ph = make_phi(phi)
    with mpmath.workdps(_MP_DPS):

        def first_K(j, lo):
            K = _min_int(lambda K: ph.at_pow2(K) <= mpmath.mpf(2) ** -j, lo)
            if K is None:
                raise ConstructionError(
                    f"block {j}: phi(2^K) > 2^-{j} for every K < 2^{_PROBE_BITS}; phi does not decay"
                )
            return K

        K = [first_K(1, 1)]
        levels, H = [], []
        prev = None
        for j in range(1, J_blocks + 1):
            Kn = first_K(j + 1, max(K[-1] ** 2, K[-1] + 1))
            h = _harmonic(K[-1], Kn)
            c = 1 / h if prev is None else min(prev, 1 / h)
            if c * h < 1:
                Kn = _min_int(lambda b: c * _harmonic(K[-1], b) >= 1, Kn)
                if Kn is None:
                    raise ConstructionError(f"block {j}: cannot extend the block to reach mass 1")
                h = _harmonic(K[-1], Kn)
            K.append(Kn)
            levels.append(c)
            H.append(h)
            prev = c

        head = levels[0]
        head_div = head * _harmonic(1, K[0]) if K[0] > 1 else mpmath.mpf(0)
        contrib = [c * h for c, h in zip(levels, H)]
        div_partial = [float(head_div + mpmath.fsum(contrib[: i + 1])) for i in range(len(contrib))]

        def conv_bound(a, b, c):
            # c * sum_{k=a}^{b-1} phi(2^k)/k <= c * (g(a) + integral_a^b g), g decreasing
            g = lambda t: ph.at_pow2(t) / t
            integral = mpmath.quad(lambda u: ph.at_pow2(mpmath.exp(u)), [mpmath.log(a), mpmath.log(b)])
            return c * (g(a) + integral)

        bounds = [conv_bound(K[i], K[i + 1], levels[i]) for i in range(J_blocks)]
        head_conv = conv_bound(1, K[0], head) if K[0] > 1 else mpmath.mpf(0)
        tails = [float(mpmath.fsum(bounds[i + 1:])) for i in range(J_blocks)]

        mass = head**2 * _harmonic2(1, K[0]) if K[0] > 1 else mpmath.mpf(0)
        mass += mpmath.fsum(c**2 * _harmonic2(K[i], K[i + 1]) for i, c in enumerate(levels))

        def level(j):
            if j < K[0]:
                return head
            for i in range(J_blocks):
                if K[i] <= j < K[i + 1]:
                    return levels[i]
            return mpmath.mpf(0)

        jmax = int(math.floor(math.log2(support)))
        terms = [(j, float(level(j) / j)) for j in range(1, jmax + 1) if level(j) > 0]
        stored = mpmath.fsum(mpmath.mpf(a) ** 2 for _, a in terms)
        tail_mass = float(max(mass - stored, 0))

    cf = CoeffFunction.from_lacunary(terms, N=support, tail_mass=tail_mass, label=f"littlewood-{ph.name}")
    diag = inverse_series_test(cf, "sqrtlog", phi=ph)
    certs = {
        "i_divergent_blocks": all(float(x) >= 1 - 1e-9 for x in contrib),
        "ii_convergent_blocks": all(float(b) <= 2.0 ** -(i + 1) for i, b in enumerate(bounds)),
        "iii_h2_finite": bool(mpmath.isfinite(mass)) and float(mass) <= float(head**2) * math.pi**2 / 6 + 1e-12,
        "iv_weighted_series_converges": diag.verdict == "converges",
    }
    report = CounterexampleReport(
        phi=ph.name,
        blocks=[int(k) for k in K],
        levels=[float(c) for c in levels],
        head_level=float(head),
        divergent_block_contributions=[float(x) for x in contrib],
        divergence_partial_sums=div_partial,
        convergent_block_bounds=[float(b) for b in bounds],
        convergent_tail_bounds=tails,
        h2_mass=float(mass),
        series_diagnosis=diag.to_dict(),
        certificates=certs,
        notes=[
            NOTE_EN,
            f"head block [1, {int(K[0])}) at level c_1 adds {float(head_div):.6g} to the divergent "
            f"series and at most {float(head_conv):.6g} to the convergent one",
            f"coefficients stored for j <= {jmax}; the rest enter through the exact tail mass",
        ],
    )
    return cf, report


# -- dyadic scheme trace -------------------------------------------------------


@dataclass
class TraceRow:
    m: int
    lo: int
    hi: int
    mass: float
    hp_norm: float
    a1_deriv: float
    bound_term: float
    ratio: float


@dataclass
class DyadicTrace:
    p: float
    rows: list
    total_mass: float
    block_mass_sum: float
    full_a1_deriv: float
    a1_sum: float
    triangle_holds: bool
    note: str = NOTE_EN

    def to_dict(self):
        return asdict(self)

    def to_csv(self):
        cols = ["m", "lo", "hi", "mass", "hp_norm", "a1_deriv", "bound_term", "ratio"]
        return write_csv("dyadic-trace", cols, self.rows)


def _a1_deriv(c):
    poly = Polynomial(c)
    if poly.degree <= 0:
        return 0.0
    q = DiskQuadrature(M=max(4096, 8 * poly.degree))
    return float(norms.bergman_deriv_norm(poly, 1, q))


def _hp(c, p):
    if not np.any(c):
        return 0.0
    if p == 2:
        return math.sqrt(math.fsum((np.abs(c) ** 2).tolist()))
    poly = Polynomial(c)
    return float(norms.hardy_norm(poly, p, M=max(4096, 8 * poly.degree)))


def dyadic_scheme_trace(f, p=2, k_max=TRACE_KMAX):
    """Rows for u_m = f_{2^(2^m)} - f_{2^(2^(m-1))}, m = 1..k_max, plus the base f_2 (m = 0).

    Each row compares ||u_m'||_{A^1} with 2^(m/2) E_{2^(2^(m-1))}; the H^p
    column is the Parseval norm for p = 2 and boundary quadrature otherwise.
    """
    if k_max < 1 or k_max > TRACE_KMAX:
        raise ParameterError(f"k_max must be in 1..{TRACE_KMAX} (support 2^(2^k_max) <= 2^16)")
    if 2 ** (2**k_max) > SUPPORT_CAP:
        raise ParameterError("k_max exceeds the coefficient support cap")
    c = f.coeffs
    rows = []
    base = np.zeros(min(3, c.size), dtype=np.complex128)
    base[:] = c[: base.size]
    rows.append(TraceRow(0, 0, 2, float(np.sum(np.abs(base) ** 2)), _hp(base, p), _a1_deriv(base),
                         float("nan"), float("nan")))
    for m in range(1, k_max + 1):
        lo, hi = 2 ** (2 ** (m - 1)), 2 ** (2**m)
        u = np.zeros(min(hi, f.N) + 1, dtype=np.complex128)
        if lo + 1 <= f.N:
            u[lo + 1:] = c[lo + 1: hi + 1]
        a1 = _a1_deriv(u)
        bound = 2 ** (m / 2) * f.E(lo)
        rows.append(TraceRow(m, lo, hi, float(np.sum(np.abs(u) ** 2)), _hp(u, p), a1, bound,
                             a1 / bound if bound > 0 else (0.0 if a1 == 0 else float("inf"))))
    top = 2 ** (2**k_max)
    full = c[: min(top, f.N) + 1]
    total = math.fsum((np.abs(full) ** 2).tolist())
    block_sum = math.fsum(r.mass for r in rows)
    full_a1 = _a1_deriv(full)
    a1_sum = math.fsum(r.a1_deriv for r in rows)
    return DyadicTrace(p, [asdict(r) for r in rows], total, block_sum, full_a1, a1_sum,
                       full_a1 <= a1_sum * (1 + 1e-9) + 1e-12)
