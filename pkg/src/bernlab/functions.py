"""Exactly representable analytic functions on the closed unit disk.

Every family carries enough structure to evaluate ``f`` and ``f'`` stably
at single points (``f(z)``, ``f.deriv(z)``) and, much faster, on whole
circles ``r * exp(2 pi i m / M)`` via :meth:`AnalyticFunction.circle_values`.
Circle evaluation goes through Taylor coefficients and one FFT per circle;
for Blaschke products and rational functions the coefficients are
extracted once from boundary samples and cached.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ParameterError
from .roots import aberth

#: Largest Taylor support handled by coefficient-based circle evaluation.
COEFF_CAP = 1 << 22
#: Budget (zeros x samples) for extracting Blaschke coefficients.
_EXTRACT_BUDGET = 4e9
#: Coefficient cap for ``taylor_coeffs`` requests.
TAYLOR_CAP = 1 << 20


def _as_complex_array(z):
    return np.atleast_1d(np.asarray(z, dtype=np.complex128))


def _unwrap(z, out):
    return out if np.ndim(z) else complex(out[0])


def _next_pow2(x):
    return 1 << max(0, math.ceil(math.log2(max(1, x))))


def fold_eval(coeffs, r, M):
    """Values of ``sum coeffs[k] z**k`` at the M-th roots of unity scaled by ``r``.

    Exact up to roundoff for any M: coefficients are folded modulo M before
    a single inverse FFT.
    """
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    K = coeffs.size
    if K == 0:
        return np.zeros(M, dtype=np.complex128)
    if r == 1.0:
        scaled = coeffs
    elif r == 0.0:
        return np.full(M, coeffs[0], dtype=np.complex128)
    else:
        with np.errstate(under="ignore"):
            scaled = coeffs * np.power(r, np.arange(K, dtype=np.float64))
    if K <= M:
        folded = np.zeros(M, dtype=np.complex128)
        folded[:K] = scaled
    else:
        pad = (-K) % M
        folded = np.concatenate((scaled, np.zeros(pad))).reshape(-1, M).sum(axis=0)
    return M * np.fft.ifft(folded)


def _deriv_coeffs(c):
    c = np.asarray(c, dtype=np.complex128)
    if c.size <= 1:
        return np.zeros(1, dtype=np.complex128)
    return c[1:] * np.arange(1, c.size)


class AnalyticFunction:
    """Common interface of the representable kinds.

    Subclasses provide ``kind``, ``degree`` (the certified valence bound),
    pointwise ``_eval_both`` and ``to_spec``.
    """

    kind = "abstract"

    def __call__(self, z):
        v, _ = self._eval_both(_as_complex_array(z))
        return _unwrap(z, v)

    def deriv(self, z):
        _, d = self._eval_both(_as_complex_array(z))
        return _unwrap(z, d)

    def eval_both(self, z):
        return self._eval_both(_as_complex_array(z))

    @property
    def degree(self) -> int:
        raise NotImplementedError

    def coeffs(self):
        """Taylor coefficients sufficient for circle evaluation, or None."""
        return None

    def sample_size(self) -> int:
        """Boundary sample count below which Fourier aliasing is noticeable."""
        c = self.coeffs()
        return COEFF_CAP if c is None else int(c.size)

    def circle_values(self, r, M, deriv=False):
        """f (or f') at ``r * exp(2 pi i m / M)``, m = 0..M-1."""
        c = self.coeffs()
        if c is not None:
            return fold_eval(_deriv_coeffs(c) if deriv else c, r, M)
        z = r * np.exp(2j * np.pi * np.arange(M) / M)
        v, d = self._eval_both(z)
        return d if deriv else v

    def to_spec(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} degree={self.degree}>"


def _pairs(values):
    return [[float(complex(c).real), float(complex(c).imag)] for c in values]


def _parse_pairs(items):
    out = []
    for it in items:
        if isinstance(it, (int, float)):
            out.append(complex(it))
        else:
            re, im = (list(it) + [0.0])[:2]
            out.append(complex(re, im))
    return np.asarray(out, dtype=np.complex128)


class Polynomial(AnalyticFunction):
    """Dense polynomial with ascending Taylor coefficients a_0..a_d."""

    kind = "polynomial"

    def __init__(self, coeffs):
        arr = np.asarray(coeffs, dtype=np.complex128).ravel()
        trimmed = np.trim_zeros(arr, "b")
        if trimmed.size == 0:
            trimmed = np.zeros(1, dtype=np.complex128)
        self._c = trimmed

    @property
    def degree(self):
        return int(self._c.size - 1)

    def coeffs(self):
        return self._c

    def _eval_both(self, z):
        return kernels.horner_eval(self._c, z)

    def to_spec(self):
        return {"kind": "polynomial", "coeffs": _pairs(self._c)}


class LacunarySeries(AnalyticFunction):
    """Finite series sum a_k z**(2**k) with strictly increasing k."""

    kind = "lacunary"

    def __init__(self, terms):
        terms = tuple((int(k), complex(a)) for k, a in terms)
        ks = [k for k, _ in terms]
        if any(k < 0 or k > 62 for k in ks):
            raise ParameterError("lacunary exponents must be 2**k with 0 <= k <= 62")
        if any(b <= a for a, b in zip(ks, ks[1:])):
            raise ParameterError("lacunary exponents must be strictly increasing")
        self.terms = terms
        self._k = np.asarray(ks, dtype=np.int64)
        self._a = np.asarray([a for _, a in terms], dtype=np.complex128)

    @property
    def degree(self):
        return 2 ** int(self._k[-1]) if self.terms else 0

    @property
    def exponents(self):
        return [2**k for k in self._k.tolist()]

    def h2_norm_squared(self):
        return float(np.sum(np.abs(self._a) ** 2))

    def sample_size(self):
        return self.degree + 1

    def coeffs(self):
        if self.degree + 1 > COEFF_CAP:
            return None
        c = np.zeros(self.degree + 1, dtype=np.complex128)
        c[self.exponents] = self._a
        return c

    def circle_values(self, r, M, deriv=False):
        # sparse fold: exponent e lands in bin e mod M
        folded = np.zeros(M, dtype=np.complex128)
        for k, a in zip(self._k.tolist(), self._a):
            e = 2**k
            if deriv:
                if e - 1 >= 0:
                    folded[(e - 1) % M] += a * e * r ** (e - 1)
            else:
                folded[e % M] += a * r**e
        return M * np.fft.ifft(folded)

    def _eval_both(self, z):
        return kernels.lacunary_eval(self._k, self._a, z)

    def to_spec(self):
        return {"kind": "lacunary", "terms": [[int(k), a.real, a.imag] for k, a in self.terms]}


def lacunary_partial_sum(m, coeff=1.0):
    """P_m(z) = sum_{k=1}^m coeff * z**(2**k)."""
    return LacunarySeries([(k, coeff) for k in range(1, m + 1)])


def power(n):
    """The monomial z**n."""
    c = np.zeros(n + 1, dtype=np.complex128)
    c[n] = 1.0
    return Polynomial(c)


class _CoefficientCache:
    """Boundary-FFT coefficient extraction shared by Blaschke and rational kinds."""

    def _extract(self, start):
        size = _next_pow2(start)
        while size <= COEFF_CAP:
            if self._extraction_cost(size) > _EXTRACT_BUDGET:
                return None
            z = np.exp(2j * np.pi * np.arange(size) / size)
            v, _ = self._eval_both(z)
            c = np.fft.fft(v) / size
            scale = max(1.0, float(np.max(np.abs(c))))
            # roundoff in the samples leaves a floor near 1e-16..1e-15
            if np.max(np.abs(c[size // 2:])) < 1e-13 * scale:
                keep = np.flatnonzero(np.abs(c) > 1e-15 * scale)
                top = int(keep[-1]) + 1 if keep.size else 1
                return c[:top].copy()
            size *= 2
        return None

    def _extraction_cost(self, size):
        return float(size) * max(1, self.degree)


class BlaschkeProduct(_CoefficientCache, AnalyticFunction):
    """Finite Blaschke product; factor b_a(z) = (|a|/a)(a - z)/(1 - conj(a) z), b_0(z) = z."""

    kind = "blaschke"

    def __init__(self, zeros):
        a = np.asarray(zeros, dtype=np.complex128).ravel()
        if a.size and np.max(np.abs(a)) >= 1:
            raise ParameterError("Blaschke zeros must lie in the open unit disk")
        a.setflags(write=False)
        self.zeros = a

    @property
    def degree(self):
        return int(self.zeros.size)

    def _eval_both(self, z):
        return kernels.blaschke_eval(self.zeros, z)

    @functools.cached_property
    def _coeffs(self):
        if self.degree == 0:
            return np.ones(1, dtype=np.complex128)
        rho = float(np.max(np.abs(self.zeros)))
        decay = 40.0 / (1.0 - rho) if rho > 0 else 0.0
        return self._extract(max(64, 8 * (self.degree + 1), decay))

    def coeffs(self):
        return self._coeffs

    def to_spec(self):
        return {"kind": "blaschke", "zeros": _pairs(self.zeros)}


class RationalFunction(_CoefficientCache, AnalyticFunction):
    """num/den with every root of ``den`` outside the closed unit disk."""

    kind = "rational"

    def __init__(self, num, den):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = den if isinstance(den, Polynomial) else Polynomial(den)
        dc = den.coeffs()
        if np.all(dc == 0):
            raise ParameterError("denominator is identically zero")
        poles = aberth(dc) if den.degree > 0 else np.zeros(0, dtype=np.complex128)
        if poles.size and np.min(np.abs(poles)) <= 1.0 + 1e-12:
            raise ParameterError(
                f"denominator has a root of modulus {np.min(np.abs(poles)):.6g} <= 1"
            )
        self.num = num
        self.den = den
        self.poles = poles

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree)

    def _eval_both(self, z):
        p, dp = self.num._eval_both(z)
        q, dq = self.den._eval_both(z)
        return p / q, (dp * q - p * dq) / (q * q)

    @functools.cached_property
    def _coeffs(self):
        if self.den.degree == 0:
            return self.num.coeffs() / self.den.coeffs()[0]
        inv_rho = 1.0 / float(np.min(np.abs(self.poles)))
        return self._extract(max(64, 8 * (self.degree + 1), 40.0 / (1.0 - inv_rho)))

    def coeffs(self):
        return self._coeffs

    def to_spec(self):
        return {"kind": "rational", "num": _pairs(self.num.coeffs()), "den": _pairs(self.den.coeffs())}


def cauchy_kernel(a=0.5):
    """(1 - a z)^{-1}, analytic on the closed disk for |a| < 1."""
    return RationalFunction([1.0], [1.0, -a])


class ProductFunction(AnalyticFunction):
    """Pointwise product of factors; derivative by the product rule."""

    kind = "product"

    def __init__(self, factors):
        self.factors = tuple(factors)

    @property
    def degree(self):
        return sum(f.degree for f in self.factors)

    def sample_size(self):
        return min(COEFF_CAP, sum(f.sample_size() for f in self.factors))

    def _combine(self, pairs):
        vals = [v for v, _ in pairs]
        total = np.ones_like(vals[0]) if vals else None
        for v in vals:
            total = total * v
        der = np.zeros_like(total)
        for i, (_, d) in enumerate(pairs):
            term = d
            for j, v in enumerate(vals):
                if j != i:
                    term = term * v
            der = der + term
        return total, der

    def _eval_both(self, z):
        if not self.factors:
            return np.ones_like(z), np.zeros_like(z)
        return self._combine([f.eval_both(z) for f in self.factors])

    def circle_values(self, r, M, deriv=False):
        if not self.factors:
            return np.full(M, 0.0 if deriv else 1.0, dtype=np.complex128)
        pairs = []
        for f in self.factors:
            v = f.circle_values(r, M)
            d = f.circle_values(r, M, deriv=True) if deriv else None
            pairs.append((v, d))
        if not deriv:
            out = pairs[0][0]
            for v, _ in pairs[1:]:
                out = out * v
            return out
        return self._combine(pairs)[1]

    def to_spec(self):
        return {"kind": "product", "factors": [f.to_spec() for f in self.factors]}


class Derivative(AnalyticFunction):
    """View of f' as a function, for means of the derivative."""

    kind = "derivative"

    def __init__(self, base):
        self.base = base

    @property
    def degree(self):
        return self.base.degree

    def sample_size(self):
        return self.base.sample_size()

    def __call__(self, z):
        return self.base.deriv(z)

    def _eval_both(self, z):
        # second derivative by central differences; only used for diagnostics
        _, d = self.base._eval_both(z)
        return d, _finite_difference(self.base, z)

    def circle_values(self, r, M, deriv=False):
        if deriv:
            c = self.base.coeffs()
            if c is None:
                raise ParameterError("second derivative needs Taylor coefficients")
            return fold_eval(_deriv_coeffs(_deriv_coeffs(c)), r, M)
        return self.base.circle_values(r, M, deriv=True)

    def to_spec(self):
        return {"kind": "derivative", "of": self.base.to_spec()}


def _finite_difference(f, z, h=1e-5):
    _, dp = f._eval_both(z + h)
    _, dm = f._eval_both(z - h)
    return (dp - dm) / (2 * h)


def derivative(f):
    return Derivative(f)


# -- operations ---------------------------------------------------------------


def evaluate(f, z):
    """f(z) for scalar or array ``z``."""
    return f(z)


def eval_deriv(f, z):
    """f'(z) for scalar or array ``z``."""
    return f.deriv(z)


def taylor_coeffs(f, N):
    """First N Taylor coefficients from the FFT of boundary samples.

    The sample count is a power of two, at least ``8 N`` and at least the
    function's aliasing-free support.
    """
    if N < 1 or N > TAYLOR_CAP:
        raise ParameterError(f"N must be in [1, {TAYLOR_CAP}], got {N}")
    size = _next_pow2(max(64, 8 * N, min(f.sample_size(), 1 << 23)))
    z = np.exp(2j * np.pi * np.arange(size) / size)
    v = f(z)
    return np.fft.fft(v)[:N] / size


_FAMILY_KEYS = {"clustered-blaschke": 1, "uniform-blaschke": 2, "random-polynomial": 3}


def family_rng(kind, n, seed):
    """Philox generator keyed by (seed, kind, n); streams are independent."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(_FAMILY_KEYS.get(kind, 0), int(n)))
    return np.random.Generator(np.random.Philox(ss))


def random_family(kind, n, seed):
    """Deterministic random test function of degree ``n``.

    ``clustered-blaschke`` puts all zeros on |a| = 1 - 1/n at i.i.d. uniform
    angles; ``uniform-blaschke`` draws zeros area-uniformly in the disk;
    ``random-polynomial`` draws unit-variance complex Gaussian coefficients
    with a leading coefficient bounded away from zero.
    """
    if n < 1:
        raise ParameterError("degree must be >= 1")
    rng = family_rng(kind, n, seed)
    if kind == "clustered-blaschke":
        angles = np.sort(rng.random(n)) * 2 * np.pi
        return BlaschkeProduct((1.0 - 1.0 / n) * np.exp(1j * angles))
    if kind == "uniform-blaschke":
        rad = np.sqrt(rng.random(n))
        angles = rng.random(n) * 2 * np.pi
        return BlaschkeProduct(rad * np.exp(1j * angles))
    if kind == "random-polynomial":
        c = (rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)) / math.sqrt(2)
        while abs(c[n]) < 1e-3:
            c[n] = (rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2)
        return Polynomial(c)
    raise ParameterError(f"unknown family kind {kind!r}")


def from_spec(spec) -> AnalyticFunction:
    """Build a function from its JSON description."""
    kind = spec.get("kind")
    if kind == "polynomial":
        return Polynomial(_parse_pairs(spec["coeffs"]))
    if kind == "lacunary":
        return LacunarySeries([(int(t[0]), complex(t[1], t[2] if len(t) > 2 else 0.0)) for t in spec["terms"]])
    if kind == "blaschke":
        return BlaschkeProduct(_parse_pairs(spec["zeros"]))
    if kind == "rational":
        return RationalFunction(_parse_pairs(spec["num"]), _parse_pairs(spec["den"]))
    if kind == "product":
        return ProductFunction([from_spec(s) for s in spec["factors"]])
    raise ParameterError(f"unknown function kind {kind!r}")


@dataclass(frozen=True)
class FamilyMember:
    """A sweep family instance and the bookkeeping rows need."""

    f: AnalyticFunction
    label: int
    n_bound: int
    terms: int | None = None
    extra: dict = field(default_factory=dict)
