import json
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from scipy.special import beta

from bernlab.errors import ParameterError, ZeroOnCircleError
from bernlab.functions import LacunarySeries, Polynomial, lacunary_partial_sum, power, random_family
from bernlab.norms import (
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
from bernlab.quadrature import DiskQuadrature, RadialPanels

coeff_lists = st.lists(
    st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False), min_size=2, max_size=24
).filter(lambda c: any(abs(x) > 1e-3 for x in c[1:]))


def lp_oracle(c):
    """||S(f)||^2 = sum |a_k|^2 k / (2 (2k - 1)): the radial integral of (1 - r) k^2 r^(2k-2)."""
    return sum(abs(a) ** 2 * k / (2 * (2 * k - 1)) for k, a in enumerate(c) if k >= 1)


class TestHardy:
    @pytest.mark.parametrize("p", [1, 2, 3.5])
    def test_monomial(self, p):
        rep = hardy_norm(power(7), p)
        assert rep.value == pytest.approx(1.0, abs=1e-14)
        assert rep.diagnostics["nondecreasing"]
        assert rep.diagnostics["means_by_radius"]["0.5"] == pytest.approx(0.5**7, rel=1e-12)

    @given(coeff_lists)
    def test_parseval(self, c):
        want = math.sqrt(sum(abs(x) ** 2 for x in c))
        assert hardy_norm(Polynomial(c), 2).value == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("m", [1, 5, 11])
    def test_lacunary(self, m):
        assert hardy_norm(lacunary_partial_sum(m), 2).value == pytest.approx(math.sqrt(m), rel=1e-13)

    @pytest.mark.parametrize("p", [1, 2, 6])
    def test_blaschke_is_inner(self, p):
        B = random_family("clustered-blaschke", 32, 1)
        rep = hardy_norm(B, p)
        assert rep.value == pytest.approx(1.0, abs=1e-10)
        assert rep.error_estimate < 1e-10

    def test_rejects_small_p(self):
        with pytest.raises(ParameterError):
            hardy_norm(power(1), 0.5)

    def test_report_serializes(self):
        rep = hardy_norm(power(3), 2)
        d = json.loads(rep.to_json())
        assert d["functional"] == "hardy"
        assert "angular" in d["conventions"] and "area" in d["conventions"]
        assert float(rep) == rep.value
        assert isinstance(rep, NormReport)


class TestBergmanBesov:
    @pytest.mark.parametrize("n", [1, 2, 10, 100])
    def test_a1_monomial(self, n):
        rep = bergman_deriv_norm(power(n), 1)
        assert rep.value == pytest.approx(2 * math.pi * n / (n + 1), rel=1e-12)
        assert rep.error_estimate < 1e-10

    @given(n=st.integers(1, 40), p=st.floats(1.0, 4.0))
    def test_ap_monomial(self, n, p):
        # integral |n z^(n-1)|^p dA = 2 pi n^p / ((n - 1) p + 2)
        want = 2 * math.pi * n**p / ((n - 1) * p + 2)
        rep = bergman_deriv_norm(power(n), p, DiskQuadrature(M=256))
        assert rep.diagnostics["integral"] == pytest.approx(want, rel=1e-11)

    @pytest.mark.parametrize("n,sigma,alpha", [(4, 1.0, 0.25), (16, 1.5, 0.4), (9, 0.5, -0.3)])
    def test_besov_monomial(self, n, sigma, alpha):
        want = math.pi * n**sigma * beta((n - 1) * sigma / 2 + 1, (1 - alpha) * sigma)
        rep = besov_seminorm(power(n), sigma, alpha)
        assert rep.diagnostics["integral"] == pytest.approx(want, rel=1e-11)
        assert rep.value == pytest.approx(want ** (1 / sigma), rel=1e-11)

    @given(sigma=st.floats(1.0, 3.0))
    def test_besov_reduces_to_bergman(self, sigma):
        # the weight is identically 1 when alpha = (sigma - 1)/sigma
        f = Polynomial([0.3, 1.0, -0.5j, 0.25])
        q = DiskQuadrature(M=256)
        b = besov_seminorm(f, sigma, (sigma - 1) / sigma, q).value
        a = bergman_deriv_norm(f, sigma, q).value
        assert b == pytest.approx(a, rel=1e-12)

    def test_besov_parameter_errors(self):
        with pytest.raises(ParameterError):
            besov_seminorm(power(2), 1.0, 1.0)
        with pytest.raises(ParameterError):
            besov_seminorm(power(2), 0.0, 0.1)
        with pytest.raises(ParameterError):
            bergman_deriv_norm(power(2), 0.5)

    def test_constant_has_zero_seminorm(self):
        assert bergman_deriv_norm(Polynomial([3.0]), 1).value == 0.0


class TestLittlewoodPaley:
    @pytest.mark.parametrize("k", [1, 2, 5, 32])
    def test_square_function_monomial(self, k):
        want = math.sqrt(k / (2 * (2 * k - 1)))
        for t in (0.0, 1.0, 4.0):
            assert square_function(power(k), t) == pytest.approx(want, rel=1e-13)

    @given(coeff_lists)
    def test_l2_norm(self, c):
        rep = littlewood_paley_norm(Polynomial(c), 2, M=256)
        assert rep.value**2 == pytest.approx(lp_oracle(c), rel=1e-11)
        assert rep.value**2 <= 0.5 * sum(abs(x) ** 2 for x in c) * (1 + 1e-12)

    def test_lp_of_monomial_is_constant_in_p(self):
        want = math.sqrt(3 / 10)
        for p in (1, 2, 4):
            assert littlewood_paley_norm(power(3), p, M=64).value == pytest.approx(want, rel=1e-12)

    def test_refinement_error_small(self):
        rep = littlewood_paley_norm(power(4), 2, M=64, radial=RadialPanels(J=30))
        assert rep.error_estimate < 1e-12


class TestHayman:
    @given(n=st.integers(1, 20), r=st.floats(0.1, 0.999), lam=st.floats(0.1, 2.0))
    def test_monomial(self, n, r, lam):
        # |f'|^2 |f|^(lam - 2) = n^2 r^(n lam - 2) on |z| = r, raw dt
        assume(r**n > 1e-12)  # below 1e-13 the sampled values count as a zero
        want = 2 * math.pi * n * n * r ** (n * lam - 2)
        assert hayman_lhs(power(n), r, lam, M=64) == pytest.approx(want, rel=1e-11)

    def test_zero_on_circle(self):
        f = Polynomial([-0.5, 1.0])
        with pytest.raises(ZeroOnCircleError):
            hayman_lhs(f, 0.5, 1.0, M=64)
        val = hayman_lhs(f, 0.5, 1.0, M=64, perturb=True)
        assert math.isfinite(val) and val > 0

    def test_threshold_is_absolute(self):
        # |z^15| = 2^-45 < 1e-13 on |z| = 1/8: reported as a zero on the circle
        with pytest.raises(ZeroOnCircleError):
            hayman_lhs(power(15), 0.125, 1.0, M=64)

    def test_lambda_two_ignores_zeros(self):
        f = Polynomial([-0.5, 1.0])
        assert hayman_lhs(f, 0.5, 2.0, M=64) == pytest.approx(2 * math.pi)

    def test_constant(self):
        assert hayman_lhs(Polynomial([2.0]), 0.5, 1.0) == 0.0

    @pytest.mark.parametrize("lam", [0.0, -1.0, 2.5])
    def test_lambda_range(self, lam):
        with pytest.raises(ParameterError):
            hayman_lhs(power(2), 0.5, lam)


class TestMaxModulus:
    def test_on_grid(self):
        f = Polynomial([1, 1, 1])
        assert max_modulus(f, 0.5) == pytest.approx(1.75, rel=1e-14)

    @given(t0=st.floats(0.0, 2 * math.pi), r=st.floats(0.1, 1.0))
    def test_off_grid_peak(self, t0, r):
        # (1 + e^{-i t0} z)^2 peaks at t = t0 with value (1 + r)^2
        u = np.exp(-1j * t0)
        f = Polynomial([1, 2 * u, u * u])
        got = max_modulus(f, r, M=7)
        assert got == pytest.approx((1 + r) ** 2, rel=1e-10)
        assert got <= (1 + r) ** 2 * (1 + 1e-14)


class TestPommerenke:
    @given(n=st.integers(1, 30), p=st.floats(1.0, 3.0))
    def test_monomial(self, n, p):
        # integral_0^1 (2 pi n r^(n-1))^p dr
        want = (2 * math.pi * n) ** p / ((n - 1) * p + 1)
        rep = pommerenke_mixed_norm(power(n), p, M=64)
        assert rep.value == pytest.approx(want, rel=1e-11)
        assert rep.conventions["angular"].startswith("raw")

    def test_rejects_small_p(self):
        with pytest.raises(ParameterError):
            pommerenke_mixed_norm(power(1), 0.5)


class TestBMOA:
    def test_lacunary(self):
        f = LacunarySeries([(1, 3.0), (4, 4j)])
        assert bmoa_surrogate(f).value == pytest.approx(5.0, rel=1e-14)

    def test_empty(self):
        assert bmoa_surrogate(LacunarySeries([])).value == 0.0

    def test_rejects_dense(self):
        with pytest.raises(ParameterError):
            bmoa_surrogate(power(3))
