import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import beta

from bernlab.errors import DomainError, ParameterError
from bernlab.functions import Polynomial, power
from bernlab.quadrature import (
    CircleGrid,
    DiskQuadrature,
    RadialPanels,
    annulus_integral,
    band_integral,
    circle_integrand,
    circle_mean,
    default_angular,
    disk_integral,
    inner_disk_integral,
    with_error,
)


def radial_moment(k, gamma, lo=0.0, hi=1.0):
    """integral_lo^hi r^k (1 - r^2)^gamma dr via the incomplete beta function."""
    from scipy.special import betainc

    a, b = (k + 1) / 2, gamma + 1
    return 0.5 * beta(a, b) * (betainc(a, b, hi * hi) - betainc(a, b, lo * lo))


def modulus_power(k):
    # |z|^k on circle grids
    return circle_integrand(lambda r, M: np.full(M, r**k))


class TestRadialPanels:
    def test_breakpoints(self):
        bp = RadialPanels(J=3, J0=0).breakpoints
        assert bp.tolist() == [0.0, 0.5, 0.75, 0.875, 1.0]
        bp = RadialPanels(J=2, J0=2).breakpoints
        assert bp.tolist() == [0.0, 2**-5, 2**-3, 0.5, 0.75, 1.0]

    @given(k=st.integers(0, 60), gamma=st.sampled_from([0.0, -0.5, -0.75, 0.5, 1.3]))
    def test_moments(self, k, gamma):
        x, w = RadialPanels().rule(gamma)
        got = math.fsum(w * x**k)
        assert got == pytest.approx(radial_moment(k, gamma), rel=1e-12)

    @given(lo=st.floats(0.0, 0.95), width=st.floats(0.01, 1.0), k=st.integers(0, 20))
    def test_clipped_interval(self, lo, width, k):
        hi = min(1.0, lo + width)
        x, w = RadialPanels().rule(0.0, lo, hi)
        assert np.all((x >= lo) & (x <= hi))
        assert math.fsum(w * x**k) == pytest.approx(radial_moment(k, 0.0, lo, hi), rel=1e-11, abs=1e-15)

    def test_terminal_panel_absorbs_singular_weight(self):
        # Gauss-Legendre on the last panel would lose many digits for gamma = -0.9
        exact = radial_moment(3, -0.9)
        jac = RadialPanels(J=10).rule(-0.9)
        leg = RadialPanels(J=10, terminal_rule=False).rule(-0.9)
        err_jac = abs(math.fsum(jac[1] * jac[0] ** 3) - exact)
        err_leg = abs(math.fsum(leg[1] * leg[0] ** 3) - exact)
        assert err_jac < 1e-12 * exact
        assert err_leg > 1e3 * err_jac

    def test_bad_arguments(self):
        with pytest.raises(ParameterError):
            RadialPanels(J=0)
        with pytest.raises(ParameterError):
            RadialPanels().rule(-1.0)
        with pytest.raises(ParameterError):
            RadialPanels().rule(0.0, 0.5, 0.5)

    def test_refined(self):
        assert RadialPanels(J=8).refined().J == 12
        assert RadialPanels(J=8, J0=6).refined().J0 == 8

    @given(a=st.floats(1.0, 4.0))
    def test_nonsmooth_at_origin(self, a):
        # r^a with non-integer a: graded inner panels keep full accuracy
        x, w = RadialPanels().rule(0.0)
        assert math.fsum(w * x**a) == pytest.approx(1 / (a + 1), rel=1e-13)

    @given(a=st.floats(0.05, 1.0))
    def test_nonsmooth_at_origin_small_power(self, a):
        # powers below 1 do not arise from area integrals; accuracy is ~1e-8 here
        x, w = RadialPanels().rule(0.0)
        assert math.fsum(w * x**a) == pytest.approx(1 / (a + 1), rel=2e-8)

    @pytest.mark.parametrize("J", [20, 40, 53])
    def test_deep_panels_keep_singular_weight_accurate(self, J):
        # 1 - r^2 formed from r would lose ~j digits on panel j
        x, w = RadialPanels(J=J).rule(-0.75)
        assert math.fsum(w) == pytest.approx(0.5 * beta(0.5, 0.25), rel=1e-14)

    def test_depth_cap(self):
        with pytest.raises(ParameterError):
            RadialPanels(J=54)


class TestDiskIntegrals:
    def test_area(self):
        assert disk_integral(modulus_power(0)) == pytest.approx(math.pi, rel=1e-14)

    @pytest.mark.parametrize("k", [0, 1, 2, 7, 40])
    @pytest.mark.parametrize("gamma", [0.0, -0.5, 0.25])
    def test_weighted_moments(self, k, gamma):
        q = DiskQuadrature(gamma=gamma)
        want = 2 * math.pi * radial_moment(k + 1, gamma)
        assert disk_integral(modulus_power(k), q) == pytest.approx(want, rel=1e-12)

    def test_pointwise_integrand(self):
        # h given pointwise: |z|^2 has integral pi/2
        got = disk_integral(lambda z: np.abs(z) ** 2, DiskQuadrature(M=64))
        assert got == pytest.approx(math.pi / 2, rel=1e-13)

    @given(r=st.floats(0.05, 0.999))
    def test_split_adds_up(self, r):
        q = DiskQuadrature(M=16)
        h = modulus_power(3)
        inner = inner_disk_integral(h, q, r)
        outer = annulus_integral(h, q, r)
        assert inner + outer == pytest.approx(disk_integral(h, q), rel=1e-12)
        assert inner == pytest.approx(2 * math.pi * r**5 / 5, rel=1e-12)

    def test_band(self):
        q = DiskQuadrature(M=16)
        got = band_integral(modulus_power(0), q, 0.5, 0.75)
        assert got == pytest.approx(math.pi * (0.75**2 - 0.5**2), rel=1e-13)
        with pytest.raises(ParameterError):
            band_integral(modulus_power(0), q, 0.8, 0.7)

    def test_with_error_small_for_smooth(self):
        value, err = with_error(disk_integral, modulus_power(2), DiskQuadrature(M=16))
        assert value == pytest.approx(math.pi / 2, rel=1e-13)
        assert err < 1e-12

    def test_nonfinite_integrand(self):
        h = circle_integrand(lambda r, M: np.full(M, np.nan))
        with pytest.raises(DomainError):
            disk_integral(h, DiskQuadrature(M=8))

    def test_pointwise_only_integrand(self):
        h = circle_integrand(lambda r, M: np.ones(M))
        with pytest.raises(ParameterError):
            h(0.5)

    def test_callable_angular_count(self):
        q = DiskQuadrature(M=lambda r: 16 if r < 0.5 else 64)
        assert q.angular_count(0.2) == 16 and q.angular_count(0.9) == 64
        assert q.refined().angular_count(0.9) == 128
        assert q.describe()["M"] == "per-node"


class TestCircle:
    def test_grid(self):
        g = CircleGrid(4, 2.0)
        np.testing.assert_allclose(g.points, [2, 2j, -2, -2j], atol=1e-15)
        assert g.mean([1, 2, 3, 6]) == 3.0
        with pytest.raises(ParameterError):
            CircleGrid(0)

    def test_default_angular(self):
        assert default_angular(1) == 4096
        assert default_angular(1000) == 64000

    @given(n=st.integers(0, 50), r=st.floats(0.01, 1.0), p=st.floats(0.5, 4.0))
    def test_monomial_means(self, n, r, p):
        # |z^n|^p is constant on circles
        assert circle_mean(power(n), r, p, M=128) == pytest.approx(r ** (n * p), rel=1e-12, abs=1e-300)

    def test_parseval(self):
        c = np.array([1, 2 - 1j, 0.5, 3j])
        val, rel = circle_mean(Polynomial(c), 1.0, 2, M=64, with_error=True)
        assert val == pytest.approx(np.sum(np.abs(c) ** 2), rel=1e-14)
        assert rel < 1e-14

    def test_bad_arguments(self):
        with pytest.raises(ParameterError):
            circle_mean(power(1), 1.0, 0.0)
        with pytest.raises(ParameterError):
            circle_mean(power(1), 1.5, 1.0)
