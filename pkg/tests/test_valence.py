import json

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bernlab.errors import ContourTooCloseError, NonIntegerResidueError, ParameterError
from bernlab.functions import BlaschkeProduct, Polynomial, power, random_family
from bernlab.roots import aberth, count_inside
from bernlab.valence import (
    Contour,
    certify_mean_valent,
    mean_valence,
    polar_grid,
    root_oracle_count,
    valence_at,
)


class TestRoots:
    @given(st.lists(st.complex_numbers(max_magnitude=2.0, allow_nan=False), min_size=1, max_size=10))
    def test_aberth_backward_stable(self, roots):
        # multiple roots are only determined to ~eps^(1/m); each residual is at roundoff level
        c = np.polynomial.polynomial.polyfromroots(roots)
        got = aberth(c)
        assert got.size == len(roots)
        P = np.polynomial.polynomial
        resid = np.abs(P.polyval(got, c))
        scale = P.polyval(np.abs(got), np.abs(c))
        step = resid / np.maximum(np.abs(P.polyval(got, P.polyder(c))), 1e-300)
        assert np.all((resid <= 1e-12 * scale) | (step <= 1e-11 * (1 + np.abs(got))))

    @given(st.lists(st.complex_numbers(max_magnitude=2.0, allow_nan=False), min_size=1, max_size=10))
    def test_aberth_separated_roots(self, roots):
        sep = min((abs(a - b) for i, a in enumerate(roots) for b in roots[:i]), default=1.0)
        assume(sep > 0.1)
        got = aberth(np.polynomial.polynomial.polyfromroots(roots))
        for r in roots:
            assert np.min(np.abs(got - r)) < 1e-8

    @pytest.mark.parametrize("roots", [[1, 1, 1], [1, 1.9e-75], [2, 2, 2, 2, -1]])
    def test_aberth_hard_cases(self, roots):
        got = aberth(np.polynomial.polynomial.polyfromroots(roots))
        for r in roots:
            assert np.min(np.abs(got - r)) < 1e-3

    def test_count_inside(self):
        c = np.polynomial.polynomial.polyfromroots([0.5, -0.2j, 1.5, 3])
        assert count_inside(c, 1.0) == 2
        assert count_inside(c, 2.0) == 3


class TestValenceAt:
    def test_monomial(self):
        f = power(3)
        assert valence_at(f, 0.2) == 3
        assert valence_at(f, 1.5) == 0

    def test_blaschke_covers_disk_n_times(self):
        B = BlaschkeProduct([0.1, -0.5j, 0.7])
        assert valence_at(B, 0.3 + 0.1j) == 3

    def test_too_close(self):
        with pytest.raises(ContourTooCloseError):
            valence_at(power(1), 0.5, rho=0.5)

    def test_bad_radius(self):
        with pytest.raises(ParameterError):
            Contour(power(1), 1.5)

    def test_unresolved_residue(self):
        # w just off the image of the contour: the trapezoid sum cannot settle at a tiny cap
        import bernlab.valence as v

        old = v.M_CAP
        v.M_CAP = 64
        try:
            with pytest.raises(NonIntegerResidueError):
                valence_at(power(1), 0.5 + 1e-5, rho=0.5, M=16)
        finally:
            v.M_CAP = old

    @given(seed=st.integers(0, 10_000))
    def test_agrees_with_root_oracle(self, seed):
        rng = np.random.default_rng(seed)
        d = int(rng.integers(1, 9))
        c = rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1)
        w = complex(rng.standard_normal() + 1j * rng.standard_normal())
        f = Polynomial(c)
        try:
            got = valence_at(f, w)
        except ContourTooCloseError:
            return
        assert got == root_oracle_count(c, w)

    def test_oracle_degree_cap(self):
        with pytest.raises(ParameterError):
            root_oracle_count(np.ones(70), 0.0)


class TestMeanValence:
    def test_grid_shape_and_seed(self):
        radii, angles = polar_grid(0.5, 4, 8, seed=3)
        assert radii.tolist() == [0.0625, 0.1875, 0.3125, 0.4375]
        assert angles.shape == (4, 8)
        same = polar_grid(0.5, 4, 8, seed=3)[1]
        other = polar_grid(0.5, 4, 8, seed=4)[1]
        np.testing.assert_array_equal(angles, same)
        assert not np.array_equal(angles, other)
        with pytest.raises(ParameterError):
            polar_grid(0.0)

    @pytest.mark.parametrize("n", [1, 2, 5])
    @pytest.mark.parametrize("R", [0.25, 0.5, 1.0])
    def test_monomial_exact(self, n, R):
        prof = mean_valence(power(n), R)
        assert prof.mean_valence == pytest.approx(n * R * R, rel=1e-12)
        assert prof.check_value == pytest.approx(n * R * R)

    def test_outside_image(self):
        # z/4 covers |w| < 1/4 once; over |w| < 1 the mean is 1/16
        f = Polynomial([0, 0.25])
        prof = mean_valence(f, 1.0, M=4096)
        assert prof.mean_valence == pytest.approx(1 / 16, abs=0.02)

    def test_serialization(self):
        prof = mean_valence(power(2), 0.5)
        d = json.loads(prof.to_json())
        assert d["conventions"]["mean_valence"].startswith("(1/pi)")
        lines = prof.to_csv().split("\r\n")[:-1]
        assert lines[0] == "#schema=bernlab.valence.grid.v1;columns=w_re,w_im,count"
        assert lines[1] == "w_re,w_im,count"
        assert len(lines) == 2 + 32 * 64
        assert {int(x.split(",")[2]) for x in lines[2:]} == {2}


class TestCertify:
    def test_monomial(self):
        assert certify_mean_valent(power(3), 3, [0.5, 1.0]).passed
        assert not certify_mean_valent(power(3), 2, [1.0]).passed

    def test_real_claim(self):
        assert certify_mean_valent(power(2), 2.5, [1.0]).passed

    def test_blaschke(self):
        B = random_family("uniform-blaschke", 4, 0)
        assert certify_mean_valent(B, 4, [1.0]).passed
        assert not certify_mean_valent(B, 3, [1.0]).passed

    def test_bad_claim(self):
        with pytest.raises(ParameterError):
            certify_mean_valent(power(1), 0, [1.0])
