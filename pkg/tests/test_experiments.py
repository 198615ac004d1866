import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bernlab import experiments as ex
from bernlab.errors import HypothesisError, ParameterError
from bernlab.functions import Polynomial, lacunary_partial_sum, power


class TestFitGrowth:
    @given(C=st.floats(0.1, 10), beta=st.floats(-1, 2), gamma=st.floats(-1, 1))
    def test_recovers_exact_model(self, C, beta, gamma):
        ns = [2**k for k in range(3, 12)]
        fit = ex.fit_growth([(n, C * n**beta * math.log(n) ** gamma) for n in ns])
        assert fit.beta == pytest.approx(beta, abs=1e-8)
        assert fit.gamma == pytest.approx(gamma, abs=1e-8)
        assert fit.C == pytest.approx(C, rel=1e-8)
        assert fit.residual < 1e-9

    @given(scale=st.floats(1e-3, 1e3))
    def test_scale_equivariance(self, scale):
        pts = [(n, n**0.3 * (1 + 0.1 * math.sin(n))) for n in (4, 9, 20, 50, 130, 400)]
        a = ex.fit_growth(pts)
        b = ex.fit_growth([(n, scale * y) for n, y in pts])
        assert b.C == pytest.approx(scale * a.C, rel=1e-9)
        assert (b.beta, b.gamma) == pytest.approx((a.beta, a.gamma), abs=1e-9)

    def test_fixed_parameters(self):
        pts = [(n, 2.0 * math.log(n) ** 0.5) for n in (4, 16, 64, 256)]
        fit = ex.fit_growth(pts, {"beta": 0.0})
        assert fit.gamma == pytest.approx(0.5, abs=1e-12) and fit.beta == 0.0
        assert ex.fit_growth(pts, ["beta"]).fixed == {"beta": 0.0}

    def test_errors(self):
        with pytest.raises(ParameterError):
            ex.fit_growth([(4, 1.0), (8, 2.0)])
        with pytest.raises(ParameterError):
            ex.fit_growth([(4, 1.0), (8, 0.0), (16, 1.0)])
        with pytest.raises(ParameterError):
            ex.fit_growth([(4, 1.0), (8, 1.0), (16, 1.0)], {"C": 1.0})
        with pytest.raises(ParameterError):
            ex.fit_growth([(4, 1.0), (4, 1.0), (4, 1.0)])


class TestConfig:
    def test_parse_n_list(self):
        assert ex.parse_n_list("4..7") == [4, 5, 6, 7]
        assert ex.parse_n_list("2^2..2^4") == [4, 8, 16]
        assert ex.parse_n_list("3, 9,27") == [3, 9, 27]
        with pytest.raises(ParameterError):
            ex.parse_n_list("a..b")

    def test_validation(self):
        with pytest.raises(ParameterError):
            ex.SweepConfig("9", "power").validate()
        with pytest.raises(ParameterError):
            ex.SweepConfig("1", "power", [8, 4]).validate()
        with pytest.raises(ParameterError):
            ex.SweepConfig("1", "nope").validate()

    def test_thread_cap(self, monkeypatch):
        monkeypatch.setenv("BERNLAB_THREADS", "1")
        assert ex.thread_count() == 1
        monkeypatch.setenv("BERNLAB_THREADS", "x")
        with pytest.raises(ParameterError):
            ex.thread_count()

    def test_members(self):
        m = ex.build_member("lacunary", 5)
        assert (m.n_bound, m.terms) == (32, 5)
        assert ex.build_member("power", 7).n_bound == 7


class TestSweeps:
    def test_theorem1_power(self):
        res = ex.run_sweep(ex.SweepConfig("1", "power", [2, 4, 8], p=2))
        for row in res.rows:
            n = row["n"]
            assert row["lhs"] == pytest.approx(2 * math.pi * n / (n + 1), rel=1e-10)
            assert row["hp_norm"] == pytest.approx(1.0)
        assert res.fit is not None and res.fit.beta == 0.0
        assert sum(r["max_ratio"] for r in res.rows) == 1

    def test_singleton_skips_fit(self):
        res = ex.run_sweep(ex.SweepConfig("1", "power", [8], p=2))
        assert res.fit is None and "a fit needs" in res.fit_skipped

    def test_theorem1_needs_p(self):
        with pytest.raises(HypothesisError):
            ex.run_sweep(ex.SweepConfig("1", "power", [2, 4]))

    def test_disk_sup(self):
        res = ex.run_sweep(ex.SweepConfig("1-sup", "power", [2, 4, 8], p=1.5))
        for row in res.rows:
            n = row["n"]
            want = 2 * math.pi * n**1.5 / ((n - 1) * 1.5 + 2)
            assert row["ap_integral"] == pytest.approx(want, rel=1e-10)
            assert row["hinf_p"] == pytest.approx(1.0)

    @pytest.mark.parametrize("alpha,sigma,p", [(0.6, 1, 2), (0.25, 2.5, 2), (0.25, 1, 1.0)])
    def test_theorem2_hypotheses(self, alpha, sigma, p):
        with pytest.raises(HypothesisError):
            ex.run_sweep(ex.SweepConfig("2", "power", [4, 8], p=p, sigma=sigma, alpha=alpha))

    def test_theorem2_regimes(self):
        assert ex.theorem2_regime(2, 1, 0.25)[0] == 1
        assert ex.theorem2_regime(1.5, 1.2, 0.1)[0] == 2
        with pytest.raises(HypothesisError):
            ex.theorem2_regime(1.2, 1.5, 0.4)
        lam, c1, c2 = ex.lambda_policy(1, 64, 2, 1, 0.25)
        assert lam == pytest.approx(1 / math.log(64)) and c1 and c2

    def test_theorem2_regime1_decreasing(self):
        res = ex.run_sweep(ex.SweepConfig("2", "power", [16, 32, 64, 128], p=2, sigma=1, alpha=0.25))
        ratios = [r["ratio"] for r in res.rows]
        assert all(b <= a for a, b in zip(ratios, ratios[1:]))

    def test_theorem3_requires_blaschke(self):
        with pytest.raises(ParameterError):
            ex.run_sweep(ex.SweepConfig("3", "lacunary", [4, 5], p=2))

    def test_theorem3_power_g1(self):
        # B = z^n, g = 1: integral |B'| dA = 2 pi n/(n + 1)
        res = ex.run_sweep(ex.SweepConfig("3", "power", [2, 8, 32], p=2))
        for row in res.rows:
            assert row["lhs"] == pytest.approx(2 * math.pi * row["n"] / (row["n"] + 1), rel=1e-10)

    def test_pommerenke(self):
        res = ex.run_sweep(ex.SweepConfig("pommerenke", "power", [2, 4, 8], p=1.5))
        for row in res.rows:
            n = row["n"]
            assert row["mixed_norm"] == pytest.approx((2 * math.pi * n) ** 1.5 / ((n - 1) * 1.5 + 1), rel=1e-10)
        with pytest.raises(HypothesisError):
            ex.run_sweep(ex.SweepConfig("pommerenke", "power", [2, 4], p=2))

    def test_lemma32(self):
        rows = ex.check_lemma32(power(4), 1.5, 4, [0.0, 0.5, 0.9])
        for row in rows:
            r = row["r"]
            assert row["lhs"] == pytest.approx(2 * math.pi * 4 * r**3, rel=1e-12, abs=1e-300)
            assert row["bound"] == pytest.approx(2.0 / (1 - r) ** (1 / 1.5), rel=1e-12)
        assert sum(r["max_ratio"] for r in rows) == 1
        with pytest.raises(ParameterError):
            ex.check_lemma32(power(4), 1.5, 4, [1.0])
        res = ex.run_sweep(ex.SweepConfig("lemma32", "lacunary", [3, 4], p=1.5, r_list=[0.5, 0.9]))
        assert len(res.rows) == 4 and res.fit is None

    def test_csv_schema_and_determinism(self, monkeypatch):
        cfg = dict(theorem="pommerenke", family="random-polynomial", n_list=[4, 8, 16], seed=5, p=1.0)
        monkeypatch.setenv("BERNLAB_THREADS", "1")
        a = ex.run_sweep(ex.SweepConfig(**cfg)).to_csv()
        monkeypatch.setenv("BERNLAB_THREADS", "4")
        b = ex.run_sweep(ex.SweepConfig(**cfg)).to_csv()
        assert a == b
        lines = a.split("\r\n")
        assert lines[0].startswith("#schema=bernlab.sweep.theorem-pommerenke.v1;columns=n,")
        assert lines[1].split(",")[0] == "n"

    def test_plot(self, tmp_path):
        pytest.importorskip("matplotlib")
        res = ex.run_sweep(ex.SweepConfig("1", "power", [2, 4, 8], p=2))
        res.plot_svg(tmp_path / "p.svg")
        assert (tmp_path / "p.svg").read_text().lstrip().startswith("<?xml")


class TestHaymanWitness:
    @pytest.mark.parametrize("lam", [0.5, 1.0, 1.5])
    def test_monomial(self, lam):
        w = ex.hayman_witness_search(power(4), 0.9, lam, 4)
        assert w.found and 2 * 0.9 - 1 <= w.r_tilde <= 0.9
        assert w.lhs <= w.rhs
        # closed form: 2 pi n^2 r~^(n lam - 2) against 4 n r^(n lam) / (lam (1 - r))
        assert w.lhs == pytest.approx(2 * math.pi * 16 * w.r_tilde ** (4 * lam - 2), rel=1e-10)

    def test_zero_on_candidate_circle(self):
        # the first candidate radius 2r - 1 = 0.5 passes through the zero at 0.5
        f = Polynomial([-0.5, 1.0])
        w = ex.hayman_witness_search(f, 0.75, 1.0, 1)
        assert w.found

    def test_arguments(self):
        with pytest.raises(ParameterError):
            ex.hayman_witness_search(power(2), 0.4, 1.0, 2)
        with pytest.raises(ParameterError):
            ex.hayman_witness_search(power(2), 0.9, 2.0, 2)


class TestSplitRadius:
    def test_monomial(self):
        d = ex.split_radius_diagnostic(power(16), 2, 1.0)
        assert d.r_split == pytest.approx(1 - 1 / 16)
        assert d.total == pytest.approx(d.full, rel=1e-12)
        assert d.inner == pytest.approx(2 * math.pi * 16 / 17 * d.r_split**17, rel=1e-10)

    def test_lacunary_inner_ratio(self):
        f = lacunary_partial_sum(6)
        d = ex.split_radius_diagnostic(f, 2, 2.0, n_bound=64)
        assert 0 < d.inner < d.full
        assert np.isfinite(d.inner_ratio)

    def test_bad_k(self):
        with pytest.raises(ParameterError):
            ex.split_radius_diagnostic(power(2), 2, 0.0)
