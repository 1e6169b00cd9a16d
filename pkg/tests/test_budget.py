import math

import pytest

from cauchy_deriv import DomainError
from cauchy_deriv.budget import (Regime, nodes_darboux, nodes_entire, nodes_finite_R,
                                 nodes_prg_quasioptimal)


class TestFiniteR:
    def test_bernoulli_radius(self):
        b = nodes_finite_R(1e-12, 6.22, 2 * math.pi)
        assert b.m_estimate == pytest.approx(2733.80, abs=0.01)
        assert b.regime is Regime.FINITE_R and b.recommendation == 2734

    def test_radius_over_e(self):
        assert nodes_finite_R(1e-15, 1.0, math.e).m_estimate == pytest.approx(15 * math.log(10))

    def test_eps_near_one_floors(self):
        b = nodes_finite_R(1 - 1e-12, 1.0, 2.0, n=5)
        assert b.m_estimate < 1e-10 and b.recommendation == 6

    def test_r_at_R(self):
        with pytest.raises(DomainError):
            nodes_finite_R(1e-12, 2.0, 2.0)


class TestEntire:
    @pytest.mark.parametrize("eps, want, tol", [("1e-12", 48.21, 0.05), ("1e-100", 140.30, 0.05),
                                                ("1e-1000", 706.73, 0.5)])
    def test_exp_table(self, eps, want, tol):
        assert nodes_entire(eps, 10.0, 1.0, 1.0).m_estimate == pytest.approx(want, abs=tol)

    def test_float_and_string_agree(self):
        assert nodes_entire(1e-12, 10.0, 1.0, 1.0).m_estimate == pytest.approx(
            nodes_entire("1e-12", 10.0, 1.0, 1.0).m_estimate, rel=1e-14)

    def test_bad_eps(self):
        for eps in (0.0, 1.0, 2.0, "0"):
            with pytest.raises(DomainError):
                nodes_entire(eps, 10.0, 1.0, 1.0)


class TestPrg:
    def test_values(self):
        assert nodes_prg_quasioptimal(1e-15, 100, 1.0).m_estimate == pytest.approx(306.3, abs=0.1)
        assert nodes_prg_quasioptimal(1e-12, 10, 1.0).m_estimate == pytest.approx(54.8, abs=0.05)
        assert nodes_prg_quasioptimal(1e-9, 0, 2.0).m_estimate == pytest.approx(2 * 9 * math.log(10))

    @pytest.mark.parametrize("n", [10, 50, 100, 200])
    @pytest.mark.parametrize("k", [6, 9, 12, 15])
    def test_agrees_with_entire_at_quasi_optimal_radius(self, n, k):
        a = nodes_entire(10.0 ** -k, float(n), 1.0, 1.0).m_estimate
        b = nodes_prg_quasioptimal(10.0 ** -k, n, 1.0).m_estimate
        assert 1 / 1.5 <= a / b <= 1.5


class TestDarboux:
    def test_suboptimal_alpha(self):
        assert nodes_darboux(1e-14, 100, -1.0, alpha=4.0).m_estimate == pytest.approx(806, abs=1)

    def test_pole_power(self):
        assert nodes_darboux(1e-15, 100, -6.0).m_estimate == pytest.approx(690.8, abs=0.05)

    def test_simple_pole(self):
        assert nodes_darboux(1e-15, 100, -1.0).m_estimate == pytest.approx(15909, rel=5e-4)

    def test_hardy_warns(self):
        with pytest.warns(RuntimeWarning):
            b = nodes_darboux(1e-15, 100, 5.5)
        assert b.regime is Regime.FINITE_R


@pytest.mark.parametrize("fn", [
    lambda e: nodes_finite_R(e, 1.0, 3.0, n=40),
    lambda e: nodes_entire(e, 5.0, 1.5, 0.7, n=40),
    lambda e: nodes_prg_quasioptimal(e, 40, 2.0),
    lambda e: nodes_darboux(e, 40, -3.0),
])
def test_monotone_in_eps_and_floor(fn):
    prev = 0.0
    for k in range(1, 40):
        b = fn(10.0 ** -k)
        assert b.m_estimate > prev > -1
        assert b.recommendation >= 41
        prev = b.m_estimate
