import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cauchy_deriv import ConvergenceError, DomainError
from cauchy_deriv.scaled import relative_difference
from cauchy_deriv.sfun import (UnknownFunctionError, catalog, lambert_w0, lambert_w0_complex,
                               log_gamma_complex, lookup, names)
from cauchy_deriv.sfun.catalog import bernoulli_number, bell_number, sec6_coefficient

W1 = 0.5671432904097838


def fixed_point_w(x, iters=200):
    w = 0.5
    for _ in range(iters):
        w = (w * w + x * math.exp(-w)) / (w + 1)
    return w


class TestLambert:
    def test_values(self):
        assert lambert_w0(0.0) == 0.0
        assert lambert_w0(math.e) == pytest.approx(1.0, rel=1e-15)
        assert lambert_w0(1.0) == pytest.approx(fixed_point_w(1.0), rel=1e-15)
        assert lambert_w0(-math.exp(-1)) == -1.0

    def test_domain(self):
        with pytest.raises(DomainError):
            lambert_w0(-0.5)

    def test_identity_real(self):
        xs = np.concatenate([-np.geomspace(math.exp(-1) * (1 - 1e-12), 1e-300, 300),
                             np.geomspace(1e-300, 1e300, 700)])
        for x in xs:
            w = lambert_w0(x)
            assert abs(w * math.exp(w) - x) <= 1e-13 * max(1.0, abs(x))

    def test_identity_complex(self):
        rng = np.random.default_rng(7)
        mods = np.geomspace(1e-6, 1e8, 1000)
        args = rng.uniform(-math.pi, math.pi, 1000)
        for r, t in zip(mods, args):
            z = complex(r * math.cos(t), r * math.sin(t))
            w = lambert_w0_complex(z)
            assert abs(w * np.exp(w) - z) <= 1e-13 * max(1.0, abs(z))

    def test_complex_real_axis(self):
        assert lambert_w0_complex(1.0) == pytest.approx(W1, rel=1e-15)
        assert lambert_w0_complex(math.e) == pytest.approx(1.0, rel=1e-15)

    def test_negative_axis_upper_branch(self):
        w = lambert_w0_complex(-2005.5)
        assert 0 < w.imag < math.pi
        assert abs(w * np.exp(w) + 2005.5) <= 1e-13 * 2005.5


class TestLogGamma:
    def test_values(self):
        assert log_gamma_complex(1.0) == 0
        assert log_gamma_complex(0.5).real == pytest.approx(0.5 * math.log(math.pi), rel=1e-15)
        exact = math.fsum(math.log(k) for k in range(1, 101))
        assert log_gamma_complex(101.0).real == pytest.approx(exact, rel=1e-13)

    def test_pole(self):
        with pytest.raises(DomainError):
            log_gamma_complex(-3.0)

    def test_reflection_consistency(self):
        z = np.array([-2.5 + 0.3j, -10.2 - 4j, 0.1 + 7j])
        lhs = np.exp(log_gamma_complex(z) + log_gamma_complex(1 - z))
        np.testing.assert_allclose(lhs, np.pi / np.sin(np.pi * z), rtol=1e-11)


class TestCatalog:
    def test_required_entries(self):
        for name in ("exp", "cos", "sin", "bessel_i", "bessel_scaled", "airy_ai", "airy_bi",
                     "exp_neg_sq", "erf", "bell", "rgamma", "qpochhammer", "f_beta", "sec6",
                     "bernoulli_gen", "fornberg_log", "fornberg_shift"):
            assert name in names()

    def test_metadata(self):
        exp = lookup("exp").function
        assert (exp.order, exp.type_, exp.radius_of_convergence) == (1.0, 1.0, math.inf)
        ai = lookup("airy_ai").function
        assert ai.order == 1.5 and ai.type_ == pytest.approx(2 / 3)
        assert ai.saddle_rays[0] == pytest.approx(2 * math.pi / 3)

    def test_unknown(self):
        with pytest.raises(UnknownFunctionError):
            lookup("nope")
        with pytest.raises(UnknownFunctionError):
            lookup("exp:2")

    def test_exact_tables(self):
        assert bernoulli_number(100) == Fraction(
            -94598037819122125295227433069493721872702841533066936133385696204311395415197247711,
            33330)
        assert [bell_number(k) for k in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
        assert sec6_coefficient(0) == 1 and sec6_coefficient(2) == 3

    def test_fornberg_log_closed_form(self):
        for n in (11, 20, 50):
            want = Fraction((-1) ** (n - 1), 11 * math.comb(n, 11))
            from cauchy_deriv.sfun.catalog import fornberg_log_coefficient
            assert fornberg_log_coefficient(n) == want
        entry = lookup("fornberg_log")
        from cauchy_deriv.quad import reference_condition_number
        kappa = reference_condition_number(entry.function, entry.coefficient(50), 50, 1.0)
        assert kappa == pytest.approx(7.4e13, rel=0.02)

    @pytest.mark.parametrize("name", ["exp", "cos", "sin", "bessel_i:2", "bessel_j:1", "bessel_scaled:1",
                                      "erf", "exp_neg_sq", "airy_ai", "airy_bi", "bell",
                                      "qpochhammer:0.5", "f_beta:-1", "f_beta:11/2", "sec6",
                                      "bernoulli_gen", "fornberg_log", "fornberg_shift"])
    def test_oracle_matches_evaluator(self, name):
        entry = lookup(name)
        coeffs = np.array([entry.coefficient(k).to_complex() for k in range(31)])
        z = 0.1 * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
        series = np.polyval(coeffs[::-1], z)
        np.testing.assert_allclose(series, entry.function(z), rtol=1e-12)

    def test_rgamma_log_only(self):
        entry = lookup("rgamma")
        assert entry.function.evaluate is None
        z = np.array([2.0 + 0j, 0.5 + 0j])
        np.testing.assert_allclose(np.exp(entry.function.log(z)), [1.0, 1 / math.sqrt(math.pi)],
                                   rtol=1e-14)

    def test_airy_growth_ray(self):
        f = lookup("airy_ai").function
        r = 20.0
        z = r * np.exp(2j * np.pi / 3)
        got = f.log(np.array([z]))[0].real
        zeta = 2 / 3 * r ** 1.5
        want = zeta - 0.25 * math.log(r) - math.log(2 * math.sqrt(math.pi))
        # leading order is off by the first correction 5/(72 zeta) ~ 1.16e-3 at r = 20
        assert abs(got - want) <= 1.5e-3
        assert abs(got - want - 5 / (72 * zeta)) <= 1e-5

    def test_qseries_truncation(self):
        f = lookup("qpochhammer:0.5").function
        for z in (3.0 + 1j, -0.7 + 0j, 100.0 + 0j, 1e6 - 2e5j):
            base = f.log(np.array([z]))[0]
            k_stop = next(k for k in range(1000) if 0.5 ** k * abs(z) < 1e-18)
            longer = base + sum(np.log1p(z * 0.5 ** k) for k in range(k_stop + 1, k_stop + 60))
            assert abs(np.expm1(longer - base)) < 1e-15

    def test_catalog_lists_entries(self):
        assert len(catalog()) == len(names())

    def test_concurrent_oracle(self):
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(4) as pool:
            got = list(pool.map(bell_number, [60, 61, 62, 63] * 5))
        assert got[:4] == [bell_number(k) for k in (60, 61, 62, 63)]


@settings(max_examples=100, deadline=None)
@given(st.floats(-math.exp(-1), 1e200))
def test_lambert_identity_property(x):
    w = lambert_w0(x)
    assert abs(w * math.exp(w) - x) <= 1e-13 * max(1.0, abs(x))
