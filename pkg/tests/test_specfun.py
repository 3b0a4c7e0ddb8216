import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import roots_hermite

from oscprop import specfun as sf

# reference values from 30-digit mpmath evaluations
CHARLIER_5_03_4 = 7193.5925925925925926
CHARLIER_2_15_07 = -0.026666666666666666667
LAGUERRE_5_15_22 = -0.80454641666666666667
HERMITE_7_09 = 205.0434432
PSI_5_13 = -0.39939146281375073457
PSI_150_3 = -0.0093819278243413525908


class TestHermite:
    def test_low_degrees(self):
        assert sf.hermite(0, 3.7) == 1.0
        assert sf.hermite(1, 0.5) == 1.0
        assert sf.hermite(4, 0.0) == 12.0

    def test_reference_value(self):
        assert sf.hermite(7, 0.9) == pytest.approx(HERMITE_7_09, rel=1e-14)

    def test_matches_numpy(self):
        x = np.linspace(-3, 3, 13)
        for n in range(12):
            ref = np.polynomial.hermite.hermval(x, [0] * n + [1])
            np.testing.assert_allclose(sf.hermite(n, x), ref, rtol=1e-12, atol=1e-9)

    def test_overflow_is_reported(self):
        with pytest.raises(OverflowError):
            sf.hermite(400, 30.0)

    def test_bad_degree(self):
        with pytest.raises(ValueError):
            sf.hermite(-1, 0.0)
        with pytest.raises(ValueError):
            sf.hermite(1.5, 0.0)


class TestWavefunctions:
    def test_values_at_origin(self):
        assert sf.osc_wavefunction(0, 0.0) == pytest.approx(np.pi ** -0.25, rel=1e-15)
        assert sf.osc_wavefunction(1, 0.0) == 0.0

    def test_reference_values(self):
        assert sf.osc_wavefunction(5, 1.3) == pytest.approx(PSI_5_13, rel=1e-13)
        assert sf.osc_wavefunction(150, 3.0) == pytest.approx(PSI_150_3, rel=1e-11)

    def test_far_tail_is_finite(self):
        vals = sf.osc_basis(300, np.array([25.0, 40.0, 60.0]))
        assert np.all(np.isfinite(vals))

    def test_orthonormality(self):
        x, w = roots_hermite(2 * 20 + 16)
        basis = sf.osc_basis(20, x) * np.exp(x * x / 2)
        gram = (basis * w) @ basis.T
        np.testing.assert_allclose(gram, np.eye(21), atol=1e-10)

    def test_normalisation_of_psi3(self):
        x, w = roots_hermite(40)
        vals = sf.osc_wavefunction(3, x) * np.exp(x * x / 2)
        assert np.sum(w * vals ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_ladder_identities(self):
        h = 1e-5
        x = np.linspace(-3, 3, 11)
        for n in range(11):
            d = (sf.osc_wavefunction(n, x + h) - sf.osc_wavefunction(n, x - h)) / (2 * h)
            psi = sf.osc_wavefunction(n, x)
            raise_ = (x * psi - d) / math.sqrt(2)
            np.testing.assert_allclose(raise_, math.sqrt(n + 1) * sf.osc_wavefunction(n + 1, x),
                                       atol=1e-6)
            if n:
                lower = (x * psi + d) / math.sqrt(2)
                np.testing.assert_allclose(lower, math.sqrt(n) * sf.osc_wavefunction(n - 1, x),
                                           atol=1e-6)

    def test_parity(self):
        x = np.linspace(0.1, 4, 9)
        for n in range(8):
            np.testing.assert_allclose(sf.osc_wavefunction(n, -x),
                                       (-1) ** n * sf.osc_wavefunction(n, x), atol=1e-15)

    def test_energy(self):
        assert sf.energy(3, 2.0) == 7.0


class TestCharlier:
    def test_trivial_cases(self):
        for n in range(6):
            assert sf.charlier(n, 0.7, 0) == pytest.approx(1.0, rel=1e-14)
        for x in (0.3, 2.0, 5.5):
            assert sf.charlier(1, 0.7, x) == pytest.approx(1 - x / 0.7)

    def test_reference_values(self):
        assert sf.charlier(5, 0.3, 4) == pytest.approx(CHARLIER_5_03_4, rel=1e-12)
        assert sf.charlier(2, 1.5, 0.7) == pytest.approx(CHARLIER_2_15_07, rel=1e-12)

    def test_recurrence_matches_series(self):
        rec = sf.charlier(5, 0.3, 4)
        ser = sf.charlier_series(5, 0.3, 4)
        assert abs(rec - ser) <= 1e-10 * abs(ser)

    def test_self_duality(self):
        for n in range(9):
            for m in range(9):
                a, b = sf.charlier(n, 0.8, m), sf.charlier(m, 0.8, n)
                assert a == pytest.approx(b, rel=1e-12, abs=1e-12)
                assert sf.charlier_dual(n, 0.8, m) == pytest.approx(a, rel=1e-12, abs=1e-12)

    def test_orthogonality(self):
        mu, n_max = 0.5, 10
        k = np.arange(60)
        w = sf.poisson_weight(mu, k)
        table = sf.charlier_table(n_max, mu, k.astype(float))
        gram = (table * w) @ table.T
        norms = np.array([math.factorial(n) / mu ** n for n in range(n_max + 1)])
        np.testing.assert_allclose(gram / np.sqrt(np.outer(norms, norms)), np.eye(n_max + 1),
                                   atol=1e-10)

    def test_laguerre_relation(self):
        lhs = sf.charlier(3, 0.4, 5)
        rhs = (-0.4) ** -3 * math.factorial(3) * sf.laguerre(3, 5 - 3, 0.4)
        assert lhs == pytest.approx(-599.0, rel=1e-12)
        assert abs(lhs - rhs) <= 1e-10 * abs(lhs)

    def test_vectorised(self):
        x = np.array([0.5, 1.5, 2.5])
        np.testing.assert_allclose(sf.charlier(3, 1.2, x), [sf.charlier(3, 1.2, v) for v in x])

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            sf.charlier(-1, 0.5, 1.0)
        with pytest.raises(ValueError):
            sf.charlier(2, 0.0, 1.0)
        with pytest.raises(ValueError):
            sf.charlier_series(2, 0.5, 1.5)


class TestHyp2f0:
    def test_examples(self):
        assert sf.hyp2f0_terminating(0, 5, 0.3) == 1.0
        assert sf.hyp2f0_terminating(1, 1, 0.25) == pytest.approx(1.25)
        assert sf.hyp2f0_terminating(2, 2, 1.0) == 7.0

    def test_complex_argument(self):
        val = sf.hyp2f0_terminating(1, 1, 0.5j)
        assert isinstance(val, complex)
        assert val == 1 + 0.5j

    @given(st.integers(0, 8), st.integers(0, 8), st.floats(-3, 3))
    def test_symmetric_in_n_m(self, n, m, s):
        assert sf.hyp2f0_terminating(n, m, s) == pytest.approx(sf.hyp2f0_terminating(m, n, s),
                                                             rel=1e-12, abs=1e-12)

    def test_negative_index(self):
        with pytest.raises(ValueError):
            sf.hyp2f0_terminating(-1, 2, 0.1)


class TestLaguerre:
    def test_low_degrees(self):
        assert sf.laguerre(0, 1.7, 3.2) == 1.0
        assert sf.laguerre(1, 1.7, 3.2) == pytest.approx(1 + 1.7 - 3.2)

    def test_reference_value(self):
        assert sf.laguerre(5, 1.5, 2.2) == pytest.approx(LAGUERRE_5_15_22, rel=1e-13)

    def test_matches_scipy(self):
        from scipy.special import eval_genlaguerre
        x = np.linspace(0, 6, 7)
        for n in range(8):
            np.testing.assert_allclose(sf.laguerre(n, 0.5, x), eval_genlaguerre(n, 0.5, x),
                                       rtol=1e-11, atol=1e-12)


class TestHermiteKernelIntegral:
    """int H_m H_n e^{-(x-y)^2} dx = sqrt(pi) 2^n m! y^{n-m} L_m^{n-m}(-2 y^2)."""

    @pytest.mark.parametrize("y", [0.3, 1.0])
    def test_quadrature(self, y):
        z, w = roots_hermite(40)
        for n in range(7):
            for m in range(n + 1):
                num = np.sum(w * sf.hermite(m, z + y) * sf.hermite(n, z + y))
                ref = (math.sqrt(math.pi) * 2 ** n * math.factorial(m) * y ** (n - m)
                       * sf.laguerre(m, n - m, -2 * y * y))
                assert num == pytest.approx(ref, rel=1e-8)


class TestPoisson:
    def test_examples(self):
        assert sf.poisson_weight(1.3, 0) == pytest.approx(math.exp(-1.3), rel=1e-15)
        assert sf.poisson_weight(1.0, 2) == pytest.approx(math.exp(-1) / 2, rel=1e-15)

    @settings(max_examples=30)
    @given(st.floats(0.01, 30.0))
    def test_normalisation_within_tail(self, mu):
        K = int(mu + 12 * math.sqrt(mu) + 30)
        total = math.fsum(sf.poisson_weight(mu, np.arange(K + 1)))
        assert abs(total - 1) <= sf.poisson_tail(mu, K) + 1e-13

    def test_rejects_nonpositive_mu(self):
        with pytest.raises(ValueError):
            sf.poisson_weight(0.0, 1)


class TestCharlierLog:
    def test_matches_direct_value(self):
        for n, m, mu in [(5, 4, 0.3), (3, 7, 2.5), (6, 6, 0.9)]:
            sign, logmag = sf.charlier_dual_log(n, mu, m)
            assert sign * math.exp(logmag) == pytest.approx(sf.charlier_dual(n, mu, m), rel=1e-12)

    def test_tiny_mu_leading_term(self):
        # c_n^mu(m) ~ (-1)^K n! m! / ((n-K)! (m-K)! K!) mu^{-K}, K = min(n, m)
        sign, logmag = sf.charlier_dual_log(4, 1e-60, 6)
        lead = math.factorial(4) * math.factorial(6) / (math.factorial(2) * math.factorial(4))
        assert sign == 1.0
        assert logmag == pytest.approx(math.log(lead) + 4 * 60 * math.log(10), rel=1e-14)

    def test_zero_index(self):
        assert sf.charlier_dual_log(0, 1e-30, 5) == (1.0, 0.0)
