import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscprop import amplitudes as amp
from oscprop import coeffs as co
from oscprop import kernels as ker
from oscprop import oracle
from oscprop import propagators as prop
from oscprop import specfun as sf


def _special_drive(omega, mu):
    return co.drive_from_delta(lambda s: np.sqrt(mu) * np.exp(1j * (omega - 1) * s), omega)


class TestMatrixElements:
    def test_identity_element(self):
        for m in range(5):
            for n in range(5):
                assert amp.matrix_element_T(0, 0, 0, m, n) == (1.0 if m == n else 0.0)

    def test_unitarity(self):
        T = amp.matrix_T(0.7, 0.4, 0.2, 80, cols=6)
        gram = T.conj().T @ T
        np.testing.assert_allclose(gram, np.eye(7), atol=1e-9)

    def test_against_quadrature(self, gl):
        alpha, beta, gamma, m, n = 0.5, 1.0, 0.0, 2, 3
        x, w = gl(-20, 20, 800)
        ref = np.sum(w * sf.osc_wavefunction(m, x) * np.exp(1j * (gamma + beta * x))
                     * sf.osc_wavefunction(n, x + alpha))
        assert abs(amp.matrix_element_T(alpha, beta, gamma, m, n) - ref) < 1e-8 * abs(ref)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(-1.5, 1.5), st.floats(-1.5, 1.5), st.floats(-3, 3))
    def test_recurrence_matches_closed_form(self, alpha, beta, gamma):
        T = amp.matrix_T(alpha, beta, gamma, 6)
        for m in range(7):
            for n in range(7):
                assert T[m, n] == pytest.approx(amp.matrix_element_T(alpha, beta, gamma, m, n),
                                                abs=1e-12)

    def test_closed_t_form(self):
        beta = 0.8
        t = amp.t_matrix(beta, 5)
        for m in range(6):
            for n in range(6):
                ref = (1j ** (m + n) / math.sqrt(2 ** (m + n) * math.factorial(m) * math.factorial(n))
                       * math.exp(-beta ** 2 / 4) * beta ** (m + n) * sf.charlier(m, beta ** 2 / 2, n))
                assert t[m, n] == pytest.approx(ref, abs=1e-14)

    def test_addition_formula(self):
        t1, t2 = amp.t_matrix(0.6, 6, cols=96), amp.t_matrix(0.9, 6, cols=96)
        np.testing.assert_allclose(t1 @ t2.T, amp.t_matrix(1.5, 6), atol=1e-8)

    @pytest.mark.parametrize("x", [0.0, 1.0])
    def test_expansion_of_plane_wave(self, x):
        beta = 0.7
        t = amp.t_matrix(beta, 96, cols=6)
        psi = sf.osc_basis(96, x)
        for n in range(7):
            lhs = np.sum(t[:, n] * psi)
            assert abs(lhs - np.exp(1j * beta * x) * psi[n]) < 1e-7


class TestGeneral:
    def test_identity_limit(self):
        drive = co.DriveSpec(co.Cosine(1.0, 1.0), co.Constant(0.5), 1.0)
        A = amp.cnm_general(drive, 1e-8, 10)
        np.testing.assert_allclose(A.entries, np.eye(11), atol=1e-6)

    def test_special_drive_closed_form(self):
        omega, mu, t, N = 1.3, 0.25, 0.9, 12
        general = amp.cnm_general(_special_drive(omega, mu), t, N)
        closed = amp.cnm_special(omega, mu, t, N)
        np.testing.assert_allclose(general.entries, closed.entries, atol=1e-10)

    def test_special_is_dressed_t_matrix(self):
        omega, mu, t, N = 1.3, 0.25, 0.9, 10
        beta = 2 * math.sqrt(2 * mu) * math.sin(t / 2)
        tm = amp.t_matrix(beta, N)
        A = amp.cnm_special(omega, mu, t, N).entries
        base = np.exp(-1j * (mu * np.sin(t) + (omega / 2 - mu) * t))
        for n in range(N + 1):
            for m in range(N + 1):
                ref = ((-1) ** (n + m) * base
                       * np.exp(-1j * ((omega - 1) * n + 0.5 * (n + m)) * t) * tm[m, n])
                assert abs(A[n, m] - ref) < 1e-12

    def test_column_norms(self):
        drive = co.DriveSpec(co.Cosine(2.0, 1.0), co.Constant(0.3), 1.0)
        A = amp.cnm_general(drive, 1.4, 64)
        np.testing.assert_allclose(A.column_norms()[:9], 1.0, atol=1e-8)

    def test_charlier_entries(self):
        drive = co.DriveSpec(co.Sine(0.8, 1.2), co.Cosine(0.3, 0.4), 1.1)
        rec = amp.cnm_general(drive, 0.7, 8)
        lit = amp.cnm_general(drive, 0.7, 8, method="charlier")
        np.testing.assert_allclose(lit.entries, rec.entries, atol=1e-12)
        with pytest.raises(ValueError):
            amp.cnm_general(drive, 0.7, 8, method="other")

    def test_kernel_from_double_sum(self):
        # the plain double sum converges only conditionally; damping row n by r^n
        # gives the kernel of the Mehler operator composed with the propagator
        drive = co.DriveSpec(co.Cosine(0.6, 1.0), co.Sine(0.3, 0.5), 1.0)
        t, x, y, N, r = 0.8, 0.3, -0.5, 96, np.exp(-0.3)
        A = amp.cnm_general(drive, t, N)
        damped = (r ** np.arange(N + 1) * sf.osc_basis(N, x)) @ A.entries @ sf.osc_basis(N, y)
        ref = oracle.brute_force_compose(ker.mehler(r), prop.forced_kernel(drive, t), x, y)
        assert abs(damped - ref) < 1e-6

    def test_truncation_validation(self):
        drive = co.DriveSpec()
        with pytest.raises(ValueError):
            amp.cnm_general(drive, 0.5, -1)
        with pytest.raises(ValueError):
            amp.cnm_general(drive, 0.5, 2.5)
        with pytest.raises(ValueError):
            amp.cnm_general(drive, 0.5, amp.N_LIMIT + 1)

    def test_column_accessor(self):
        A = amp.cnm_special(1.2, 0.3, 0.5, 4)
        col = A.column(2)
        col[:] = 0
        assert np.any(A.entries[:, 2] != 0)


class TestLandau:
    params = prop.LandauParams(H_field=1.3, charge_sign=-1, mu_mag=0.3)

    def test_zero_force_is_diagonal(self):
        A = amp.cnm_landau(self.params, co.ZERO, 1.1, 0.2, 8).entries
        np.testing.assert_allclose(np.abs(np.diag(A)), 1.0, atol=1e-14)
        assert np.max(np.abs(A - np.diag(np.diag(A)))) < 1e-14

    def test_poisson_law(self):
        F = co.Constant(0.6)
        A = amp.cnm_landau(self.params, F, 1.7, 0.2, 40)
        mu = amp.landau_poisson_mean(self.params, F, 1.7, 0.2)
        for n in range(11):
            assert abs(abs(A.entries[n, 0]) ** 2 - sf.poisson_weight(mu, n)) < 1e-10
            assert amp.transition_prob_ground(self.params, F, 1.7, 0.2, n) == pytest.approx(
                abs(A.entries[n, 0]) ** 2, abs=1e-12)
        assert abs(A.column_norms()[0] - 1) <= sf.poisson_tail(mu, 40) + 1e-14

    def test_transition_probabilities_sum_to_one(self):
        F = np.cos
        total = math.fsum(amp.transition_prob_ground(self.params, F, 1.5, 0.0, n) for n in range(60))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_zero_force_probabilities(self):
        assert amp.transition_prob_ground(self.params, co.ZERO, 1.0, 0.0, 0) == 1.0
        assert amp.transition_prob_ground(self.params, co.ZERO, 1.0, 0.0, 3) == 0.0


class TestDiffusion:
    kappa, eps = 0.75, 0.4

    def drive(self):
        k = 2 * self.kappa - 1
        return (lambda s: -self.eps * np.cosh(k * np.asarray(s)),
                lambda s: self.eps * np.sinh(k * np.asarray(s)))

    def test_identity_limit(self):
        f, g = self.drive()
        A = amp.cnm_diffusion(self.kappa, f, g, 1e-8, 8)
        np.testing.assert_allclose(A.entries, np.eye(9), atol=1e-6)

    def test_special_closed_form(self):
        f, g = self.drive()
        general = amp.cnm_diffusion(self.kappa, f, g, 0.6, 12).entries
        closed = amp.cnm_diffusion_special(self.kappa, self.eps, 0.6, 12).entries
        np.testing.assert_allclose(general, closed, atol=1e-9, rtol=1e-9)

    def test_positive_entries(self):
        # a, b >= 0 for nonnegative drives, which makes every factor positive
        A = amp.cnm_diffusion(self.kappa, co.Constant(1.0), co.Constant(0.5), 0.5, 10).entries
        assert np.isrealobj(A) and np.all(A > 0)

    def test_special_drive_sign_pattern(self):
        f, g = self.drive()
        A = amp.cnm_diffusion(self.kappa, f, g, 0.5, 8).entries
        n = np.arange(9)
        assert np.all(A * (-1.0) ** (n[:, None] - n[None, :]) > 0)

    def test_long_time_decay(self):
        A = amp.cnm_diffusion_special(1.0, self.eps, 20.0, 16).entries
        assert np.max(np.abs(A)) < 1e-6

    def test_zero_eps_is_diagonal(self):
        A = amp.cnm_diffusion_special(self.kappa, 0.0, 0.5, 4).entries
        np.testing.assert_allclose(A, np.diag(np.exp(-((2 * self.kappa - 1) * np.arange(5)
                                                       + self.kappa) * 0.5)))

    def test_semigroup(self):
        f, g = co.Constant(0.3), co.Constant(0.2)
        # constant drives are time homogeneous, so c(t1 + t2) = c(t2) c(t1)
        a = amp.cnm_diffusion(0.8, f, g, 0.4, 60).entries
        b = amp.cnm_diffusion(0.8, f, g, 0.3, 60).entries
        c = amp.cnm_diffusion(0.8, f, g, 0.7, 60).entries
        np.testing.assert_allclose((b @ a)[:10, :10], c[:10, :10], atol=1e-10)


def test_special_is_continuous_at_zero_time():
    exact = amp.cnm_special(1.3, 0.25, 0.0, 8).entries
    np.testing.assert_allclose(exact, np.eye(9), atol=1e-15)
    np.testing.assert_allclose(amp.cnm_special(1.3, 0.25, 1e-12, 8).entries, exact, atol=1e-10)


def test_diffusion_identity_at_zero_time():
    A = amp.cnm_diffusion(0.75, co.Constant(1.0), co.Constant(0.5), 0.0, 6)
    np.testing.assert_array_equal(A.entries, np.eye(7))
