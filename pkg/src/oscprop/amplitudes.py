"""Transition amplitudes between oscillator states.

Matrices are built with stable two-term recurrences derived from the bilinear
generating function of the Charlier polynomials; the literal closed forms
(Charlier polynomial times log/phase-split prefactors) are available entrywise
for cross-checks.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import specfun
from .coeffs import (DriveSpec, compute_coeffs, compute_coeffs_diffusion,
                     compute_coeffs_landau)

N_LIMIT = 128
_EXTRA_ROWS = 48


@dataclass
class AmplitudeMatrix:
    """Truncated matrix c_nm(t), 0 <= n, m <= N.

    Attributes
    ----------
    entries : ndarray, shape (N+1, N+1)
    t, t0 : float
    variant : str
    N : int
    tail_bound : float
        Largest estimated mass of a column beyond row N.
    """
    entries: np.ndarray
    t: float
    variant: str
    N: int
    tail_bound: float
    t0: float = 0.0

    def column_norms(self):
        """Squared column norms sum_n |c_nm|^2."""
        return np.sum(np.abs(self.entries) ** 2, axis=0)

    def column(self, m):
        return self.entries[:, m].copy()


def _check_N(N):
    if int(N) != N or N < 0:
        raise ValueError(f"truncation must be a nonnegative integer, got {N!r}")
    if N > N_LIMIT:
        raise ValueError(f"truncation {N} exceeds the supported limit {N_LIMIT}")
    return int(N)


def _sqrt_table(n):
    return np.sqrt(np.arange(n + 1, dtype=float))


def _bilinear(u, v, z, rows, cols):
    """Rows 0..`rows` and columns 0..`cols` of the two-term recurrence

    B[0, m]   = v^m / sqrt(m!)
    B[n+1, m] = (u B[n, m] + z sqrt(m) B[n, m-1]) / sqrt(n+1)
    """
    sq = _sqrt_table(max(rows, cols))
    dtype = np.result_type(u, v, z, complex if np.iscomplexobj([u, v, z]) else float)
    out = np.zeros((rows + 1, cols + 1), dtype=dtype)
    row = np.empty(cols + 1, dtype=dtype)
    row[0] = 1.0
    for m in range(1, cols + 1):
        row[m] = row[m - 1] * v / sq[m]
    out[0] = row
    for n in range(rows):
        nxt = u * row
        nxt[1:] += z * sq[1:cols + 1] * row[:-1]
        row = nxt / sq[n + 1]
        out[n + 1] = row
    return out


def _from_recurrence(a, b, theta, prefactor, rows, cols):
    z = np.exp(-1j * theta)
    u, v = a + b * z, b + a * z
    # i^{n+m} folded into u and v
    return prefactor * _bilinear(1j * u / math.sqrt(2), 1j * v / math.sqrt(2), z, rows, cols)


def _tail(full, N):
    tails = np.sum(np.abs(full[N + 1:, :]) ** 2, axis=0)
    return float(tails.max()) if tails.size else 0.0


def cnm_from_coeffs(a, b, c, theta, N, t=None, t0=0.0, variant="forced"):
    """Amplitude matrix from coefficients (a, b, c) and the phase angle theta = omega t.

    c_nm = e^{i(c - (theta - a b sin theta)/2)} e^{-chi^2/4} i^{n+m}
           (a + b z)^n (b + a z)^m c_m^{chi^2/2}(n) / sqrt(2^{n+m} n! m!)

    with z = e^{-i theta} and chi^2 = a^2 + b^2 + 2 a b cos theta.
    """
    N = _check_N(N)
    chi2 = a * a + b * b + 2 * a * b * np.cos(theta)
    pref = np.exp(1j * (c - 0.5 * (theta - a * b * np.sin(theta)))) * np.exp(-chi2 / 4)
    full = _from_recurrence(a, b, theta, pref, N + _EXTRA_ROWS + int(2 * chi2), N)
    return AmplitudeMatrix(full[:N + 1].copy(), t if t is not None else theta, variant, N,
                           _tail(full, N), t0)


def cnm_entry_charlier(a, b, c, theta, n, m):
    """Single amplitude from the literal Charlier-polynomial closed form (log/phase split)."""
    chi2 = a * a + b * b + 2 * a * b * np.cos(theta)
    z = np.exp(-1j * theta)
    u, v = a + b * z, b + a * z
    phase = c - 0.5 * (theta - a * b * np.sin(theta)) + 0.5 * np.pi * (n + m)
    if chi2 <= 1e-300:
        return complex(np.exp(1j * phase)) if n == m else 0j
    sign, logch = specfun.charlier_dual_log(m, chi2 / 2, n)
    if sign == 0 or (n > 0 and u == 0) or (m > 0 and v == 0):
        return 0j
    logmag = (-chi2 / 4 + n * np.log(abs(u)) * (n > 0) + m * np.log(abs(v)) * (m > 0)
              - 0.5 * (n + m) * np.log(2) - 0.5 * (gammaln(n + 1) + gammaln(m + 1))
              + logch)
    phase += n * np.angle(u) + m * np.angle(v) + (np.pi if sign < 0 else 0.0)
    return complex(np.exp(logmag + 1j * phase))


def cnm_general(drive: DriveSpec, t, N, method="recurrence", coeffs=None):
    """Amplitude matrix of the forced oscillator with constant frequency.

    Parameters
    ----------
    method : {"recurrence", "charlier"}
        The recurrence is the default; "charlier" evaluates every entry from
        the closed form and is meant for moderate chi^2.
    """
    if coeffs is None:
        coeffs = compute_coeffs(drive, t)
    theta = drive.omega * t
    res = cnm_from_coeffs(coeffs.a, coeffs.b, coeffs.c, theta, N, t=t)
    if method == "charlier":
        ent = np.array([[cnm_entry_charlier(coeffs.a, coeffs.b, coeffs.c, theta, n, m)
                         for m in range(N + 1)] for n in range(N + 1)])
        res = AmplitudeMatrix(ent, t, "forced", N, res.tail_bound)
    elif method != "recurrence":
        raise ValueError(f"unknown method {method!r}")
    return res


def cnm_special(omega, mu, t, N):
    """Amplitudes of the special drive in their closed form with beta = 2 sqrt(2 mu) sin(t/2).

    c_nm = e^{-i(mu sin t + (omega/2 - mu) t)} e^{-i((omega-1) n + (n+m)/2) t}
           (-i)^{n+m} beta^{n+m} e^{-beta^2/4} c_n^{beta^2/2}(m) / sqrt(2^{n+m} n! m!)
    """
    N = _check_N(N)
    beta = 2 * np.sqrt(2 * mu) * np.sin(t / 2)
    base = -(mu * np.sin(t) + (omega / 2 - mu) * t)
    out = np.zeros((N + 1, N + 1), dtype=complex)
    for n in range(N + 1):
        for m in range(N + 1):
            ph = base - ((omega - 1) * n + 0.5 * (n + m)) * t - 0.5 * np.pi * (n + m)
            if beta == 0:
                # (-i)^{2n} cancels the sign of the leading Charlier term
                out[n, m] = np.exp(1j * (ph + np.pi * n)) if n == m else 0.0
                continue
            sign, logch = specfun.charlier_dual_log(n, beta * beta / 2, m)
            if sign == 0:
                continue
            logmag = ((n + m) * np.log(abs(beta)) - beta * beta / 4 - 0.5 * (n + m) * np.log(2)
                      - 0.5 * (gammaln(n + 1) + gammaln(m + 1)) + logch)
            sign = sign * (np.sign(beta) ** (n + m))
            out[n, m] = sign * np.exp(logmag + 1j * ph)
    return AmplitudeMatrix(out, t, "special", N, 0.0)


def matrix_element_T(alpha, beta, gamma, m, n):
    """Heisenberg-Weyl matrix element T_mn(alpha, beta, gamma), closed Charlier form.

    T_mn = i^{m-n} e^{i(gamma - alpha beta/2)} e^{-nu/2} u^m v^n c_m^nu(n) / sqrt(m! n!)

    with u = (i alpha + beta)/sqrt(2), v = (i alpha - beta)/sqrt(2), nu = (alpha^2 + beta^2)/2.
    """
    nu = 0.5 * (alpha * alpha + beta * beta)
    phase = gamma - 0.5 * alpha * beta + 0.5 * np.pi * (m - n)
    if nu == 0:
        return complex(np.exp(1j * phase)) if m == n else 0j
    u = (1j * alpha + beta) / math.sqrt(2)
    v = (1j * alpha - beta) / math.sqrt(2)
    sign, logch = specfun.charlier_dual_log(m, nu, n)
    if sign == 0:
        return 0j
    logmag = (-nu / 2 + m * np.log(abs(u)) + n * np.log(abs(v))
              - 0.5 * (gammaln(m + 1) + gammaln(n + 1)) + logch)
    phase += m * np.angle(u) + n * np.angle(v) + (np.pi if sign < 0 else 0.0)
    return complex(np.exp(logmag + 1j * phase))


def matrix_T(alpha, beta, gamma, N, cols=None):
    """Matrix T_mn for 0 <= m <= N, 0 <= n <= cols (default N), by recurrence.

    E[0, n] = i^{-n} v^n / sqrt(n!),  E[m+1, n] = (i u E[m, n] + sqrt(n) E[m, n-1]) / sqrt(m+1)
    """
    cols = N if cols is None else cols
    nu = 0.5 * (alpha * alpha + beta * beta)
    u = (1j * alpha + beta) / math.sqrt(2)
    v = (1j * alpha - beta) / math.sqrt(2)
    pref = np.exp(1j * (gamma - 0.5 * alpha * beta)) * np.exp(-nu / 2)
    return pref * _bilinear(1j * u, -1j * v, 1.0, N, cols)


def t_matrix(beta, N, cols=None):
    """Special case t_mn(beta) = T_mn(0, beta, 0)."""
    return matrix_T(0.0, beta, 0.0, N, cols)


def cnm_landau(params, F, t, t0, N, coeffs=None):
    """Amplitudes between Landau states; a and b are made dimensionless with the magnetic length."""
    if coeffs is None:
        coeffs = compute_coeffs_landau(params, F, t, t0)
    ell = params.length
    theta = params.omega_H * (t - t0)
    return cnm_from_coeffs(coeffs.a * ell, coeffs.b * ell, coeffs.c, theta, N,
                           t=t, t0=t0, variant="landau")


def landau_poisson_mean(params, F, t, t0, coeffs=None):
    """mu = (a^2 + b^2 + 2 a b cos(omega_H (t - t0))) / 2 in dimensionless units."""
    if coeffs is None:
        coeffs = compute_coeffs_landau(params, F, t, t0)
    a, b = coeffs.a * params.length, coeffs.b * params.length
    return 0.5 * (a * a + b * b + 2 * a * b * np.cos(params.omega_H * (t - t0)))


def transition_prob_ground(params, F, t, t0, n, coeffs=None):
    """Probability of finding Landau level n at t when starting from the ground state.

    Poisson law e^{-mu} mu^n / n!. The bound mu < 1 is not enforced.
    """
    mu = landau_poisson_mean(params, F, t, t0, coeffs)
    if mu == 0:
        return 1.0 if n == 0 else 0.0
    return specfun.poisson_weight(mu, n)


def cnm_diffusion(kappa, f, g, t, N, coeffs=None):
    """Real amplitude matrix of the diffusion analog.

    c_nm = e^{c - kappa t - (a b/2) sinh 2 kappa t + lambda^2/4}
           (a + b r)^n (b + a r)^m 2F0(-n, -m; 2/lambda^2) / sqrt(2^{n+m} n! m!)

    with r = e^{-2 kappa t}, lambda^2 = a^2 + b^2 + 2 a b cosh 2 kappa t.
    """
    N = _check_N(N)
    if t == 0 and coeffs is None:
        # the t -> 0+ limit; the coefficient integrals are 0/0 there
        return AmplitudeMatrix(np.eye(N + 1), 0.0, "diffusion", N, 0.0)
    if coeffs is None:
        coeffs = compute_coeffs_diffusion(kappa, f, g, t)
    a, b, c = coeffs.a, coeffs.b, coeffs.c
    r = np.exp(-2 * kappa * t)
    lam2 = a * a + b * b + 2 * a * b * np.cosh(2 * kappa * t)
    pref = np.exp(c - kappa * t - 0.5 * a * b * np.sinh(2 * kappa * t) + lam2 / 4)
    full = pref * _bilinear((a + b * r) / math.sqrt(2), (b + a * r) / math.sqrt(2), r,
                            N + _EXTRA_ROWS + int(2 * lam2), N)
    return AmplitudeMatrix(full[:N + 1].copy(), t, "diffusion", N, _tail(full, N))



def cnm_diffusion_special(kappa, eps, t, N):
    """Closed-form amplitudes for the drive f = -eps cosh((2 kappa - 1) t), g = eps sinh((2 kappa - 1) t).

    c_nm = (-1)^{n-m} eps^{n+m} / sqrt(2^{n+m} n! m!) e^{-(eps^2/2)(1 - e^{-t})}
           e^{-((2 kappa - 1) n + kappa - eps^2/2) t} (1 - e^{-t})^{n+m}
           2F0(-n, -m; 2 e^{-t} / (eps^2 (1 - e^{-t})^2))

    Magnitudes are assembled in log space, so large t is safe.
    """
    N = _check_N(N)
    if not t > 0:
        raise ValueError(f"t must be positive, got {t!r}")
    if eps == 0:
        diag = np.exp(-((2 * kappa - 1) * np.arange(N + 1) + kappa) * t)
        return AmplitudeMatrix(np.diag(diag), t, "diffusion", N, 0.0)
    one_m = -math.expm1(-t)
    s = 2 * math.exp(-t) / (eps * eps * one_m * one_m)
    out = np.empty((N + 1, N + 1))
    lg = gammaln(np.arange(N + 1) + 1.0)
    for n in range(N + 1):
        for m in range(N + 1):
            h = specfun.hyp2f0_terminating(n, m, s)
            if h == 0:
                out[n, m] = 0.0
                continue
            logmag = ((n + m) * (math.log(abs(eps)) + math.log(one_m) - 0.5 * math.log(2.0))
                      - 0.5 * (lg[n] + lg[m]) - 0.5 * eps * eps * one_m
                      - ((2 * kappa - 1) * n + kappa - 0.5 * eps * eps) * t + math.log(abs(h)))
            sign = (-1) ** (n - m) * (1 if h > 0 else -1) * (1 if eps > 0 or (n + m) % 2 == 0 else -1)
            out[n, m] = sign * math.exp(logmag)
    return AmplitudeMatrix(out, t, "diffusion", N, 0.0)
