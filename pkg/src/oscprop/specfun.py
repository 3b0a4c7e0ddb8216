"""Hermite, oscillator, Charlier, Laguerre and Poisson special functions.

All routines are pure and vectorised over the continuous argument.
"""
import math

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson

# Hermite functions are evaluated with a rescaled recurrence, so the results
# stay finite (and accurate relative to their size) well beyond this range.
X_CUT = 40.0
N_MAX = 512

_PI_QUARTER = np.pi ** -0.25
_RESCALE = 1e150


def _check_degree(n, n_max=N_MAX):
    if int(n) != n or n < 0:
        raise ValueError(f"degree must be a nonnegative integer, got {n}")
    if n > n_max:
        raise ValueError(f"degree {n} exceeds n_max = {n_max}")
    return int(n)


def hermite(n, x):
    """Physicists' Hermite polynomial H_n(x) by upward recurrence.

    Raises
    ------
    OverflowError
        If the value leaves the floating range; use `osc_wavefunction`
        for high degrees instead.
    """
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, n):
            h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    if not np.all(np.isfinite(h)):
        raise OverflowError(f"H_{n}(x) overflows double precision; use osc_wavefunction")
    return h if h.ndim else float(h)


def osc_basis(n_max, x):
    """Oscillator wave functions Psi_0..Psi_{n_max} at `x`.

    Returns an array of shape ``(n_max + 1,) + x.shape``. The normalised
    recurrence

        Psi_{k+1} = sqrt(2/(k+1)) x Psi_k - sqrt(k/(k+1)) Psi_{k-1}

    is run on values stripped of the Gaussian factor, with a running
    log-scale so neither the polynomial growth nor the Gaussian decay
    can over- or underflow in the intermediate steps.
    """
    n_max = _check_degree(n_max)
    x = np.asarray(x)
    out = np.empty((n_max + 1,) + x.shape, dtype=np.result_type(x, float))
    logscale = np.zeros(x.shape, dtype=out.dtype)
    p_prev = np.zeros(x.shape, dtype=out.dtype)
    p = np.full(x.shape, _PI_QUARTER, dtype=out.dtype)
    gauss = -0.5 * x * x
    out[0] = p * np.exp(gauss)
    for k in range(n_max):
        p_prev, p = p, math.sqrt(2.0 / (k + 1)) * x * p - math.sqrt(k / (k + 1)) * p_prev
        big = np.abs(p) > _RESCALE
        if np.any(big):
            p = np.where(big, p / _RESCALE, p)
            p_prev = np.where(big, p_prev / _RESCALE, p_prev)
            logscale = logscale + np.where(big, math.log(_RESCALE), 0.0)
        out[k + 1] = p * np.exp(gauss + logscale)
    return out


def osc_wavefunction(n, x):
    """Normalised oscillator wave function Psi_n(x).

    Psi_n(x) = (2^n n! sqrt(pi))^(-1/2) exp(-x^2/2) H_n(x).
    """
    n = _check_degree(n)
    val = osc_basis(n, x)[n]
    return val if np.ndim(val) else val[()]


def energy(n, omega=1.0):
    """Oscillator level E_n = omega (n + 1/2)."""
    return omega * (n + 0.5)


def charlier_table(n_max, mu, x):
    """Charlier polynomials c_0^mu(x) .. c_{n_max}^mu(x) by recurrence in the degree.

    Uses ``mu c_{n+1} = (n + mu - x) c_n - n c_{n-1}`` with c_0 = 1,
    c_1 = 1 - x/mu. Returns shape ``(n_max + 1,) + x.shape``.
    """
    if mu <= 0:
        raise ValueError("Charlier parameter mu must be positive")
    x = np.asarray(x)
    out = np.empty((n_max + 1,) + x.shape, dtype=np.result_type(x, mu, float))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 1.0 - x / mu
    for k in range(1, n_max):
        out[k + 1] = ((k + mu - x) * out[k] - k * out[k - 1]) / mu
    return out


def charlier(n, mu, x):
    """Charlier polynomial c_n^mu(x), evaluated by the three-term recurrence.

    The upward recurrence in the degree loses accuracy once the degree passes
    the argument, so at integer points x < n the self-dual form c_x^mu(n) is
    recursed instead.
    """
    n = int(n)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if np.ndim(x) == 0 and float(x).is_integer() and 0 <= x < n:
        return charlier_table(int(x), mu, float(n))[int(x)][()]
    val = charlier_table(n, mu, x)[n]
    return val if np.ndim(val) else val[()]


def charlier_dual(n, mu, m):
    """c_n^mu(m) at an integer point, recursing in min(n, m) via self-duality."""
    n, m = int(n), int(m)
    lo, hi = (n, m) if n <= m else (m, n)
    return charlier_table(lo, mu, float(hi))[lo][()]


def charlier_dual_log(n, mu, m):
    """Sign and log-magnitude of c_n^mu(m) at an integer point.

    For tiny mu the value grows like mu^(-min(n, m)) and overflows; there the
    scaled polynomial mu^K c_n^mu(m) = sum_k (-n)_k (-m)_k (-1)^k mu^(K-k) / k!
    is summed instead, whose top term dominates without cancellation.

    Returns
    -------
    sign : float
        -1, 0 or +1.
    logmag : float
        log |c_n^mu(m)|, -inf when the value is zero.
    """
    n, m = int(n), int(m)
    if mu >= 1e-8:
        val = charlier_dual(n, mu, m)
        if np.isfinite(val):
            return float(np.sign(val)), (math.log(abs(val)) if val != 0 else -math.inf)
    K = min(n, m)
    k = np.arange(K + 1)
    logt = (gammaln(n + 1) - gammaln(n - k + 1) + gammaln(m + 1) - gammaln(m - k + 1)
            - gammaln(k + 1) + (K - k) * math.log(mu))
    top = logt.max()
    total = math.fsum(((-1.0) ** k * np.exp(logt - top)).tolist())
    if total == 0:
        return 0.0, -math.inf
    return math.copysign(1.0, total), top + math.log(abs(total)) - K * math.log(mu)


def hyp2f0_terminating(n, m, s):
    """Terminating series 2F0(-n, -m; ; s) summed in ascending order.

    The sum sum_k (-n)_k (-m)_k s^k / k! stops at k = min(n, m). Real and
    imaginary parts are accumulated with `math.fsum`.
    """
    n, m = int(n), int(m)
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative integers")
    term = 1.0 + 0.0 * s
    terms = [term]
    for k in range(min(n, m)):
        term = term * (k - n) * (k - m) * s / (k + 1)
        terms.append(term)
    if isinstance(s, complex) or np.iscomplexobj(s):
        return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return math.fsum(terms)


def charlier_series(n, mu, x):
    """c_n^mu(x) from the terminating hypergeometric sum 2F0(-n, -x; -1/mu).

    Only defined here for nonnegative integer `x`.
    """
    if int(x) != x or x < 0:
        raise ValueError("series form requires a nonnegative integer argument")
    return hyp2f0_terminating(n, int(x), -1.0 / mu)


def laguerre(n, alpha, x):
    """Generalised Laguerre polynomial L_n^alpha(x) by the standard recurrence."""
    n = int(n)
    x = np.asarray(x, dtype=np.result_type(x, alpha, float))
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev if l_prev.ndim else l_prev[()]
    lk = 1.0 + alpha - x
    for k in range(1, n):
        l_prev, lk = lk, ((2 * k + 1 + alpha - x) * lk - (k + alpha) * l_prev) / (k + 1)
    return lk if np.ndim(lk) else lk[()]


def poisson_weight(mu, k):
    """Poisson weight exp(-mu) mu^k / k!, evaluated in log space."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    k = np.asarray(k, dtype=float)
    val = np.exp(k * np.log(mu) - mu - gammaln(k + 1.0))
    return val if val.ndim else float(val)


def poisson_tail(mu, k):
    """P(K > k) for K ~ Poisson(mu)."""
    return float(poisson.sf(k, mu))
