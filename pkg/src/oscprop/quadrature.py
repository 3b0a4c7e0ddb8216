"""Quadrature helpers used by the coefficient and propagation code."""
import warnings

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicSpline

from .errors import QuadratureError

EPSABS = 1e-11
EPSREL = 1e-13
LIMIT = 20000


def adaptive(func, lo, hi, name, epsabs=EPSABS, epsrel=EPSREL, limit=LIMIT):
    """Adaptive Gauss-Kronrod integral of a real scalar function.

    Raises
    ------
    QuadratureError
        If QUADPACK reports anything other than success. The integral's
        `name` is carried on the exception.
    """
    if lo == hi:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(func, lo, hi, epsabs=epsabs, epsrel=epsrel,
                             limit=limit, full_output=1)
    value, err = out[0], out[1]
    if not np.isfinite(value):
        raise QuadratureError(name, err, "non-finite result")
    if len(out) > 3:
        # QUADPACK flagged trouble; accept only if the estimate still meets tolerance
        tol = max(epsabs, epsrel * abs(value))
        if err > tol:
            raise QuadratureError(name, err, str(out[3]).split("\n")[0])
    return value


def gauss_legendre(lo, hi, n):
    """Nodes and weights of the n-point Gauss-Legendre rule on [lo, hi]."""
    s, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (s + 1.0), half * w


def cumulative(func, grid, order=12):
    """Cumulative integral of `func` on the points of `grid`.

    Each panel [grid[k], grid[k+1]] is integrated with a fixed Gauss-Legendre
    rule, which is exact to rounding for smooth integrands on fine grids.
    `func` must accept arrays.
    """
    grid = np.asarray(grid, dtype=float)
    s, w = np.polynomial.legendre.leggauss(order)
    lo, hi = grid[:-1], grid[1:]
    half = 0.5 * (hi - lo)
    nodes = lo[:, None] + half[:, None] * (s[None, :] + 1.0)
    vals = np.asarray(func(nodes))
    panels = (vals * w[None, :]).sum(axis=1) * half
    return np.concatenate([[0.0], np.cumsum(panels)])


def cumulative_spline(func, lo, hi, n_points=2048, order=12):
    """Cubic spline of s -> int_lo^s func on a uniform grid of `n_points`."""
    grid = np.linspace(lo, hi, n_points)
    return CubicSpline(grid, cumulative(func, grid, order=order))


def fourier_refine(values, factor):
    """Band-limited interpolation of uniform samples onto a grid `factor` times finer.

    The samples are treated as one period of a periodic function, so the
    data must vanish (to the working tolerance) at both ends. Returns
    ``len(values) * factor`` samples starting at the first input point.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    if factor == 1:
        return values.copy()
    spec = np.fft.fft(values, axis=-1)
    m = n * factor
    out = np.zeros(values.shape[:-1] + (m,), dtype=complex)
    half = n // 2
    out[..., :half + 1] = spec[..., :half + 1]
    out[..., m - (n - half - 1):] = spec[..., half + 1:]
    if n % 2 == 0:
        # split the Nyquist bin evenly so real data stays real
        out[..., half] *= 0.5
        out[..., m - half] = out[..., half]
    res = np.fft.ifft(out, axis=-1) * factor
    if np.isrealobj(values):
        return res.real
    return res


def bandwidth(values, spacing, rel=1e-14):
    """Largest angular wavenumber with spectral content above `rel` times the peak."""
    values = np.asarray(values)
    n = values.shape[-1]
    spec = np.abs(np.fft.fft(values, axis=-1))
    if spec.ndim > 1:
        spec = spec.max(axis=tuple(range(spec.ndim - 1)))
    peak = spec.max()
    if peak == 0:
        return 0.0
    k = np.arange(n)
    k = np.minimum(k, n - k)
    return 2 * np.pi * k[spec > rel * peak].max() / (n * spacing)
