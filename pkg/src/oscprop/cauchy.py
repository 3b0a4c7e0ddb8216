"""Cauchy initial-value problems: kernel quadrature on sampled waves and
amplitude-matrix propagation of oscillator-basis coefficients.
"""
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.signal import czt

from . import quadrature as quad
from .amplitudes import AmplitudeMatrix
from .errors import DomainError, SupportLeakWarning
from .kernels import QuadraticKernel
from .specfun import osc_basis

LEAK_TOL = 1e-8
_CHUNK = 2 ** 21
CHIRP_WORK = 4e8


@dataclass(frozen=True)
class Grid:
    """Uniform grid of `n_points` points on [x_min, x_max], endpoints included."""
    x_min: float = -12.0
    x_max: float = 12.0
    n_points: int = 769

    def __post_init__(self):
        if self.n_points < 16:
            raise ValueError("a grid needs at least 16 points")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def points(self):
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.n_points - 1)


DEFAULT_GRID = Grid()


@dataclass
class SampledWave:
    """Complex (or real) function sampled on a uniform grid."""
    x_min: float
    x_max: float
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.ndim != 1 or len(self.values) < 16:
            raise ValueError("a sampled wave needs a 1-D array of at least 16 values")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("sampled wave contains non-finite values")

    @classmethod
    def from_function(cls, func, grid: Grid = DEFAULT_GRID):
        return cls(grid.x_min, grid.x_max, func(grid.points))

    @property
    def n_points(self):
        return len(self.values)

    @property
    def grid(self):
        return Grid(self.x_min, self.x_max, self.n_points)

    @property
    def x(self):
        return self.grid.points

    @property
    def dx(self):
        return self.grid.dx

    def norm(self):
        """L2 norm by the trapezoid rule."""
        return math.sqrt(float(np.sum(np.abs(self.values) ** 2) * self.dx))

    def edge_magnitude(self):
        peak = np.abs(self.values).max()
        if peak == 0:
            return 0.0
        return max(abs(self.values[0]), abs(self.values[-1])) / peak


@dataclass
class SpectralState:
    """Oscillator-basis coefficients c_0..c_N."""
    coefficients: np.ndarray
    parseval_defect: Optional[float] = None

    def __post_init__(self):
        self.coefficients = np.asarray(self.coefficients, dtype=complex)
        if not np.all(np.isfinite(self.coefficients)):
            raise ValueError("spectral state contains non-finite coefficients")

    @property
    def N(self):
        return len(self.coefficients) - 1

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.coefficients) ** 2)))

    @classmethod
    def basis(cls, m, N):
        c = np.zeros(N + 1, dtype=complex)
        c[m] = 1.0
        return cls(c)


def l2_distance(w1: SampledWave, w2: SampledWave):
    """L2 distance of two waves on the same grid."""
    if w1.grid != w2.grid:
        raise ValueError("waves live on different grids")
    return math.sqrt(float(np.sum(np.abs(w1.values - w2.values) ** 2) * w1.dx))


# ---------------------------------------------------------------- initial states

def gaussian(center=0.0, width=1.0, momentum=0.0):
    """Normalised Gaussian packet (pi w^2)^(-1/4) exp(-(x-c)^2/(2 w^2) + i p x)."""
    if not width > 0:
        raise ValueError("width must be positive")

    def func(x):
        x = np.asarray(x)
        return ((np.pi * width * width) ** -0.25
                * np.exp(-(x - center) ** 2 / (2 * width * width) + 1j * momentum * x))

    return func


def eigenstate(n):
    """Oscillator eigenfunction Psi_n."""
    def func(x):
        return osc_basis(n, np.asarray(x, dtype=float))[n].astype(complex)

    return func


def superposition(terms: Sequence):
    """Linear combination of (weight, function) pairs."""
    terms = list(terms)

    def func(x):
        return sum(w * f(x) for w, f in terms)

    return func


# ---------------------------------------------------------------- integral path

def _support(values, rel=1e-17):
    mag = np.abs(values)
    idx = np.nonzero(mag > rel * mag.max())[0]
    return max(idx[0] - 1, 0), min(idx[-1] + 1, len(values) - 1)


def node_factor(kernel: QuadraticKernel, initial: SampledWave, x_out, margin=1.25):
    """Refinement factor of the input grid that resolves the integrand K(x, y) psi(y).

    The integrand's bandwidth is bounded by the kernel's largest y-phase
    gradient on the support of psi plus the kernel's Gaussian envelope
    bandwidth plus the bandwidth of psi itself.
    """
    y = initial.x
    lo, hi = _support(initial.values)
    ymax = max(abs(y[lo]), abs(y[hi]))
    xmax = float(np.max(np.abs(x_out)))
    k_osc = (2 * abs(np.imag(kernel.qyy)) * ymax + abs(np.imag(kernel.qxy)) * xmax
             + abs(np.imag(kernel.ly)))
    k_env = 0.0
    if np.real(kernel.qyy) < 0:
        k_env = 9.0 * math.sqrt(-2 * np.real(kernel.qyy))
    k_psi = quad.bandwidth(initial.values, initial.dx)
    k_tot = k_osc + k_env + k_psi
    if k_tot == 0:
        return 1
    h_needed = 2 * np.pi / (margin * k_tot)
    return max(1, int(math.ceil(initial.dx / h_needed)))


def _direct_sum(kernel, x_out, y, weights, chunk):
    rows = max(1, chunk // max(len(y), 1))
    out = np.empty(len(x_out), dtype=complex)
    for start in range(0, len(x_out), rows):
        xs = x_out[start:start + rows]
        out[start:start + rows] = kernel(xs[:, None], y[None, :]) @ weights
    return out


def _chirp_sum(kernel, x_out, y, weights):
    """Same sum as `_direct_sum` for a purely oscillatory cross term.

    With x_j = x0 + j dx and y_k = y0 + k h the cross factor exp(qxy x_j y_k)
    splits into per-index phases times w^(j k), w = exp(qxy dx h), which is
    a chirp z-transform evaluated in O(n log n).
    """
    x0, y0 = x_out[0], y[0]
    dx = x_out[1] - x_out[0]
    h = y[1] - y[0]
    j = np.arange(len(x_out))
    k = np.arange(len(y))
    u = weights * np.exp(kernel.qyy * y * y + kernel.ly * y + kernel.qxy * x0 * h * k)
    s = czt(u, m=len(x_out), w=np.exp(kernel.qxy * dx * h), a=1.0)
    return (kernel.prefactor * s
            * np.exp(kernel.qxx * x_out * x_out + kernel.lx * x_out + kernel.c0
                     + kernel.qxy * y0 * (x0 + dx * j)))


def propagate_integral(propagator, initial: SampledWave, t=None, out_grid: Grid = None,
                       method="auto", chunk=_CHUNK):
    """psi(x) = int K(x, y) psi0(y) dy evaluated at every output grid point.

    Parameters
    ----------
    propagator : QuadraticKernel or callable
        A kernel, or a function of `t` returning one.
    initial : SampledWave
    t : float, optional
        Passed to `propagator` when it is a factory.
    out_grid : Grid, optional
        Output grid, the input grid by default.
    method : {"auto", "direct", "chirp"}
        Summation scheme. The direct sum is the accurate default; the chirp
        z-transform costs O(n log n) but loses digits in proportion to the
        refinement factor, so "auto" only uses it for sums too large to do
        directly (more than `CHIRP_WORK` kernel evaluations).

    Notes
    -----
    The input samples are band-limited-interpolated onto a grid fine enough
    for the integrand's oscillation, then summed with the trapezoid rule,
    which is spectrally accurate for smooth integrands that vanish at the ends.
    """
    kernel = propagator if isinstance(propagator, QuadraticKernel) else propagator(t)
    out_grid = initial.grid if out_grid is None else out_grid
    if initial.edge_magnitude() > LEAK_TOL:
        warnings.warn(f"initial wave is not negligible at the grid edges "
                      f"(relative edge magnitude {initial.edge_magnitude():.2e})",
                      SupportLeakWarning, stacklevel=2)
    x_out = out_grid.points
    factor = node_factor(kernel, initial, x_out)
    fine = quad.fourier_refine(initial.values, factor)
    h = initial.dx / factor
    lo, hi = _support(initial.values)
    sl = slice(lo * factor, hi * factor + 1)
    y = initial.x_min + h * np.arange(len(fine))[sl]
    weights = fine[sl] * h
    real = kernel.real and np.isrealobj(initial.values)
    if method not in ("auto", "direct", "chirp"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        big = len(x_out) * len(y) > CHIRP_WORK
        method = "chirp" if big and np.real(kernel.qxy) == 0 else "direct"
    if method == "chirp":
        out = _chirp_sum(kernel, x_out, y, weights)
    else:
        out = _direct_sum(kernel, x_out, y, weights, chunk)
    if real:
        out = np.real(out)
    result = SampledWave(out_grid.x_min, out_grid.x_max, out)
    if result.edge_magnitude() > LEAK_TOL:
        warnings.warn(f"propagated wave reaches the grid edges "
                      f"(relative edge magnitude {result.edge_magnitude():.2e})",
                      SupportLeakWarning, stacklevel=2)
    return result


# ---------------------------------------------------------------- spectral path

def project(wave: SampledWave, N) -> SpectralState:
    """Coefficients c_m = int Psi_m psi dy, m <= N, with the Parseval defect.

    The trapezoid rule on the sample grid is used; it is spectrally accurate
    for waves that decay at the grid edges.
    """
    if wave.edge_magnitude() > LEAK_TOL:
        warnings.warn("wave not supported inside the grid", SupportLeakWarning, stacklevel=2)
    basis = osc_basis(N, wave.x)
    coef = basis @ wave.values * wave.dx
    defect = abs(float(np.sum(np.abs(coef) ** 2)) - wave.norm() ** 2)
    return SpectralState(coef, defect)


def synthesize(state: SpectralState, grid: Grid = DEFAULT_GRID) -> SampledWave:
    """psi(x) = sum_n c_n Psi_n(x) on `grid`."""
    if isinstance(grid, SampledWave):
        grid = grid.grid
    basis = osc_basis(state.N, grid.points)
    return SampledWave(grid.x_min, grid.x_max, state.coefficients @ basis)


def propagate_spectral(amplitudes: AmplitudeMatrix, initial: SpectralState) -> SpectralState:
    """c_n(t) = sum_m c_nm(t) c_m(0)."""
    if amplitudes.N != initial.N:
        raise ValueError(f"truncation mismatch: amplitudes N = {amplitudes.N}, "
                         f"state N = {initial.N}")
    return SpectralState(amplitudes.entries @ initial.coefficients)


def energy_expectation(wave: SampledWave, omega=1.0):
    """<psi| (omega/2)(-d^2/dx^2 + x^2) |psi> / <psi|psi> with a spectral derivative."""
    n = wave.n_points
    k = 2 * np.pi * np.fft.fftfreq(n, d=wave.dx)
    dpsi = np.fft.ifft(1j * k * np.fft.fft(wave.values))
    kin = np.sum(np.abs(dpsi) ** 2)
    pot = np.sum(wave.x ** 2 * np.abs(wave.values) ** 2)
    nrm = np.sum(np.abs(wave.values) ** 2)
    if nrm == 0:
        return 0.0
    return float(0.5 * omega * (kin + pot) / nrm)


# ---------------------------------------------------------------- Landau point evaluation

def landau_evolve_point(propagator: Callable, phi: Callable, r, half_width=8.0, n_nodes=96,
                        center=None):
    """Evaluate int G(r, rho) phi(rho) d^3 rho at one point `r` by tensor Gauss-Legendre.

    `propagator(r, rho)` takes broadcastable arrays with a trailing axis of 3
    (e.g. a partial application of `landau_propagator`); `phi` takes the same
    shape of points. The box is centred on `center` (default: origin).
    """
    center = np.zeros(3) if center is None else np.asarray(center, dtype=float)
    if not half_width > 0:
        raise DomainError("half_width must be positive")
    nodes, weights = quad.gauss_legendre(-half_width, half_width, n_nodes)
    xi = center[0] + nodes
    eta = center[1] + nodes
    zeta = center[2] + nodes
    r = np.asarray(r, dtype=float)
    total = 0j
    ee, zz = np.meshgrid(eta, zeta, indexing="ij")
    ww = np.outer(weights, weights)
    for i, x_i in enumerate(xi):
        rho = np.stack([np.full_like(ee, x_i), ee, zz], axis=-1)
        total += weights[i] * np.sum(ww * propagator(r, rho) * phi(rho))
    return complex(total)
