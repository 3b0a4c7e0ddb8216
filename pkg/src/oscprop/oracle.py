"""Reference solvers used to check the closed forms: Crank-Nicolson finite
differences and brute-force kernel compositions.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.linalg import solve_banded

from .cauchy import Grid, SampledWave
from .coeffs import DriveSpec
from .errors import ConvergenceError, DomainError, SupportLeakWarning
from .kernels import QuadraticKernel

EQUATIONS = ("schrodinger", "diffusion")
EDGE_TOL = 1e-10


@dataclass(frozen=True)
class FDConfig:
    """Uniform finite-difference grid and time step with Dirichlet-zero ends."""
    dx: float
    dt: float
    x_min: float = -12.0
    x_max: float = 12.0
    boundary: str = "dirichlet_zero"

    def __post_init__(self):
        if not (self.dx > 0 and self.dt > 0):
            raise ValueError("dx and dt must be positive")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.boundary != "dirichlet_zero":
            raise ValueError(f"unsupported boundary {self.boundary!r}")
        steps = (self.x_max - self.x_min) / self.dx
        if abs(steps - round(steps)) > 1e-9 * steps:
            raise ValueError("(x_max - x_min) / dx must be an integer")

    @property
    def grid(self):
        n = int(round((self.x_max - self.x_min) / self.dx)) + 1
        return Grid(self.x_min, self.x_max, n)

    def sample(self, func):
        return SampledWave.from_function(func, self.grid)


def _bands(equation, x, dx, f, g, omega, kappa):
    """Lower, main and upper diagonals of the spatial operator at one time."""
    inv2 = 1.0 / (dx * dx)
    inv1 = 1.0 / (2 * dx)
    n = len(x)
    if equation == "schrodinger":
        # H = (omega/2)(-D2 + x^2) - f x + i g D1
        main = omega * (inv2 + 0.5 * x * x) - f * x
        lower = np.full(n, -0.5 * omega * inv2 - 1j * g * inv1)
        upper = np.full(n, -0.5 * omega * inv2 + 1j * g * inv1)
    else:
        # L = kappa (D2 - x^2) + f x - g D1
        main = -kappa * (2 * inv2 + x * x) + f * x
        lower = np.full(n, kappa * inv2 + g * inv1)
        upper = np.full(n, kappa * inv2 - g * inv1)
    return lower, main, upper


def _apply(lower, main, upper, v):
    out = main * v
    out[1:] += lower[1:] * v[:-1]
    out[:-1] += upper[:-1] * v[1:]
    return out


def crank_nicolson_evolve(equation, drive: DriveSpec, config: FDConfig, initial,
                          t_final, kappa=None, t0=0.0):
    """Evolve `initial` from t0 to t0 + t_final with the Crank-Nicolson scheme.

    Parameters
    ----------
    equation : {"schrodinger", "diffusion"}
        i psi_t = (omega/2)(-psi_xx + x^2 psi) - f x psi + i g psi_x, or
        u_t = kappa (u_xx - x^2 u) + f x u - g u_x.
    drive : DriveSpec
        f and g (and omega for the Schrodinger equation, possibly varying).
    config : FDConfig
    initial : SampledWave or callable
        Must live on ``config.grid`` when given as samples.
    t_final : float
        Elapsed time; the step is shrunk so that it divides `t_final`.
    kappa : float
        Diffusion rate, required for the diffusion equation.

    Notes
    -----
    Coefficients are frozen at the half step and the drift term is kept
    inside the implicit operator, so the scheme is second order in dx and dt.
    """
    if equation not in EQUATIONS:
        raise ValueError(f"unknown equation {equation!r}")
    if equation == "diffusion" and not (kappa is not None and kappa > 0):
        raise DomainError("diffusion needs kappa > 0")
    if not t_final >= 0:
        raise ValueError("t_final must be non-negative")
    grid = config.grid
    if callable(initial):
        initial = SampledWave.from_function(initial, grid)
    if initial.grid != grid:
        raise ValueError("initial wave is not sampled on the configuration grid")
    x = grid.points[1:-1]
    dx = grid.dx
    n_steps = max(1, int(math.ceil(t_final / config.dt - 1e-9))) if t_final > 0 else 0
    dt = t_final / n_steps if n_steps else 0.0
    schro = equation == "schrodinger"
    u = np.array(initial.values[1:-1], dtype=complex if schro else np.result_type(initial.values, float))
    ab = np.empty((3, len(x)), dtype=complex if schro else float)
    for step in range(n_steps):
        th = t0 + (step + 0.5) * dt
        omega = drive.omega_at(th) if schro else 0.0
        lower, main, upper = _bands(equation, x, dx, float(drive.f(th)), float(drive.g(th)),
                                    omega, kappa)
        fac = 0.5j * dt if schro else -0.5 * dt
        # (1 + fac A) u_new = (1 - fac A) u_old
        rhs = u - fac * _apply(lower, main, upper, u)
        ab[0, 1:] = fac * upper[:-1]
        ab[1] = 1 + fac * main
        ab[2, :-1] = fac * lower[1:]
        u = solve_banded((1, 1), ab, rhs, check_finite=False)
    values = np.zeros(grid.n_points, dtype=u.dtype)
    values[1:-1] = u
    out = SampledWave(grid.x_min, grid.x_max, values)
    if out.edge_magnitude() > 0 and _near_edge(values) > EDGE_TOL:
        warnings.warn(f"finite-difference solution reaches the boundary "
                      f"(relative magnitude {_near_edge(values):.2e})",
                      SupportLeakWarning, stacklevel=2)
    return out


def _near_edge(values, width=4):
    mag = np.abs(values)
    peak = mag.max()
    if peak == 0:
        return 0.0
    return float(max(mag[:width + 1].max(), mag[-width - 1:].max()) / peak)


# ---------------------------------------------------------------- compositions

def _descent_contour(A: QuadraticKernel, B: QuadraticKernel, x, y):
    """Saddle point and steepest-descent angle of z -> A(x, z) B(z, y)."""
    alpha = A.qyy + B.qxx
    beta = A.qxy * x + A.ly + B.qxy * y + B.lx
    if alpha == 0:
        raise ConvergenceError("composition integrand has no quadratic decay", float("inf"))
    center = -beta / (2 * alpha)
    theta = 0.5 * (np.pi - np.angle(alpha))
    if theta > 0.5 * np.pi:
        # keep the contour oriented like the real axis
        theta -= np.pi
    rate = abs(alpha)
    return center, theta, rate


def _contour_sum(A, B, x, y, center, theta, half_width, n):
    s, w = np.polynomial.legendre.leggauss(n)
    rot = np.exp(1j * theta)
    z = center + rot * half_width * s
    return complex(np.sum(A(x, z) * B(z, y) * w) * half_width * rot)


def brute_force_compose(A, B, x, y, n=200, half_width=None, center=None, theta=None, tol=1e-10):
    """int A(x, z) B(z, y) dz by Gauss-Legendre on a rotated straight contour.

    For `QuadraticKernel` arguments the contour passes through the saddle of
    the integrand along its steepest-descent direction; otherwise `center`,
    `theta` and `half_width` must be supplied. The contour deformation is
    valid when the integrand decays in the sector swept from the real axis,
    which holds for compositions of caustic-free oscillator kernels.

    Raises
    ------
    ConvergenceError
        When n and 2n nodes differ by more than `tol` (relative).
    """
    if center is None or theta is None:
        if not (isinstance(A, QuadraticKernel) and isinstance(B, QuadraticKernel)):
            raise ValueError("contour parameters are required for general callables")
        c0, th0, rate = _descent_contour(A, B, x, y)
        center = c0 if center is None else center
        theta = th0 if theta is None else theta
        if half_width is None:
            half_width = math.sqrt(60.0 / rate)
    if half_width is None:
        raise ValueError("half_width is required for general callables")
    coarse = _contour_sum(A, B, x, y, center, theta, half_width, n)
    fine = _contour_sum(A, B, x, y, center, theta, half_width, 2 * n)
    est = abs(fine - coarse)
    if est > tol * max(abs(fine), 1e-300):
        raise ConvergenceError(f"composition quadrature did not converge (estimate {est:.2e})", est)
    return fine


def compose_kernels(A: QuadraticKernel, B: QuadraticKernel, x, y, **kw):
    """Vectorized `brute_force_compose` over paired arrays x, y."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.empty(x.shape, dtype=complex)
    for idx in np.ndindex(x.shape):
        out[idx] = brute_force_compose(A, B, x[idx], y[idx], **kw)
    return out


# ---------------------------------------------------------------- Landau double integral

def _landau_abc(params, F, t, t0):
    """a, b, c of the driven transverse problem from their defining integrals."""
    w, hb, m = params.omega_H, params.hbar, params.mass

    def a_of(t2, t1):
        if t2 <= t1:
            return 0.0
        val = quad(lambda s: F(s) * math.sin(w * (s - t1)), t1, t2, epsabs=1e-14, epsrel=1e-13)[0]
        return val / (hb * math.sin(w * (t2 - t1)))

    a = a_of(t, t0)
    b = -quad(lambda s: F(s) * math.sin(w * (s - t)), t0, t, epsabs=1e-14,
              epsrel=1e-13)[0] / (hb * math.sin(w * (t - t0)))
    c = -hb / (2 * m) * quad(lambda s: a_of(s, t0) ** 2, t0, t, epsabs=1e-14, epsrel=1e-12,
                             limit=200)[0]
    return a, b, c


def landau_double_fourier(params, F, t, t0, r, rho, n=400, half_width=12.0):
    """Crossed-field propagator from the double momentum integral over p_x and p_z.

    Each momentum pair contributes plane waves in x and z times the driven
    one-dimensional driven oscillator kernel in the coordinates relative to
    the orbit centre y0 = -c p_x / (e H). Both momentum contours are rotated by -pi/4, where
    the integrand decays like a Gaussian.
    """
    hb, m, c_l, H = params.hbar, params.mass, params.light_speed, params.H_field
    e, w = params.e, params.omega_H
    dt = t - t0
    if not 0 < w * dt < np.pi:
        raise DomainError("omega_H (t - t0) outside the caustic-free window (0, pi)")
    x, y, z = r
    xi, eta, zeta = rho
    a, b, c = _landau_abc(params, F, t, t0)
    int_f = quad(F, t0, t, epsabs=1e-14, epsrel=1e-13)[0]
    musig_s = params.mu_mag * params.sigma / params.spin_s
    sw = math.sin(w * dt)
    cw = math.cos(w * dt)

    def g1(u, v):
        return (np.sqrt(m * w / (2 * np.pi * hb * sw)) * np.exp(-0.25j * np.pi)
                * np.exp(1j * m * w * ((u * u + v * v) * cw - 2 * u * v) / (2 * hb * sw)))

    s, wts = np.polynomial.legendre.leggauss(n)
    rot = np.exp(-0.25j * np.pi)
    p = rot * half_width * s
    px, pz = np.meshgrid(p, p, indexing="ij")
    action = (pz * pz / (2 * m) - musig_s * H) * dt + c_l * px / (e * H) * int_f
    y0 = -c_l * px / (e * H)
    vals = (np.exp(1j * ((x - xi) * px + (z - zeta) * pz) / hb) * np.exp(-1j * action / hb)
            * g1(y - y0, eta - y0) * np.exp(1j * (a * (y - y0) + b * (eta - y0) + c)))
    weight = np.outer(wts, wts) * (half_width * rot) ** 2
    edge = max(np.abs(vals[[0, -1], :]).max(), np.abs(vals[:, [0, -1]]).max())
    total = np.sum(vals * weight) / (2 * np.pi * hb) ** 2
    if edge > 1e-12 * max(np.abs(vals).max(), 1e-300):
        raise ConvergenceError("momentum integrand not negligible at the truncation edge", edge)
    return complex(total)
