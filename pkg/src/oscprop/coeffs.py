"""Phase coefficients a, b, c (and d, S) of the forced-oscillator Green functions.

Single integrals go through adaptive Gauss-Kronrod quadrature. The nested
integral in c uses a cubic spline of the inner antiderivative on a dense grid,
integrated panel by panel with Gauss-Legendre.
"""
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.interpolate import CubicSpline

from . import quadrature as quad
from .errors import DomainError

SPLINE_POINTS = 2048


# ---------------------------------------------------------------- drives

@dataclass(frozen=True)
class Constant:
    value: float = 0.0

    def __call__(self, s):
        return np.full(np.shape(s), float(self.value))[()]


@dataclass(frozen=True)
class Cosine:
    """amplitude * cos(frequency * s + phase)"""
    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0

    def __call__(self, s):
        return self.amplitude * np.cos(self.frequency * np.asarray(s, dtype=float) + self.phase)


@dataclass(frozen=True)
class Sine:
    """amplitude * sin(frequency * s + phase)"""
    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0

    def __call__(self, s):
        return self.amplitude * np.sin(self.frequency * np.asarray(s, dtype=float) + self.phase)


@dataclass(frozen=True)
class ExpDecay:
    """amplitude * exp(-rate * s)"""
    amplitude: float = 1.0
    rate: float = 1.0

    def __call__(self, s):
        return self.amplitude * np.exp(-self.rate * np.asarray(s, dtype=float))


@dataclass(frozen=True)
class Poly:
    """sum_k coeffs[k] s^k"""
    coeffs: tuple = (0.0,)

    def __call__(self, s):
        return np.polynomial.polynomial.polyval(np.asarray(s, dtype=float), self.coeffs)


class Tabulated:
    """Cubic interpolation of tabulated (time, value) samples."""

    def __init__(self, times, values):
        times = np.asarray(times, dtype=float)
        if times.ndim != 1 or len(times) < 4 or np.any(np.diff(times) <= 0):
            raise ValueError("tabulated drive needs >= 4 strictly increasing times")
        self.times = times
        self.values = np.asarray(values, dtype=float)
        self._spline = CubicSpline(times, self.values)

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        if np.any(s < self.times[0] - 1e-12) or np.any(s > self.times[-1] + 1e-12):
            raise DomainError(f"tabulated drive evaluated outside [{self.times[0]}, {self.times[-1]}]")
        return self._spline(s)[()]

    def __repr__(self):
        return f"Tabulated(<{len(self.times)} samples on [{self.times[0]}, {self.times[-1]}]>)"


BUILTINS = {
    "zero": lambda: Constant(0.0),
    "constant": Constant,
    "cosine": Cosine,
    "sine": Sine,
    "exp_decay": ExpDecay,
    "poly": lambda coeffs=(0.0,): Poly(tuple(float(c) for c in coeffs)),
}


def make_function(kind, **params):
    """Build a named drive function (`constant`, `cosine`, `sine`, `exp_decay`, `poly`, `zero`)."""
    if kind not in BUILTINS:
        raise ValueError(f"unknown drive kind {kind!r}; expected one of {sorted(BUILTINS)}")
    return BUILTINS[kind](**params)


def vectorized(func):
    """Wrap `func` so it accepts arrays and always returns an array of the input shape."""
    if isinstance(func, (Constant, Cosine, Sine, ExpDecay, Poly, Tabulated)):
        return func
    if np.isscalar(func):
        return Constant(float(func))

    def wrapped(s):
        s_arr = np.asarray(s, dtype=float)
        try:
            out = np.asarray(func(s_arr), dtype=float)
        except TypeError:
            out = np.vectorize(lambda v: float(func(v)))(s_arr)
        return np.broadcast_to(out, s_arr.shape)[()]

    return wrapped


ZERO = Constant(0.0)


@dataclass(frozen=True)
class DriveSpec:
    """External forcing (f, g, omega) of a forced-oscillator problem.

    Parameters
    ----------
    f : callable
        Dipole force f(t).
    g : callable
        Velocity coupling g(t).
    omega : float or callable
        Frequency, constant or a positive function of time.
    """
    f: Callable = ZERO
    g: Callable = ZERO
    omega: Union[float, Callable] = 1.0

    def __post_init__(self):
        object.__setattr__(self, "f", vectorized(self.f))
        object.__setattr__(self, "g", vectorized(self.g))
        if not callable(self.omega):
            if not self.omega > 0:
                raise DomainError(f"omega must be positive, got {self.omega!r}")
            object.__setattr__(self, "omega", float(self.omega))
        else:
            object.__setattr__(self, "omega", vectorized(self.omega))

    @property
    def constant_omega(self):
        return not callable(self.omega)

    def omega_at(self, s):
        if self.constant_omega:
            return np.full(np.shape(s), self.omega)[()]
        return self.omega(s)


def drive_from_delta(delta, omega=1.0):
    """DriveSpec from a complex drive delta(t) = (-f(t) + i g(t)) / sqrt(2)."""
    def f(s):
        return -np.sqrt(2.0) * np.real(delta(np.asarray(s, dtype=float)))

    def g(s):
        return np.sqrt(2.0) * np.imag(delta(np.asarray(s, dtype=float)))

    return DriveSpec(f, g, omega)


def special_drive(omega, mu):
    """The drive of the special problem, delta = sqrt(mu) exp(i (omega - 1) t)."""
    amp = np.sqrt(2.0 * mu)
    return DriveSpec(Cosine(-amp, omega - 1.0), Sine(amp, omega - 1.0), omega)


# ---------------------------------------------------------------- coefficients

@dataclass(frozen=True)
class PropagatorCoefficients:
    """Coefficients (a, b, c) of a Green function, plus d and S for the Landau problem."""
    a: float
    b: float
    c: float
    t: float
    t0: float = 0.0
    d: Optional[float] = None
    S: Optional[float] = None
    tau: Optional[float] = None


def _nested(inner, outer, lo, hi, n_points=SPLINE_POINTS, order=12):
    """int_lo^hi outer(s) * (int_lo^s inner(u) du) ds with a splined inner integral."""
    grid = np.linspace(lo, hi, n_points)
    spline = CubicSpline(grid, quad.cumulative(inner, grid, order=order))
    return quad.cumulative(lambda s: spline(s) * outer(s), grid, order=order)[-1]


def _zero(t, t0=0.0, **kw):
    return PropagatorCoefficients(0.0, 0.0, 0.0, t, t0, **kw)


def compute_coeffs(drive: DriveSpec, t: float) -> PropagatorCoefficients:
    """Coefficients a, b, c of the forced oscillator with constant frequency.

    a = (1/sin wt) int_0^t (f sin ws + g cos ws) ds
    b = -(1/sin wt) int_0^t (f sin w(s-t) + g cos w(s-t)) ds
    c = (1/2) sin wt cos wt a^2 + int_0^t A(s) (-f cos ws + g sin ws) ds

    with A(s) = sin(ws) a(s). Valid on 0 < wt < pi; t = 0 returns zeros.
    """
    if not drive.constant_omega:
        raise DomainError("compute_coeffs needs a constant omega; use compute_coeffs_tdfreq")
    w = drive.omega
    if t == 0:
        return _zero(0.0)
    if not 0 < w * t < np.pi:
        raise DomainError(f"omega*t = {w * t!r} outside the caustic-free window (0, pi)")
    f, g = drive.f, drive.g
    sw, cw = np.sin(w * t), np.cos(w * t)
    big_a = quad.adaptive(lambda s: f(s) * np.sin(w * s) + g(s) * np.cos(w * s), 0.0, t, "a")
    a = big_a / sw
    b = -quad.adaptive(lambda s: f(s) * np.sin(w * (s - t)) + g(s) * np.cos(w * (s - t)),
                       0.0, t, "b") / sw
    c = 0.5 * sw * cw * a * a + _nested(
        lambda s: f(s) * np.sin(w * s) + g(s) * np.cos(w * s),
        lambda s: -f(s) * np.cos(w * s) + g(s) * np.sin(w * s), 0.0, t)
    return PropagatorCoefficients(a, b, c, t, 0.0)


def tau_spline(drive: DriveSpec, t: float, n_points=SPLINE_POINTS):
    """Cubic spline of the phase time tau(s) = int_0^s omega on [0, t]."""
    grid = np.linspace(0.0, t, n_points)
    return CubicSpline(grid, quad.cumulative(drive.omega_at, grid))


def compute_coeffs_tdfreq(drive: DriveSpec, t: float) -> PropagatorCoefficients:
    """Coefficients for a time-dependent frequency omega(t), with tau = int omega.

    Same structure as `compute_coeffs` with omega s replaced by tau(s). The
    velocity coupling enters the rescaled problem as g/omega.
    """
    if t == 0:
        return _zero(0.0, tau=0.0)
    if t < 0:
        raise DomainError(f"t must be positive, got {t!r}")
    f, g = drive.f, drive.g
    tau = tau_spline(drive, t)
    big_t = float(tau(t))
    if not 0 < big_t < np.pi:
        raise DomainError(f"tau(t) = {big_t!r} outside the caustic-free window (0, pi)")
    if np.any(drive.omega_at(np.linspace(0, t, 257)) <= 0):
        raise DomainError("omega(t) must stay positive")
    st, ct = np.sin(big_t), np.cos(big_t)

    def p(s):
        ts = tau(s)
        return f(s) * np.sin(ts) + g(s) * np.cos(ts)

    a = quad.adaptive(p, 0.0, t, "a") / st
    b = -quad.adaptive(lambda s: f(s) * np.sin(tau(s) - big_t) + g(s) * np.cos(tau(s) - big_t),
                       0.0, t, "b") / st
    c = 0.5 * st * ct * a * a + _nested(
        p, lambda s: -f(s) * np.cos(tau(s)) + g(s) * np.sin(tau(s)), 0.0, t)
    return PropagatorCoefficients(a, b, c, t, 0.0, tau=big_t)


def compute_coeffs_diffusion(kappa: float, f, g, t: float) -> PropagatorCoefficients:
    """Coefficients of the diffusion analog, u_t = kappa (u_xx - x^2 u) + f x u - g u_x.

    With k = 2 kappa:
    a = (1/sinh kt) int_0^t (f sinh ks + g cosh ks) ds
    b = -(1/sinh kt) int_0^t (f sinh k(s-t) + g cosh k(s-t)) ds
    c = -(1/2) sinh kt cosh kt a^2 + int_0^t A(s) (f cosh ks + g sinh ks) ds
    """
    if not kappa > 0:
        raise DomainError(f"kappa must be positive, got {kappa!r}")
    if not t > 0:
        raise DomainError(f"diffusion coefficients need t > 0, got {t!r}")
    f, g = vectorized(f), vectorized(g)
    k = 2.0 * kappa
    sh, ch = np.sinh(k * t), np.cosh(k * t)

    def p(s):
        return f(s) * np.sinh(k * s) + g(s) * np.cosh(k * s)

    a = quad.adaptive(p, 0.0, t, "a") / sh
    b = -quad.adaptive(lambda s: f(s) * np.sinh(k * (s - t)) + g(s) * np.cosh(k * (s - t)),
                       0.0, t, "b") / sh
    c = -0.5 * sh * ch * a * a + _nested(
        p, lambda s: f(s) * np.cosh(k * s) + g(s) * np.sinh(k * s), 0.0, t)
    return PropagatorCoefficients(a, b, c, t, 0.0)


def compute_coeffs_landau(params, F, t: float, t0: float) -> PropagatorCoefficients:
    """Coefficients a, b, c, d and S of the crossed-field Landau problem (physical units).

    a(t, t0) = (1/(hbar sin w D)) int_{t0}^t F(s) sin w(s - t0) ds, D = t - t0
    b(t, t0) = -a(t0, t)
    c(t, t0) = -(hbar/2m) int_{t0}^t a(s, t0)^2 ds
    d and S follow the crossed-field construction; `params` is a LandauParams.
    """
    F = vectorized(F)
    w = params.omega_H
    dt = t - t0
    if not 0 < w * dt < np.pi:
        raise DomainError(f"omega_H (t - t0) = {w * dt!r} outside the caustic-free window (0, pi)")
    hb, m = params.hbar, params.mass
    sd = np.sin(w * dt)

    def a_of(t1, t2):
        return quad.adaptive(lambda s: F(s) * np.sin(w * (s - t2)), t2, t1, "a") / (
            hb * np.sin(w * (t1 - t2)))

    a = a_of(t, t0)
    b = -a_of(t0, t)
    # c by parts: A(s) = hbar sin(w(s-t0)) a(s,t0); the boundary term is regular at t0
    big_a = hb * sd * a
    inner = _nested(lambda s: F(s) * np.sin(w * (s - t0)),
                    lambda s: F(s) * np.cos(w * (s - t0)), t0, t)
    c = (big_a ** 2 / np.tan(w * dt) - 2.0 * inner) / (2.0 * m * hb * w)
    e = params.e
    d = params.light_speed / (e * params.H_field * sd) * quad.adaptive(
        lambda s: F(s) * (np.sin(w * (s - t0)) - np.sin(w * (s - t)) - sd), t0, t, "d")
    int_f = quad.adaptive(F, t0, t, "S")
    S = ((params.p_z ** 2 / (2 * m) - params.mu_mag * params.sigma / params.spin_s * params.H_field)
         * dt + params.light_speed * params.p_x / (e * params.H_field) * int_f)
    return PropagatorCoefficients(a, b, c, t, t0, d=d, S=S)
