"""Complete Green functions: simple, forced, physical-units, time-dependent frequency,
crossed-field Landau and diffusion.

Kernel builders (`*_kernel`) return a `QuadraticKernel` so the Cauchy engine can
read off the phase structure; the pointwise functions evaluate them.
"""
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .coeffs import (Constant, DriveSpec, PropagatorCoefficients, compute_coeffs,
                     compute_coeffs_diffusion, compute_coeffs_landau, compute_coeffs_tdfreq,
                     vectorized)
from .errors import DomainError
from .kernels import QuadraticKernel, mehler, special_G

VARIANTS = ("sho", "forced", "special", "tdfreq", "physical", "landau", "diffusion")

_SQRT_MINUS_I = np.exp(-0.25j * np.pi)  # 1/sqrt(i) on the branch sqrt(i) = e^{i pi/4}


@dataclass(frozen=True)
class GreenFunctionSample:
    """One evaluated Green function value with its endpoints and times."""
    value: complex
    x: float
    y: float
    t: float
    t0: float
    variant: str

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if not np.isfinite(self.value):
            raise ValueError("Green function value is not finite")
        if self.variant == "diffusion" and not np.real(self.value) > 0:
            raise ValueError("diffusion Green function must be positive")


def sample(kernel: QuadraticKernel, x, y, t, t0=0.0, variant="forced"):
    """Evaluate `kernel` at one point and wrap it as a GreenFunctionSample."""
    return GreenFunctionSample(kernel(x, y), float(x), float(y), float(t), float(t0), variant)


# ---------------------------------------------------------------- dimensionless oscillator

def sho_kernel(omega, t):
    """Simple-oscillator kernel G0 with sqrt(2 pi i sin wt) = sqrt(2 pi sin wt) e^{i pi/4}."""
    wt = omega * t
    if not 0 < wt < np.pi:
        raise DomainError(f"omega*t = {wt!r} outside the caustic-free window (0, pi)")
    s, c = np.sin(wt), np.cos(wt)
    return QuadraticKernel(_SQRT_MINUS_I / np.sqrt(2 * np.pi * s),
                           qxx=0.5j * c / s, qyy=0.5j * c / s, qxy=-1j / s)


def sho_propagator(omega, t, x, y):
    """Simple harmonic oscillator propagator G0(x, y, t), 0 < omega t < pi."""
    return sho_kernel(omega, t)(x, y)


def forced_kernel(drive: DriveSpec, t, coeffs: PropagatorCoefficients = None):
    """Forced-oscillator kernel G0 exp(i (a x + b y + c))."""
    if coeffs is None:
        coeffs = compute_coeffs(drive, t)
    return sho_kernel(drive.omega, t).dressed(1j * coeffs.a, 1j * coeffs.b, 1j * coeffs.c)


def forced_propagator(drive: DriveSpec, t, x, y, coeffs=None):
    """Green function of the forced oscillator with constant frequency."""
    return forced_kernel(drive, t, coeffs)(x, y)


def special_kernel(omega, mu, t):
    """Green function of the special drive delta = sqrt(mu) e^{i(omega-1)t}, closed form."""
    phase = np.exp(-1j * (mu * np.sin(t) + (omega / 2 - mu) * t))
    return special_G(t, omega, mu).dressed(factor=phase)


def tdfreq_kernel(drive: DriveSpec, t, coeffs=None):
    """Kernel for a time-dependent frequency: the unit-frequency G0 at tau = int omega."""
    if coeffs is None:
        coeffs = compute_coeffs_tdfreq(drive, t)
    return sho_kernel(1.0, coeffs.tau).dressed(1j * coeffs.a, 1j * coeffs.b, 1j * coeffs.c)


def tdfreq_propagator(drive: DriveSpec, t, x, y, coeffs=None):
    """Green function of the oscillator with frequency omega(t)."""
    return tdfreq_kernel(drive, t, coeffs)(x, y)


# ---------------------------------------------------------------- physical units

@dataclass(frozen=True)
class PhysicalParams:
    """Physical constants of H = p^2/2m + m w^2 x^2/2 - F(t) x - G(t) p.

    `F` and `Gvel` may be numbers (constants) or functions of time.
    """
    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0
    F: Union[float, Callable] = 0.0
    Gvel: Union[float, Callable] = 0.0

    def __post_init__(self):
        if not self.hbar > 0 or not self.mass > 0:
            raise DomainError("hbar and mass must be positive")
        if not self.omega >= 0:
            raise DomainError("omega must be nonnegative")


def _const_value(func):
    if np.isscalar(func):
        return float(func)
    if isinstance(func, Constant):
        return float(func.value)
    return None


def physical_kernel(params: PhysicalParams, t, t0=0.0):
    """Physical-units kernel in x, y for the interval [t0, t].

    For omega > 0 the problem is rescaled by xi = sqrt(m w / hbar) x to the
    dimensionless forced oscillator, and the density Jacobian sqrt(m w / hbar)
    is applied once. For omega = 0 the free and constant-force closed forms are used.
    """
    hb, m, w = params.hbar, params.mass, params.omega
    dt = t - t0
    if w == 0:
        if not dt > 0:
            raise DomainError(f"need t > t0, got t - t0 = {dt!r}")
        force = _const_value(params.F)
        gv = _const_value(params.Gvel)
        if force is None:
            raise DomainError("omega = 0 requires a constant force F (no closed form otherwise)")
        if gv is None or gv != 0:
            raise DomainError("omega = 0 requires G = 0")
        q = 0.5j * m / (hb * dt)
        return QuadraticKernel(_SQRT_MINUS_I * np.sqrt(m / (2 * np.pi * hb * dt)),
                               qxx=q, qyy=q, qxy=-2 * q,
                               lx=0.5j * force * dt / hb, ly=0.5j * force * dt / hb,
                               c0=-1j * force ** 2 * dt ** 3 / (24 * hb * m))
    scale = np.sqrt(m * w / hb)
    F, G = vectorized(params.F), vectorized(params.Gvel)
    drive = DriveSpec(lambda s: F(np.asarray(s) + t0) / np.sqrt(hb * w * m),
                      lambda s: scale * G(np.asarray(s) + t0), w)
    base = forced_kernel(drive, dt)
    return base.rescaled(scale).dressed(factor=scale)


def physical_propagator(params: PhysicalParams, t, t0, x, y):
    """Propagator of the physical-units forced oscillator from t0 to t."""
    return physical_kernel(params, t, t0)(x, y)


def physical_coeffs(params: PhysicalParams, t, t0=0.0):
    """Physical a, b, c (a, b in inverse length units), for omega > 0."""
    k = physical_kernel(params, t, t0)
    return PropagatorCoefficients(float(np.imag(k.lx)), float(np.imag(k.ly)),
                                  float(np.imag(k.c0)), t, t0)


# ---------------------------------------------------------------- Landau problem

@dataclass(frozen=True)
class LandauParams:
    """Charged spinning particle in a uniform magnetic field H along z.

    Parameters
    ----------
    hbar, mass, light_speed : float
    charge : float
        Charge magnitude |e|.
    charge_sign : int
        Sign e/|e|, +1 or -1.
    H_field : float
        Magnetic field magnitude.
    mu_mag : float
        Magnetic moment.
    spin_s : float
        Spin, a positive half-integer.
    sigma : float
        Spin projection in {-s, ..., s}.
    p_x, p_z : float
        Conserved momenta.
    """
    hbar: float = 1.0
    mass: float = 1.0
    light_speed: float = 1.0
    charge: float = 1.0
    charge_sign: int = 1
    H_field: float = 1.0
    mu_mag: float = 0.0
    spin_s: float = 0.5
    sigma: float = 0.5
    p_x: float = 0.0
    p_z: float = 0.0

    def __post_init__(self):
        for name in ("hbar", "mass", "light_speed", "charge", "H_field"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")
        if self.charge_sign not in (1, -1):
            raise DomainError("charge_sign must be +1 or -1")
        two_s = 2 * self.spin_s
        if not self.spin_s > 0 or abs(two_s - round(two_s)) > 1e-12:
            raise DomainError(f"spin_s must be a positive half-integer, got {self.spin_s!r}")
        steps = self.sigma + self.spin_s
        if abs(self.sigma) > self.spin_s + 1e-12 or abs(steps - round(steps)) > 1e-12:
            raise DomainError(f"sigma must lie in {{-s, ..., s}} with unit steps, got {self.sigma!r}")

    @property
    def e(self):
        return self.charge_sign * self.charge

    @property
    def omega_H(self):
        return self.charge * self.H_field / (self.mass * self.light_speed)

    @property
    def y0(self):
        return -self.light_speed * self.p_x / (self.e * self.H_field)

    @property
    def length(self):
        """Magnetic length sqrt(hbar / (m omega_H))."""
        return np.sqrt(self.hbar / (self.mass * self.omega_H))

    @property
    def spin_frequency(self):
        """mu sigma H / (hbar s), the rate of the spin phase."""
        return self.mu_mag * self.sigma * self.H_field / (self.hbar * self.spin_s)


def free_propagator(mass, hbar, z, dt):
    """Free-particle propagator sqrt(m / (2 pi i hbar dt)) exp(i m z^2 / (2 hbar dt))."""
    if not dt > 0:
        raise DomainError("free propagator needs dt > 0")
    return _SQRT_MINUS_I * np.sqrt(mass / (2 * np.pi * hbar * dt)) * np.exp(
        0.5j * mass * np.asarray(z) ** 2 / (hbar * dt))


def landau_plane_propagator(params: LandauParams, x, xi, y, eta, dt):
    """Propagator of the motion perpendicular to the field when F = 0 (Landau gauge)."""
    w = params.omega_H
    if not 0 < w * dt < np.pi:
        raise DomainError(f"omega_H dt = {w * dt!r} outside the caustic-free window (0, pi)")
    m, hb, sgn = params.mass, params.hbar, params.charge_sign
    cot = 1.0 / np.tan(w * dt / 2)
    dx, dy = np.asarray(x) - xi, np.asarray(y) - eta
    pref = np.exp(1j * params.spin_frequency * dt) * m * w / (4j * np.pi * hb * np.sin(w * dt / 2))
    return pref * np.exp(0.25j * m * w / hb * ((dx * dx + dy * dy) * cot
                                                 - 2 * sgn * dx * (np.asarray(y) + eta)))


def landau_propagator(params: LandauParams, F, t, t0, r, rho, coeffs=None):
    """Three-dimensional crossed-field propagator G0(z - zeta) G_H G_F.

    `r` and `rho` are (x, y, z) and (xi, eta, zeta); arrays with a trailing
    axis of length 3 are broadcast.
    """
    if coeffs is None:
        coeffs = compute_coeffs_landau(params, F, t, t0)
    r, rho = np.asarray(r), np.asarray(rho)
    x, y, z = r[..., 0], r[..., 1], r[..., 2]
    xi, eta, zeta = rho[..., 0], rho[..., 1], rho[..., 2]
    dt = t - t0
    w, m, hb, sgn = params.omega_H, params.mass, params.hbar, params.charge_sign
    cot = 1.0 / np.tan(w * dt / 2)
    d = coeffs.d
    w_f = (hb * (coeffs.a * y + coeffs.b * eta + coeffs.c)
           + 0.25 * m * w * d * ((d + 2 * (x - xi)) * cot - 2 * sgn * (y + eta)))
    return (free_propagator(m, hb, z - zeta, dt)
            * landau_plane_propagator(params, x, xi, y, eta, dt)
            * np.exp(1j * w_f / hb))


def gauge_transform_landau(params: LandauParams, G_H_value, x, xi, y, eta, H_gauge=None):
    """Move G_H to the symmetric gauge: e^{i e f(x,y)/(hbar c)} G_H e^{-i e f(xi,eta)/(hbar c)}.

    f(x, y) = x y H / 2. `H_gauge` overrides the field used in f only.
    """
    h = params.H_field if H_gauge is None else H_gauge
    k = params.e * h / (2 * params.hbar * params.light_speed)
    return np.exp(1j * k * np.asarray(x) * y) * G_H_value * np.exp(-1j * k * np.asarray(xi) * eta)


# ---------------------------------------------------------------- diffusion

def diffusion_kernel(kappa, f, g, t, coeffs=None):
    """Diffusion Green function H0 exp(a x + b y + c), H0 = sqrt(r) K_r, r = e^{-2 kappa t}."""
    if not t > 0:
        raise DomainError(f"diffusion Green function needs t > 0, got {t!r}")
    if coeffs is None:
        coeffs = compute_coeffs_diffusion(kappa, f, g, t)
    r = np.exp(-2 * kappa * t)
    return mehler(r).dressed(coeffs.a, coeffs.b, coeffs.c, factor=np.sqrt(r))


def diffusion_green(kappa, f, g, t, x, y, coeffs=None):
    """Green function of u_t = kappa (u_xx - x^2 u) + f x u - g u_x; strictly positive."""
    return diffusion_kernel(kappa, f, g, t, coeffs)(x, y)
