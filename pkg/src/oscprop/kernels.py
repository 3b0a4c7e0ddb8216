"""Closed-form Gaussian-type kernels: Mehler, generalized Fourier, special, L and heat.

Every kernel here has the shape

    prefactor * exp(qxx x^2 + qyy y^2 + qxy x y + lx x + ly y + c0)

with complex coefficients, so they share one container, `QuadraticKernel`.
Coordinates may be complex, which lets callers deform integration contours.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

KINDS = ("mehler", "gen_fourier", "special_G", "l_kernel", "heat")


@dataclass(frozen=True)
class QuadraticKernel:
    """Kernel ``prefactor * exp(Q(x, y))`` with Q a quadratic polynomial.

    Parameters
    ----------
    prefactor : complex
    qxx, qyy, qxy, lx, ly, c0 : complex
        Coefficients of x^2, y^2, xy, x, y and 1 in the exponent.
    real : bool
        Values are real (diffusion kernels); evaluation then returns floats.
    """
    prefactor: complex
    qxx: complex = 0.0
    qyy: complex = 0.0
    qxy: complex = 0.0
    lx: complex = 0.0
    ly: complex = 0.0
    c0: complex = 0.0
    real: bool = False

    def __call__(self, x, y):
        x = np.asarray(x)
        y = np.asarray(y)
        expo = (self.qxx * x * x + self.qyy * y * y + self.qxy * x * y
                + self.lx * x + self.ly * y + self.c0)
        val = self.prefactor * np.exp(expo)
        if self.real and not (np.iscomplexobj(x) or np.iscomplexobj(y)):
            val = np.real(val)
        return val if np.ndim(val) else val[()]

    def adjoint(self):
        """Kernel of the adjoint operator, conj(K(y, x))."""
        c = np.conj
        return QuadraticKernel(c(self.prefactor), c(self.qyy), c(self.qxx), c(self.qxy),
                               c(self.ly), c(self.lx), c(self.c0), self.real)

    def dressed(self, lx=0.0, ly=0.0, c0=0.0, factor=1.0):
        """Return the kernel multiplied by ``factor * exp(lx x + ly y + c0)``."""
        return QuadraticKernel(self.prefactor * factor, self.qxx, self.qyy, self.qxy,
                               self.lx + lx, self.ly + ly, self.c0 + c0,
                               self.real and np.isrealobj([lx, ly, c0, factor]))

    def rescaled(self, sx, sy=None):
        """Kernel in the variables (sx x, sy y), i.e. K(sx x, sy y)."""
        sy = sx if sy is None else sy
        return QuadraticKernel(self.prefactor, self.qxx * sx * sx, self.qyy * sy * sy,
                               self.qxy * sx * sy, self.lx * sx, self.ly * sy,
                               self.c0, self.real)


def _check_window(tau, name="tau"):
    if not 0.0 < tau < np.pi:
        raise DomainError(f"{name} = {tau!r} outside the caustic-free window (0, pi)")


def mehler(r):
    """Mehler kernel K_r as a `QuadraticKernel`.

    K_r(x, y) = exp((4 x y r - (x^2 + y^2)(1 + r^2)) / (2 (1 - r^2))) / sqrt(pi (1 - r^2)).
    Complex r with |r| <= 1 is accepted (principal square root), which
    covers the generalized Fourier kernel at r = exp(i tau).
    """
    r = complex(r) if np.iscomplexobj(r) else float(r)
    if abs(r) > 1.0 + 1e-12 or r == 1 or r == -1:
        raise DomainError(f"Mehler kernel requires |r| <= 1 and r != +-1, got r = {r!r}")
    one_m = 1.0 - r * r
    real = isinstance(r, float)
    return QuadraticKernel(1.0 / np.sqrt(np.pi * one_m),
                           qxx=-(1 + r * r) / (2 * one_m), qyy=-(1 + r * r) / (2 * one_m),
                           qxy=2 * r / one_m, real=real)


def gen_fourier(tau, conjugate=False):
    """Generalized Fourier kernel as a `QuadraticKernel`.

    The square root is taken positive on 0 < tau < pi and the phase is carried
    by exp(i (pi/2 - tau) / 2). Negative tau in (-pi, 0) returns the complex
    conjugate kernel of |tau|, i.e. the inverse transform. `conjugate` flips
    this once more.
    """
    if tau < 0:
        tau, conjugate = -tau, not conjugate
    _check_window(tau)
    s, c = np.sin(tau), np.cos(tau)
    sign = -1.0 if conjugate else 1.0
    pref = np.exp(sign * 0.5j * (0.5 * np.pi - tau)) / np.sqrt(2 * np.pi * s)
    return QuadraticKernel(pref, qxx=-sign * 0.5j * c / s, qyy=-sign * 0.5j * c / s,
                           qxy=sign * 1j / s)


def _special_checks(t, omega, mu=None):
    _check_window(omega * t, "omega*t")
    if not 0.0 < t < 2 * np.pi:
        raise DomainError(f"t = {t!r} outside (0, 2 pi)")
    if mu is not None and not 0.0 <= mu < 1.0:
        raise DomainError(f"mu = {mu!r} outside [0, 1)")


def special_G(t, omega, mu):
    """Kernel of the special forced problem, built from the conjugate Fourier kernel.

    beta = 2 sqrt(2 mu) sin(t/2). The two extra exponentials are

        exp(sin((omega - 1/2) t) sin(t/2) beta^2 / (2 i sin(omega t)))
        exp((x sin(t/2) + y sin((omega - 1/2) t)) beta / (i sin(omega t)))
    """
    _special_checks(t, omega, mu)
    beta = 2 * np.sqrt(2 * mu) * np.sin(t / 2)
    s1, s2, sw = np.sin((omega - 0.5) * t), np.sin(t / 2), np.sin(omega * t)
    base = gen_fourier(omega * t, conjugate=True)
    return base.dressed(lx=-1j * s2 * beta / sw, ly=-1j * s1 * beta / sw,
                        c0=-0.5j * s1 * s2 * beta ** 2 / sw)


def l_kern(t, omega, eps):
    """Three-parameter kernel L_t generalizing the Fourier kernel (eps = 0 gives it back)."""
    _special_checks(t, omega)
    s1, s2, sw = np.sin((omega - 0.5) * t), np.sin(t / 2), np.sin(omega * t)
    base = gen_fourier(omega * t)
    return base.dressed(lx=1j * s2 * s2 * eps / sw, ly=1j * s1 * s2 * eps / sw,
                        c0=0.5j * s1 * s2 ** 3 * eps ** 2 / sw)


def heat(t, kappa, eps):
    """Diffusion analog kernel: Mehler kernel at r1 r2 dressed by two exponentials.

    r1 = exp(-t (2 kappa - 1/2)), r2 = exp(-t/2), gamma = 2 eps sinh(t/2).
    """
    if not t > 0:
        raise DomainError(f"heat kernel requires t > 0, got {t!r}")
    if not kappa > 0:
        raise DomainError(f"heat kernel requires kappa > 0, got {kappa!r}")
    r1, r2 = np.exp(-t * (2 * kappa - 0.5)), np.exp(-t / 2)
    gam = 2 * eps * np.sinh(t / 2)
    p = (r1 + r2) / (1 + r1 * r2)
    q = (r1 - r2) / (1 - r1 * r2)
    w = -np.expm1(-2 * t * (2 * kappa - 0.5)) * -np.expm1(-t) / -np.expm1(-4 * kappa * t)
    base = mehler(r1 * r2)
    return base.dressed(lx=-(p + q) * gam / 2, ly=-(p - q) * gam / 2, c0=w * gam ** 2 / 4)


def mehler_kernel(r, x, y):
    """Mehler kernel K_r(x, y)."""
    return mehler(r)(x, y)


def gen_fourier_kernel(tau, x, y):
    """Generalized Fourier kernel K_tau(x, y) for 0 < |tau| < pi."""
    return gen_fourier(tau)(x, y)


def special_kernel_G(t, omega, mu, x, y):
    """Special forced-oscillator kernel G_t(x, y); valid for 0 < omega t < pi, 0 < t < 2 pi."""
    return special_G(t, omega, mu)(x, y)


def l_kernel(t, omega, eps, x, y):
    """Three-parameter kernel L_t(x, y)."""
    return l_kern(t, omega, eps)(x, y)


def heat_kernel(t, kappa, eps, x, y):
    """Diffusion analog kernel H_t(x, y); strictly positive."""
    return heat(t, kappa, eps)(x, y)


_BUILDERS = {
    "mehler": (mehler, ("r",)),
    "gen_fourier": (gen_fourier, ("tau",)),
    "special_G": (special_G, ("t", "omega", "mu")),
    "l_kernel": (l_kern, ("t", "omega", "eps")),
    "heat": (heat, ("t", "kappa", "eps")),
}


@dataclass(frozen=True)
class KernelSpec:
    """A kernel family plus its parameters, validated on construction.

    Examples
    --------
    >>> spec = KernelSpec("mehler", {"r": 0.5})
    >>> round(float(spec.evaluate(0.0, 0.0)), 6)
    0.651470
    """
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _BUILDERS:
            raise ValueError(f"unknown kernel kind {self.kind!r}; expected one of {KINDS}")
        names = _BUILDERS[self.kind][1]
        missing = [n for n in names if n not in self.params]
        if missing:
            raise ValueError(f"kernel {self.kind!r} missing parameters {missing}")
        self.build()

    def build(self):
        func, names = _BUILDERS[self.kind]
        return func(*(self.params[n] for n in names))

    def evaluate(self, x, y):
        return self.build()(x, y)
