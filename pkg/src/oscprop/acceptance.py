"""Acceptance suite: named numerical checks grouped by criterion number.

Each case returns a `CaseResult` with the measured metric, its tolerance and
the verdict. The suite is shared by the test-suite and the ``verify`` command.
"""
import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.special import roots_hermite

from . import amplitudes as amp
from . import cauchy
from . import coeffs as co
from . import kernels as ker
from . import oracle
from . import propagators as prop
from . import specfun as sf


@dataclass
class CaseResult:
    criterion: int
    case: str
    metric: float
    tolerance: float
    passed: bool
    expected_fail: bool = False
    note: str = ""

    def as_dict(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


_REGISTRY = []


def case(criterion, expected_fail=False, note="", mode="below"):
    """Register a check returning (metric, tolerance).

    `mode` "below" passes when metric < tolerance, "above" when metric >= tolerance.
    """
    def wrap(func):
        def run():
            metric, tol = func()
            metric = float(metric)
            ok = metric >= tol if mode == "above" else metric < tol
            return CaseResult(criterion, func.__name__, metric, float(tol), bool(ok),
                              expected_fail, note)
        run.__name__ = func.__name__
        run.criterion = criterion
        run.expected_fail = expected_fail
        run.note = note
        _REGISTRY.append(run)
        return run
    return wrap


def cases(criteria=None):
    """Registered cases, optionally restricted to some criterion numbers."""
    return [c for c in _REGISTRY if criteria is None or c.criterion in criteria]


def run_all(criteria=None):
    return [c() for c in cases(criteria)]


# ---------------------------------------------------------------- shared helpers

def _rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def _cosine_drive(omega=1.0):
    return co.DriveSpec(co.Cosine(2.0, omega), co.ZERO, omega)


def _hyperbolic_drive(kappa, eps):
    q = 2 * kappa - 1
    return (lambda s: -eps * np.cosh(q * np.asarray(s)),
            lambda s: eps * np.sinh(q * np.asarray(s)))


def _gauss_legendre(lo, hi, n):
    s, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (hi - lo)
    return lo + half * (s + 1), half * w


# ---------------------------------------------------------------- 1 closed-form coefficients

@case(1)
def coeffs_closed_form():
    err = 0.0
    for omega in (1.0, 1.3):
        drive = _cosine_drive(omega)
        for k in range(1, 21):
            t = np.pi / omega * k / 21
            c = co.compute_coeffs(drive, t)
            exact = (np.sin(omega * t) / omega, t,
                     np.sin(2 * omega * t) / (8 * omega ** 2) - t / (4 * omega))
            err = max(err, abs(c.a - exact[0]), abs(c.b - exact[1]), abs(c.c - exact[2]))
    return err, 1e-10


# ---------------------------------------------------------------- 2 PDE residuals

_H = 1e-4


def _residual_schrodinger(green, omega, f, g, xs, ts, y):
    """Normalized residual of i G_t = (w/2)(-G_xx + x^2 G) - f x G + i g G_x."""
    worst = 0.0
    for t in ts:
        gm, g0, gp = (green(t + d, xs, y) for d in (-_H, 0.0, _H))
        gt = (gp - gm) / (2 * _H)
        gxm, gxp = green(t, xs - _H, y), green(t, xs + _H, y)
        gx = (gxp - gxm) / (2 * _H)
        gxx = (gxp - 2 * g0 + gxm) / _H ** 2
        w, ft, gtv = omega(t), f(t), g(t)
        terms = [1j * gt, -0.5 * w * gxx, 0.5 * w * xs * xs * g0, -ft * xs * g0, 1j * gtv * gx]
        res = terms[0] - sum(terms[1:])
        scale = sum(np.abs(v) for v in terms)
        worst = max(worst, float(np.max(np.abs(res) / scale)))
    return worst


@case(2)
def pde_forced():
    drive = _cosine_drive(1.0)
    xs = np.linspace(-2, 2, 5)
    return _residual_schrodinger(lambda t, x, y: prop.forced_propagator(drive, t, x, y),
                                 lambda t: 1.0, drive.f, drive.g, xs,
                                 np.linspace(0.5, 2.5, 5), 0.4), 1e-6


@case(2)
def pde_tdfreq():
    drive = co.DriveSpec(lambda s: np.cos(1.5 * np.asarray(s)),
                         lambda s: 0.3 * np.sin(np.asarray(s)),
                         lambda s: 1.0 + 0.2 * np.sin(np.asarray(s)))
    xs = np.linspace(-2, 2, 5)
    return _residual_schrodinger(lambda t, x, y: prop.tdfreq_propagator(drive, t, x, y),
                                 drive.omega, drive.f, drive.g, xs,
                                 np.linspace(0.3, 2.4, 5), -0.3), 1e-6


@case(2)
def pde_diffusion():
    kappa, f0, g0 = 0.75, 1.0, 0.5
    f, g = co.Constant(f0), co.Constant(g0)
    xs = np.linspace(-2, 2, 5)
    y = 0.3
    worst = 0.0
    for t in np.linspace(0.2, 2.0, 5):
        u = [prop.diffusion_green(kappa, f, g, t + d, xs, y) for d in (-_H, 0.0, _H)]
        ut = (u[2] - u[0]) / (2 * _H)
        um, up = (prop.diffusion_green(kappa, f, g, t, xs + d, y) for d in (-_H, _H))
        ux = (up - um) / (2 * _H)
        uxx = (up - 2 * u[1] + um) / _H ** 2
        terms = [ut, kappa * uxx, -kappa * xs * xs * u[1], f0 * xs * u[1], -g0 * ux]
        res = terms[0] - sum(terms[1:])
        worst = max(worst, float(np.max(np.abs(res) / sum(np.abs(v) for v in terms))))
    return worst, 1e-6


# ---------------------------------------------------------------- 3 two-path equivalence

@case(3)
def two_path_special():
    omega, mu, t, N = 1.3, 0.25, 0.9, 64
    wave = cauchy.SampledWave.from_function(cauchy.gaussian(0.5, 1.2, 0.7))
    integral = cauchy.propagate_integral(prop.special_kernel(omega, mu, t), wave)
    spectral = cauchy.synthesize(
        cauchy.propagate_spectral(amp.cnm_special(omega, mu, t, N), cauchy.project(wave, N)),
        wave.grid)
    return cauchy.l2_distance(integral, spectral), 1e-6


# ---------------------------------------------------------------- 4 matrix elements

def _t_quadrature(alpha, beta, gamma, m, n):
    """Defining integral of T_mn by a dense Gauss-Legendre rule on [-20, 20]."""
    x, w = _gauss_legendre(-20.0, 20.0, 800)
    return np.sum(w * sf.osc_wavefunction(m, x) * np.exp(1j * (gamma + beta * x))
                  * sf.osc_wavefunction(n, x + alpha))


@case(4)
def matrix_element_vs_quadrature():
    alpha, beta, gamma = 0.5, 1.0, 0.2
    return max(_rel(amp.matrix_element_T(alpha, beta, gamma, m, n),
                    _t_quadrature(alpha, beta, gamma, m, n))
               for m in range(6) for n in range(6)), 1e-8


@case(4)
def matrix_T_unitarity():
    alpha, beta, gamma = 0.7, 0.4, 0.2
    T = np.array([[amp.matrix_element_T(alpha, beta, gamma, m, n) for n in range(81)]
                  for m in range(7)])
    return np.abs(T.conj() @ T.T - np.eye(7)).max(), 1e-9


# ---------------------------------------------------------------- 5 addition formulas

@case(5)
def addition_formula():
    b1, b2 = 0.6, 0.9
    lhs = amp.t_matrix(b1, 6, 96) @ amp.t_matrix(b2, 6, 96).T
    rhs = np.array([[amp.matrix_element_T(0.0, b1 + b2, 0.0, m, n) for n in range(7)]
                    for m in range(7)])
    return np.abs(lhs - rhs).max(), 1e-8


@case(5)
def addition_formula_complex():
    b1, b2, s = 0.6, 0.9, np.exp(-0.3j)
    lhs = (amp.t_matrix(b1, 6, 96) * s ** np.arange(97)) @ amp.t_matrix(b2, 6, 96).T
    lam = 0.5 * (b1 * b1 + b2 * b2 + b1 * b2 * (s + 1 / s))
    err = 0.0
    for m in range(7):
        for n in range(7):
            rhs = (1j ** (m + n) / math.sqrt(2 ** (m + n) * math.factorial(m) * math.factorial(n))
                   * np.exp(-(b1 * b1 + b2 * b2 + 2 * b1 * b2 * s) / 4)
                   * (b1 + b2 * s) ** m * (b2 + b1 * s) ** n
                   * sf.hyp2f0_terminating(m, n, -1 / lam))
            err = max(err, abs(lhs[m, n] - rhs))
    return err, 1e-7


# ---------------------------------------------------------------- 6 Charlier identities

@case(6)
def charlier_orthogonality():
    mu, n_max = 0.5, 10
    # stop once the Poisson tail is below 1e-16 and the weighted terms of the
    # highest degree (which grow like k^(2 n)) have become negligible as well
    norm_hi = math.factorial(n_max) / mu ** n_max
    k = 0
    while (sf.poisson_tail(mu, k) >= 1e-16
           or sf.poisson_weight(mu, k) * sf.charlier(n_max, mu, k) ** 2 > 1e-18 * norm_hi):
        k += 1
    ks = np.arange(k + 1)
    table = sf.charlier_table(n_max, mu, ks)
    weights = np.array([sf.poisson_weight(mu, j) for j in ks])
    gram = (table * weights) @ table.T
    norms = np.array([math.factorial(n) / mu ** n for n in range(n_max + 1)])
    return np.abs(gram / np.sqrt(np.outer(norms, norms)) - np.eye(n_max + 1)).max(), 1e-10


@case(6)
def charlier_recurrence_vs_2f0():
    """Relative difference; at exact zeros of c_n the sum of |terms| sets the scale."""
    err = 0.0
    for mu in (0.3, 0.5, 2.0):
        for n in range(11):
            for x in range(11):
                rec, ser = sf.charlier(n, mu, x), sf.charlier_series(n, mu, x)
                absum = sf.hyp2f0_terminating(n, x, 1.0 / mu)
                scale = max(abs(rec), abs(ser))
                if scale < 1e-12 * absum:
                    scale = absum
                err = max(err, abs(rec - ser) / scale)
    return err, 1e-10


@case(6)
def charlier_laguerre_relation():
    err = 0.0
    for mu in (0.4, 1.3):
        for n in range(9):
            for x in (0.5, 2.0, 5.0, 7.3):
                lhs = sf.charlier(n, mu, x)
                rhs = (-mu) ** (-n) * math.factorial(n) * sf.laguerre(n, x - n, mu)
                err = max(err, _rel(lhs, rhs))
    return err, 1e-10


def _hermite_integral(m, n, y, z):
    """int H_m(x + y) H_n(x + z) e^{-x^2} dx by Gauss-Hermite quadrature (exact here)."""
    x, w = roots_hermite(40)
    return float(np.sum(w * sf.hermite(m, x + y) * sf.hermite(n, x + z)))


@case(6)
def hermite_kernel_integrals():
    err = 0.0
    for m in range(7):
        for n in range(m, 7):
            for y in (0.3, 1.0):
                exact = (math.sqrt(math.pi) * 2 ** n * math.factorial(m) * y ** (n - m)
                         * sf.laguerre(m, n - m, -2 * y * y))
                err = max(err, _rel(_hermite_integral(m, n, y, y), exact))
            y, z = 0.3, 0.7
            exact = (math.sqrt(math.pi) * 2 ** n * math.factorial(m) * z ** (n - m)
                     * sf.laguerre(m, n - m, -2 * y * z))
            err = max(err, _rel(_hermite_integral(m, n, y, z), exact))
    return err, 1e-8


# ---------------------------------------------------------------- 7 eigenrelations

_XS = np.array([-1.5, 0.0, 0.7, 2.0])


@case(7)
def mehler_eigenrelation():
    y, w = _gauss_legendre(-16, 16, 400)
    err = 0.0
    for r in (0.3, 0.7):
        K = ker.mehler(r)(_XS[:, None], y[None, :])
        basis = sf.osc_basis(8, y)
        at_x = sf.osc_basis(8, _XS)
        for n in range(9):
            err = max(err, np.abs(K @ (w * basis[n]) - r ** n * at_x[n]).max())
    return err, 1e-8


@case(7)
def gen_fourier_eigenrelation():
    tau = 1.0
    y, w = _gauss_legendre(-16, 16, 800)
    K = ker.gen_fourier(tau)(_XS[:, None], y[None, :])
    basis = sf.osc_basis(6, y)
    at_x = sf.osc_basis(6, _XS)
    return max(np.abs(K @ (w * basis[n]) - np.exp(1j * n * tau) * at_x[n]).max()
               for n in range(7)), 1e-8


@case(7)
def l_kernel_round_trip():
    grid = cauchy.Grid(-8.0, 8.0, 513)
    g = cauchy.SampledWave.from_function(lambda y: np.exp(-y * y) + 0j, grid)
    L = ker.l_kern(0.7, 1.3, 0.5)
    f = cauchy.propagate_integral(L, g, out_grid=cauchy.Grid(-14.0, 14.0, 897))
    back = cauchy.propagate_integral(L.adjoint(), f, out_grid=grid)
    return cauchy.l2_distance(back, g), 1e-8


# ---------------------------------------------------------------- 8 limits

def _constant_field_kernel(m, hb, F, dt, x, y):
    return (np.sqrt(m / (2j * np.pi * hb * dt)) * np.exp(1j * m * (x - y) ** 2 / (2 * hb * dt))
            * np.exp(1j * F * (x + y) * dt / (2 * hb) - 1j * F * F * dt ** 3 / (24 * hb * m)))


@case(8, mode="above")
def physical_small_omega_order():
    F, t0, t, x, y = 0.5, 0.0, 1.0, 0.3, -0.2
    errs = []
    for w in (1e-2, 1e-3):
        p = prop.PhysicalParams(hbar=1.0, mass=1.0, omega=w, F=F)
        errs.append(abs(prop.physical_propagator(p, t, t0, x, y) - _constant_field_kernel(1.0, 1.0, F, t - t0, x, y)))
    return math.log10(errs[0] / errs[1]), 2.0


@case(8)
def physical_free_particle():
    err = 0.0
    for m, hb, dt in ((1.0, 1.0, 0.7), (2.5, 0.3, 1.9)):
        p = prop.PhysicalParams(hbar=hb, mass=m, omega=0.0, F=0.0)
        for x, y in ((0.3, -0.2), (1.5, 0.4)):
            exact = np.sqrt(m / (2j * np.pi * hb * dt)) * np.exp(1j * m * (x - y) ** 2 / (2 * hb * dt))
            err = max(err, _rel(prop.physical_propagator(p, dt, 0.0, x, y), exact))
    return err, 1e-14


@case(8)
def diffusion_zero_drive_limit():
    kappa = 0.75
    xs = np.linspace(-3, 3, 7)
    err = 0.0
    for t in (0.3, 1.0, 2.5):
        lhs = prop.diffusion_green(kappa, co.ZERO, co.ZERO, t, xs[:, None], xs[None, :])
        rhs = np.exp(-kappa * t) * ker.mehler_kernel(np.exp(-2 * kappa * t), xs[:, None], xs[None, :])
        err = max(err, float(np.max(np.abs(lhs - rhs) / np.abs(rhs))))
    return err, 1e-12


# ---------------------------------------------------------------- 9 Landau

_LANDAU = prop.LandauParams(hbar=1.0, mass=1.0, light_speed=1.0, charge=1.0, charge_sign=-1,
                            H_field=1.3, mu_mag=0.3, spin_s=0.5, sigma=0.5)


@case(9)
def landau_poisson_law():
    F = co.Constant(0.6)
    A = amp.cnm_landau(_LANDAU, F, 1.7, 0.2, 40)
    mu = amp.landau_poisson_mean(_LANDAU, F, 1.7, 0.2)
    return max(abs(abs(A.entries[n, 0]) ** 2 - sf.poisson_weight(mu, n)) for n in range(11)), 1e-10


@case(9)
def landau_normalization():
    F = co.Constant(0.6)
    A = amp.cnm_landau(_LANDAU, F, 1.7, 0.2, 40)
    mu = amp.landau_poisson_mean(_LANDAU, F, 1.7, 0.2)
    tail = sf.poisson_tail(mu, 40)
    return abs(1.0 - A.column_norms()[0]), max(tail, 1e-14)


@case(9)
def landau_zero_force():
    r, rho = np.array([0.3, 0.5, -0.2]), np.array([-0.4, 0.1, 0.6])
    full = prop.landau_propagator(_LANDAU, co.ZERO, 1.1, 0.2, r, rho)
    bare = (prop.free_propagator(1.0, 1.0, r[2] - rho[2], 0.9)
            * prop.landau_plane_propagator(_LANDAU, r[0], rho[0], r[1], rho[1], 0.9))
    return abs(full / bare - 1.0), 1e-14


@case(9)
def landau_double_momentum_integral():
    F = co.Constant(0.6)
    r, rho = (0.3, 0.5, -0.2), (-0.4, 0.1, 0.6)
    err = 0.0
    for sign in (1, -1):
        p = prop.LandauParams(charge_sign=sign, H_field=1.3, mu_mag=0.3, spin_s=0.5, sigma=0.5)
        ref = oracle.landau_double_fourier(p, F, 1.1, 0.2, r, rho)
        err = max(err, _rel(prop.landau_propagator(p, F, 1.1, 0.2, np.array(r), np.array(rho)), ref))
    return err, 1e-4


@case(9)
def landau_symmetric_gauge():
    x, xi, y, eta = 0.5, -0.2, 0.3, 0.1
    err = 0.0
    for sign in (1, -1):
        p = prop.LandauParams(charge_sign=sign, H_field=1.3, mass=1.7, hbar=0.8, mu_mag=0.0)
        dt = 0.9
        gh = prop.landau_plane_propagator(p, x, xi, y, eta, dt)
        lhs = prop.gauge_transform_landau(p, gh, x, xi, y, eta)
        w = p.omega_H
        rhs = (p.mass * w / (4j * np.pi * p.hbar * np.sin(w * dt / 2))
               * np.exp(0.25j * p.mass * w / p.hbar
                        * (((x - xi) ** 2 + (y - eta) ** 2) / np.tan(w * dt / 2)
                           - 2 * sign * (x * eta - xi * y))))
        err = max(err, _rel(lhs, rhs))
    return err, 1e-12


# ---------------------------------------------------------------- 10 oracle equivalence

_CN_LEVELS = ((1 / 32, 1 / 2048), (1 / 64, 1 / 4096), (1 / 128, 1 / 8192))


@lru_cache(maxsize=None)
def _cn_runs(equation):
    """Finite-difference solutions on three levels and the analytic solution on each grid."""
    if equation == "schrodinger":
        drive, kappa, t = _cosine_drive(1.0), None, 1.0
        init = cauchy.gaussian(0.0, 1.0, 0.0)
        kernel = prop.forced_kernel(drive, t)
    else:
        kappa, t = 0.75, 0.5
        f, g = _hyperbolic_drive(kappa, 0.4)
        drive = co.DriveSpec(f, g, 1.0)
        init = cauchy.gaussian(0.3, 1.0, 0.0)
        kernel = prop.diffusion_kernel(kappa, f, g, t)
    out = []
    for dx, dt in _CN_LEVELS:
        cfg = oracle.FDConfig(dx, dt, -12.0, 12.0)
        w0 = cfg.sample(init)
        if equation == "diffusion":
            w0 = cauchy.SampledWave(w0.x_min, w0.x_max, w0.values.real)
        fd = oracle.crank_nicolson_evolve(equation, drive, cfg, w0, t, kappa=kappa)
        out.append((fd, cauchy.propagate_integral(kernel, w0)))
    return out


def _self_convergence_order(runs):
    coarse, mid, fine = (r[0] for r in runs)
    d1 = mid.values[::2] - coarse.values
    d2 = fine.values[::4] - mid.values[::2]
    return math.log2(np.linalg.norm(d1) / np.linalg.norm(d2))


@case(10)
def cn_vs_analytic_schrodinger():
    fd, exact = _cn_runs("schrodinger")[1]
    return cauchy.l2_distance(fd, exact), 1e-4


@case(10)
def cn_vs_analytic_diffusion():
    fd, exact = _cn_runs("diffusion")[1]
    return cauchy.l2_distance(fd, exact), 1e-4


@case(10)
def cn_self_convergence_order():
    return max(abs(_self_convergence_order(_cn_runs(eq)) - 2.0)
               for eq in ("schrodinger", "diffusion")), 0.1


# ---------------------------------------------------------------- 11 structural invariants

@case(11)
def identity_limit_amplitudes():
    drive = co.DriveSpec(co.Cosine(2.0, 1.0), co.Sine(0.5, 0.7), 1.0)
    err = np.abs(amp.cnm_general(drive, 1e-8, 32).entries - np.eye(33)).max()
    f, g = co.Constant(1.0), co.Constant(0.5)
    err = max(err, np.abs(amp.cnm_diffusion(0.75, f, g, 1e-8, 32).entries - np.eye(33)).max())
    err = max(err, np.abs(amp.cnm_special(1.3, 0.25, 1e-8, 32).entries - np.eye(33)).max())
    landau = amp.cnm_landau(prop.LandauParams(), co.Constant(0.4), 0.5 + 1e-8, 0.5, 32)
    err = max(err, np.abs(landau.entries - np.eye(33)).max())
    return err, 1e-6


@case(11)
def identity_at_initial_time():
    """Amplitude matrices evaluated exactly at t = t0."""
    drive = co.DriveSpec(co.Cosine(2.0, 1.0), co.Sine(0.5, 0.7), 1.0)
    mats = (amp.cnm_general(drive, 0.0, 32), amp.cnm_special(1.3, 0.25, 0.0, 32),
            amp.cnm_diffusion(0.75, co.Constant(1.0), co.Constant(0.5), 0.0, 32))
    return max(np.abs(m.entries - np.eye(33)).max() for m in mats), 1e-10


def _identity_errors(times):
    wave = cauchy.SampledWave.from_function(cauchy.gaussian(0.5, 1.2, 0.7))
    return wave, [cauchy.l2_distance(cauchy.propagate_integral(prop.sho_kernel(1.0, t), wave), wave)
                  for t in times]


@case(11, expected_fail=True,
      note="unattainable: every normalized state moves by at least 2 sin(omega t / 4) "
           "~ 5e-4 in L2 at omega t = 1e-3")
def identity_limit_kernel_fixed_time():
    return _identity_errors([1e-3])[1][0], 1e-4


@case(11)
def near_delta_kernel():
    """A kernel at t = 1e-4 barely moves the state (max pointwise change)."""
    wave = cauchy.SampledWave.from_function(cauchy.gaussian(0.5, 1.2, 0.7))
    drive = _cosine_drive(1.0)
    err = 0.0
    for kernel in (prop.sho_kernel(1.0, 1e-4), prop.forced_kernel(drive, 1e-4)):
        err = max(err, np.abs(cauchy.propagate_integral(kernel, wave).values - wave.values).max())
    return err, 1e-3


@case(11)
def identity_limit_kernel_rate():
    """||psi(t) - psi0|| / (t ||H psi0||) -> 1 as t -> 0, i.e. the identity is approached linearly."""
    wave, errs = _identity_errors([1e-3])
    state = cauchy.project(wave, 100)
    h_norm = math.sqrt(sum(abs(c) ** 2 * (n + 0.5) ** 2 for n, c in enumerate(state.coefficients)))
    return abs(errs[0] / (1e-3 * h_norm) - 1.0), 1e-3


@case(11)
def unitarity():
    wave = cauchy.SampledWave.from_function(cauchy.gaussian(0.5, 1.2, 0.7))
    n0 = wave.norm()
    err = 0.0
    drive = _cosine_drive(1.0)
    for t in (0.2, 0.5, 0.9):
        for kernel in (prop.sho_kernel(1.0, t), prop.special_kernel(1.3, 0.25, t),
                       prop.forced_kernel(drive, t)):
            err = max(err, abs(cauchy.propagate_integral(kernel, wave).norm() - n0))
    return err, 1e-8


@case(11)
def semigroup_composition():
    wave = cauchy.SampledWave.from_function(cauchy.gaussian(0.5, 1.2, 0.7))
    err = 0.0
    const = co.DriveSpec(co.Constant(0.8), co.Constant(0.3), 1.0)
    for make in (lambda t: prop.sho_kernel(1.0, t), lambda t: prop.forced_kernel(const, t)):
        two = cauchy.propagate_integral(make(0.4), cauchy.propagate_integral(make(0.3), wave))
        one = cauchy.propagate_integral(make(0.7), wave)
        err = max(err, cauchy.l2_distance(two, one))
    A, B, C = prop.sho_kernel(1.0, 0.3), prop.sho_kernel(1.0, 0.4), prop.sho_kernel(1.0, 0.7)
    for x, y in ((0.3, -0.5), (1.2, 2.0), (-3.0, 1.0)):
        err = max(err, abs(oracle.brute_force_compose(A, B, x, y) - C(x, y)))
    return err, 1e-6


@case(11)
def diffusion_positivity():
    """Negative margin: smallest entry or kernel value must be positive (metric = -min)."""
    f, g = co.Constant(1.0), co.Constant(0.5)
    lowest = amp.cnm_diffusion(0.75, f, g, 0.5, 24).entries.min()
    xs = np.linspace(-4, 4, 21)
    lowest = min(lowest, ker.heat_kernel(0.5, 0.75, 0.4, xs[:, None], xs[None, :]).min(),
                 prop.diffusion_green(0.75, f, g, 0.5, xs[:, None], xs[None, :]).min())
    return -lowest, 0.0


@case(11)
def diffusion_long_time_decay():
    """Amplitudes vanish at large t and the L2 norm of a solution shrinks monotonically.

    At t = 20 the closed form for the special drive is used: the generic
    coefficient integrals cancel catastrophically there (terms of size e^40
    combine into results of size e^20).
    """
    kappa, eps = 1.0, 0.4
    f, g = _hyperbolic_drive(kappa, eps)
    late = np.abs(amp.cnm_diffusion_special(kappa, eps, 20.0, 16).entries).max()
    wave = cauchy.SampledWave.from_function(lambda x: np.exp(-(x - 0.3) ** 2 / 2))
    norms = [cauchy.propagate_integral(prop.diffusion_kernel(0.75, *_hyperbolic_drive(0.75, eps), t),
                                       wave).norm()
             for t in (0.5, 1.0, 2.0, 4.0)]
    monotone = all(b < a for a, b in zip(norms, norms[1:]))
    return (late if monotone else np.inf), 1e-6


@case(11)
def diffusion_special_closed_form():
    kappa, eps, t = 0.75, 0.4, 0.6
    f, g = _hyperbolic_drive(kappa, eps)
    return np.abs(amp.cnm_diffusion(kappa, f, g, t, 16).entries
                  - amp.cnm_diffusion_special(kappa, eps, t, 16).entries).max(), 1e-9
