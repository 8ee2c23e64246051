"""
Variational hydrogen ground state in the Podolsky point-charge potential.

Natural units throughout (hbar = c = 1): m in MeV, e2 = alpha, the Podolsky
length a in MeV^-1, the trial exponent gamma in MeV. For psi = N exp(-gamma r),
N^2 = gamma^3 / pi,

    E(gamma) = gamma^2 / 2m - e2 gamma + e2 4 gamma^3 / (2 gamma + 1/a)^2.

In units gamma = g m e2 and h = a m e2 = a / r_B the stationarity condition
times (2 a gamma + 1)^3 becomes the quartic

    8 h^3 g^4 + 12 h^2 g^3 + 6 h g^2 + (1 - 6 h) g - 1 = 0,

which is what :func:`stationarity_roots` solves.
"""
import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

from .constants import CODATA2018, Length, inverse_energy_to_length, length_to_inverse_energy
from .errors import ConvergenceError, DomainError, ModelError
from .fields import point_charge_potential

DEFAULT_SIGMA_REL = 8.83e-8
PERTURBATIVE_FRACTION = 0.01
RESIDUAL_TOL = 1e-12
AGREEMENT_TOL = 1e-10


@dataclass(frozen=True)
class HydrogenModel:
    m: float   # MeV
    e2: float  # dimensionless coupling
    a: float   # MeV^-1

    def __post_init__(self):
        if not (self.m > 0 and self.e2 > 0 and self.a > 0):
            raise DomainError(f"m, e2 and a must all be positive, got {self}")

    @classmethod
    def physical(cls, a, constants=CODATA2018):
        """Electron in hydrogen; ``a`` is a Length or MeV^-1."""
        if isinstance(a, Length):
            a = length_to_inverse_energy(a, constants)
        return cls(constants.m_electron, constants.alpha, a)

    @property
    def bohr_radius(self):
        return 1.0 / (self.m * self.e2)

    @property
    def reduced_a(self):
        """a / r_B, the expansion parameter 2 m a e2 / 2."""
        return self.a * self.m * self.e2

    @property
    def coulomb_energy(self):
        return -0.5 * self.m * self.e2**2

    @property
    def perturbative(self):
        return self.a < PERTURBATIVE_FRACTION * self.bohr_radius

    def normalization_sq(self, gamma):
        return gamma**3 / math.pi


@dataclass
class VariationalResult:
    model: HydrogenModel
    roots: list
    energies: list
    gamma_star: float
    E_star: float
    gamma_bracket: float
    coulomb_shift: float      # E_star - (-m e2^2 / 2), cancellation-free
    residual: float
    perturbative_gamma: float
    perturbative_E: float

    @property
    def perturbative_error(self):
        """E_star - perturbative_E, evaluated without forming either energy."""
        h = self.model.reduced_a
        g = self.gamma_star / (self.model.m * self.model.e2)
        scale = self.model.m * self.model.e2**2
        return scale * (0.5 * (g - 1.0) ** 2 + 4.0 * h * h * (g**3 / (1.0 + 2.0 * h * g) ** 2 - 1.0))


@dataclass(frozen=True)
class BoundResult:
    sigma_rel: float
    a_max: float     # fm
    mass_min: float  # MeV


def _energy_formula(m, e2, a, gamma):
    return gamma * gamma / (2 * m) - e2 * gamma + e2 * 4 * gamma**3 / (2 * gamma + 1 / a) ** 2


def energy(model, gamma):
    """Closed-form <psi|H|psi> for the exponential trial state."""
    if not gamma > 0:
        raise DomainError(f"trial exponent must be positive, got {gamma!r}")
    return _energy_formula(model.m, model.e2, model.a, gamma)


def energy_derivative(model, gamma):
    """dE/dgamma before clearing denominators."""
    m, e2, a = model.m, model.e2, model.a
    return gamma / m - e2 + e2 * (8 * gamma**3 + 12 * gamma**2 / a) / (2 * gamma + 1 / a) ** 3


def negative_branch_energy(model):
    """(9 a m e2 + 1) / (72 a^2 m): the energy of the excluded root -1/(6a)."""
    m, e2, a = model.m, model.e2, model.a
    return (9 * a * m * e2 + 1) / (72 * a * a * m)


def energy_quadrature(model, gamma, rtol=1e-8):
    """<psi|H|psi> by radial quadrature.

    Kinetic term as (1/2m) 4 pi N^2 int r^2 (psi')^2 dr with psi' = -gamma psi;
    potential term as 4 pi N^2 int r^2 psi^2 e phi(r) dr using
    :func:`point_charge_potential`. The r axis is cut at geometric
    breakpoints from min(a, 1/gamma)/10 out to 50/gamma; on long unsplit
    segments quad can miss the exp(-r/a) layer while reporting a tiny error.
    """
    if not gamma > 0:
        raise DomainError(f"trial exponent must be positive, got {gamma!r}")
    n2 = model.normalization_sq(gamma)
    e = math.sqrt(model.e2)
    a = model.a

    def kinetic(r):
        return r * r * (gamma * math.exp(-gamma * r)) ** 2

    def potential(r):
        return r * r * math.exp(-2 * gamma * r) * e * point_charge_potential(a, r, charge=e)

    start, stop = 0.1 * min(a, 1 / gamma), 50.0 / gamma
    count = max(2, int(math.ceil(math.log(stop / start) / math.log(4.0))) + 1)
    knots = [0.0] + np.geomspace(start, stop, count).tolist()
    total_k = total_v = 0.0
    err_k = err_v = 0.0
    for lo, hi in zip(knots, knots[1:] + [math.inf]):
        if hi <= lo:
            continue
        for fn, acc in ((kinetic, "k"), (potential, "v")):
            val, err = integrate.quad(fn, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)
            if acc == "k":
                total_k += val
                err_k += err
            else:
                total_v += val
                err_v += err
    kin = 4 * math.pi * n2 * total_k / (2 * model.m)
    pot = 4 * math.pi * n2 * total_v
    result = kin + pot
    achieved = 4 * math.pi * n2 * (err_k / (2 * model.m) + err_v) / abs(result)
    if achieved > rtol:
        raise ConvergenceError(f"energy quadrature reached {achieved:.2e} > {rtol:.1e}", achieved=achieved)
    return result


def normalization_integral(gamma):
    """4 pi N^2 int r^2 e^{-2 gamma r} dr, which must equal 1."""
    val, _ = integrate.quad(lambda r: r * r * math.exp(-2 * gamma * r), 0, math.inf,
                            epsabs=0.0, epsrel=1e-13)
    return 4 * math.pi * gamma**3 / math.pi * val


def quartic_coefficients(h):
    """Coefficients, highest power first, of the stationarity quartic in g = gamma r_B."""
    return [8 * h**3, 12 * h**2, 6 * h, 1 - 6 * h, -1.0]


def stationarity_quartic(model, gamma):
    """(8a^3/m) gamma^4 + (12a^2/m) gamma^3 + (6a/m) gamma^2 - 6 a e2 gamma + gamma/m - e2."""
    m, e2, a = model.m, model.e2, model.a
    return (8 * a**3 / m * gamma**4 + 12 * a**2 / m * gamma**3 + 6 * a / m * gamma**2
            - 6 * a * e2 * gamma + gamma / m - e2)


def _scaled_residual(coeffs, g):
    powers = [g ** k for k in range(len(coeffs) - 1, -1, -1)]
    value = sum(c * p for c, p in zip(coeffs, powers))
    scale = sum(abs(c * p) for c, p in zip(coeffs, powers))
    return abs(value) / scale


def _polish(coeffs, g, iterations=8):
    dcoeffs = np.polyder(coeffs)
    for _ in range(iterations):
        f = np.polyval(coeffs, g)
        df = np.polyval(dcoeffs, g)
        if df == 0:
            break
        step = f / df
        g -= step
        if abs(step) <= 1e-17 * abs(g):
            break
    return g


def stationarity_roots(model):
    """All real roots gamma (MeV) of the stationarity quartic, ascending.

    Roots come from the companion matrix of the dimensionless quartic and are
    Newton-polished; the imaginary-part filter is relative to |root|.
    """
    h = model.reduced_a
    coeffs = np.array(quartic_coefficients(h))
    raw = np.roots(coeffs)
    real = []
    for z in raw:
        g = _polish(coeffs, float(z.real)) if abs(z.imag) <= 1e-6 * max(abs(z), 1.0) else None
        if g is not None and _scaled_residual(coeffs, g) <= 1e-10:
            real.append(g)
    real.sort()
    deduped = []
    for g in real:
        if not deduped or abs(g - deduped[-1]) > 1e-12 * max(abs(g), 1.0):
            deduped.append(g)
    unit = model.m * model.e2
    return [g * unit for g in deduped]


def truncated_roots(model):
    """Roots of the quartic kept to first order in a: (gamma_plus, gamma_minus).

    6 h g^2 + (1 - 6 h) g - 1 = (6 h g + 1)(g - 1), so the roots are exactly
    m e2 and -1/(6a). The full quartic's negative root is elsewhere, near
    -(1 - (4h)^(1/3)) / (2a).
    """
    return model.m * model.e2, -1.0 / (6.0 * model.a)


_GOLDEN = (mpmath.sqrt(5) - 1) / 2


def bracket_minimum(model, lo_factor=0.0, hi_factor=10.0, dps=40, rtol=1e-20):
    """Golden-section search of E on (0, hi_factor * m e2], carried in mpmath.

    Derivative-free and independent of the quartic; extended precision is
    needed because E is flat at its minimum, which caps a double-precision
    search at ~sqrt(eps) relative accuracy in gamma.
    """
    with mpmath.workdps(dps):
        h = mpmath.mpf(model.reduced_a)

        def f(g):
            return g * g / 2 - g + 4 * h * h * g**3 / (1 + 2 * h * g) ** 2

        lo, hi = mpmath.mpf(lo_factor), mpmath.mpf(hi_factor)
        x1 = hi - _GOLDEN * (hi - lo)
        x2 = lo + _GOLDEN * (hi - lo)
        f1, f2 = f(x1), f(x2)
        while hi - lo > rtol * (abs(x1) + abs(x2)):
            if f1 < f2:
                hi, x2, f2 = x2, x1, f1
                x1 = hi - _GOLDEN * (hi - lo)
                f1 = f(x1)
            else:
                lo, x1, f1 = x1, x2, f2
                x2 = lo + _GOLDEN * (hi - lo)
                f2 = f(x2)
        g = (lo + hi) / 2
        if g <= lo_factor or hi_factor - g < 1e-6:
            raise ModelError("energy has no interior minimum on the search bracket")
        return float(g) * model.m * model.e2


def minimize(model, check=True):
    """Least-energy positive stationary point, cross-checked by golden section."""
    roots = stationarity_roots(model)
    positive = [g for g in roots if g > 0]
    energies = [_energy_formula(model.m, model.e2, model.a, g) for g in roots]
    if not positive:
        raise ModelError(f"no positive stationary point for a = {model.a!r}")
    gamma_star = min(positive, key=lambda g: energy(model, g))
    E_star = energy(model, gamma_star)
    gamma_bracket = bracket_minimum(model) if check else math.nan
    if check and abs(gamma_bracket / gamma_star - 1) > AGREEMENT_TOL:
        raise ModelError(f"quartic root {gamma_star!r} and golden-section minimum "
                         f"{gamma_bracket!r} disagree")
    h = model.reduced_a
    unit = model.m * model.e2
    g = gamma_star / unit
    shift = model.m * model.e2**2 * (0.5 * (g - 1.0) ** 2 + 4 * h * h * g**3 / (1 + 2 * h * g) ** 2)
    residual = _scaled_residual(quartic_coefficients(h), g)
    return VariationalResult(
        model=model, roots=roots, energies=energies, gamma_star=gamma_star, E_star=E_star,
        gamma_bracket=gamma_bracket, coulomb_shift=shift, residual=residual,
        perturbative_gamma=unit,
        perturbative_E=model.coulomb_energy * (1 - 2 * (2 * model.m * model.a * model.e2) ** 2),
    )


def bound_a(sigma_rel=DEFAULT_SIGMA_REL, constants=CODATA2018):
    """Largest a compatible with a relative ground-state uncertainty ``sigma_rel``.

    Requiring the relative shift 2 (2 m a e2)^2 to stay below sigma_rel gives
    a_max = (r_B / 2) sqrt(sigma_rel / 2). The default sigma_rel gives a_max of
    about 5.56 fm; it was chosen to hit that bound, not taken from a table.
    """
    if not sigma_rel > 0:
        raise DomainError(f"sigma_rel must be positive, got {sigma_rel!r}")
    a_max = 0.5 * constants.bohr_radius_fm * math.sqrt(sigma_rel / 2)
    return BoundResult(sigma_rel=sigma_rel, a_max=a_max, mass_min=constants.hbar_c / a_max)


def to_ev(energy_mev):
    return energy_mev * 1e6


def a_in_fm(model, constants=CODATA2018):
    return inverse_energy_to_length(model.a, constants).value
