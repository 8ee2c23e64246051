"""
Electrostatic potentials of Podolsky electrodynamics.

Cylinder: inside an infinite conducting tube of radius R the potential obeys
(1 - a^2 lap) lap phi = 0. With a regular origin, finite div E at r = 0 and a
measured axis value phi(0) = eps * V_total, the solution reduces to

    phi(r) = V_total * [ (1 - eps) I0(r/a) / I0(R/a) + eps ].

Point charge: phi(r) = -(e/r) (1 - exp(-r/a)) in natural units.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import DomainError


def complement(epsilon=None, one_minus_epsilon=None):
    """Return 1 - eps, preferring an explicitly supplied complement."""
    if one_minus_epsilon is not None:
        value = float(one_minus_epsilon)
    elif epsilon is not None:
        value = 1.0 - float(epsilon)
    else:
        raise DomainError("either epsilon or one_minus_epsilon is required")
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"epsilon must lie in [0, 1], got 1 - eps = {value!r}")
    return value


@dataclass(frozen=True)
class CylinderGeometry:
    """Inner-tube radius ``R`` and the two arm radii ``r0`` and ``r0 + s`` (metres)."""

    R: float
    r0: float
    s: float

    def __post_init__(self):
        if not (self.r0 > 0 and self.s >= 0 and self.r0 + self.s < self.R):
            raise DomainError(
                f"geometry needs 0 < r0 and r0 + s < R, got R={self.R}, r0={self.r0}, s={self.s}")

    @property
    def outer_arm(self):
        return self.r0 + self.s

    def scaled(self, factor):
        return CylinderGeometry(self.R * factor, self.r0 * factor, self.s * factor)


@dataclass(frozen=True)
class CylinderSolution:
    """Reduced cylinder solution.

    ``one_minus_epsilon`` is the stored quantity; pass it directly when eps is
    within ~1e-8 of one to avoid cancellation.
    """

    a: float
    v_total: float
    epsilon: float = None
    one_minus_epsilon: float = None

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"Podolsky length a must be positive, got {self.a!r}")
        comp = complement(self.epsilon, self.one_minus_epsilon)
        object.__setattr__(self, "one_minus_epsilon", comp)
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", 1.0 - comp)

    # Constants of the general solution a^2 A I0 + a^2 B K0 + D ln(r/a) + C.
    # Regularity at r = 0 forces D = a^2 B and finite div E forces B = g(a) A = 0;
    # C = f(a) a^2 A with f(a) = eps I0(R/a) / (1 - eps).
    def constants(self, geom):
        """Return ``(A, B, C, D)``. Needs I0(R/a) in range, so only for moderate R/a."""
        i0_R = specfun.bessel_i0(geom.R / self.a)
        A = self.v_total * self.one_minus_epsilon / (self.a**2 * i0_R)
        B = 0.0
        D = self.a**2 * B
        C = self.epsilon * self.v_total
        return A, B, C, D


@dataclass
class PotentialProfile:
    radii: np.ndarray
    phi: np.ndarray
    e_field: np.ndarray
    header: tuple = field(default=("r_m", "phi_V", "E_V_per_m"))

    def __post_init__(self):
        self.radii = np.asarray(self.radii, dtype=float)
        self.phi = np.asarray(self.phi, dtype=float)
        self.e_field = np.asarray(self.e_field, dtype=float)
        if np.any(np.diff(self.radii) <= 0):
            raise DomainError("profile radii must be strictly increasing")

    def rows(self):
        return zip(self.radii.tolist(), self.phi.tolist(), self.e_field.tolist())


def _check_radius(r, geom):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r > geom.R) or np.any(np.isnan(r)):
        raise DomainError(f"radius must lie in [0, R={geom.R}]")
    return r


def cylinder_potential(sol, geom, r):
    """phi(r) inside the inner tube; scalar or array ``r`` in [0, R]."""
    r = _check_radius(r, geom)
    x, xR = r / sol.a, geom.R / sol.a
    ratio = specfun.bessel_i0_scaled(x) / specfun.bessel_i0_scaled(xR) * np.exp(x - xR)
    out = sol.v_total * (ratio * sol.one_minus_epsilon + sol.epsilon)
    return float(out) if np.ndim(out) == 0 else out


def cylinder_field(sol, geom, r):
    """Radial field -dphi/dr; exactly zero on the axis."""
    r = _check_radius(r, geom)
    x, xR = r / sol.a, geom.R / sol.a
    ratio = specfun.bessel_i1_scaled(x) / specfun.bessel_i0_scaled(xR) * np.exp(x - xR)
    out = -sol.v_total * sol.one_minus_epsilon * ratio / sol.a + 0.0  # no -0.0 on the axis
    return float(out) if np.ndim(out) == 0 else out


def cylinder_profile(sol, geom, samples):
    """Sample potential and field on ``samples`` evenly spaced radii in [0, R]."""
    if samples < 2:
        raise DomainError("a profile needs at least 2 samples")
    radii = np.linspace(0.0, geom.R, int(samples))
    return PotentialProfile(radii, cylinder_potential(sol, geom, radii),
                            cylinder_field(sol, geom, radii))


def general_solution_value(a, A, B, C, D, r):
    """a^2 A I0(r/a) + a^2 B K0(r/a) + D ln(r/a) + C, evaluated literally (r > 0)."""
    if not r > 0:
        raise DomainError(f"general solution needs r > 0, got {r!r}")
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    x = r / a
    return a * a * A * specfun.bessel_i0(x) + a * a * B * specfun.bessel_k0(x) + D * math.log(x) + C


def point_charge_potential(a, r, charge=1.0):
    """-(e/r)(1 - exp(-r/a)) in natural units, with the finite limit -e/a at r = 0.

    With the default ``charge=1`` the returned value is the coefficient
    multiplying e.
    """
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("r must be non-negative")
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(r > 0, np.expm1(-r / a) / np.where(r > 0, r, 1.0), -1.0 / a)
    out = charge * out
    return float(out) if out.ndim == 0 else out


def point_charge_field(a, r, charge=1.0):
    """-dphi/dr of :func:`point_charge_potential`, finite at the origin."""
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("r must be non-negative")
    x = r / a
    safe = np.where(x > 1e-4, r, 1.0)
    dphi = -np.expm1(-safe / a) / safe**2 - np.exp(-safe / a) / (a * safe)
    # Taylor branch: phi' = 1/(2a^2) - r/(3a^3) + O(r^2)
    dphi = np.where(x > 1e-4, dphi, (0.5 - x / 3.0) / a**2)
    out = -charge * dphi
    return float(out) if out.ndim == 0 else out


def point_charge_profile(a, r_max, samples, charge=1.0):
    radii = np.linspace(0.0, r_max, int(samples))
    return PotentialProfile(radii, point_charge_potential(a, radii, charge),
                            point_charge_field(a, radii, charge),
                            header=("r_fm", "phi_per_fm", "E_per_fm2"))
