"""
Numerical cross-checks of the closed-form cylinder solution.

``integrate_radial`` shoots phi'' + phi'/r = A I0(r/a) outward from the axis
with RK4, A fixed analytically; ``check_modified_helmholtz`` applies
(1 - a^2 lap) to a candidate U by finite differences. The source term uses
scipy's Bessel routines so the oracle does not share code with the closed form.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import specfun
from .errors import ConvergenceError, DomainError
from .fields import CylinderSolution, complement, cylinder_potential

MIN_STEPS = 1000


@dataclass
class OdeRun:
    a: float
    grid: np.ndarray
    phi_numeric: np.ndarray
    phi_closed: np.ndarray
    max_rel_err_vs_closed_form: float

    @property
    def rel_err(self):
        return np.abs(self.phi_numeric - self.phi_closed) / np.abs(self.phi_closed)

    def rows(self):
        return zip(self.grid.tolist(), self.phi_numeric.tolist(),
                   self.phi_closed.tolist(), self.rel_err.tolist())


def _origin_series(A, a, phi0, r, terms=12):
    """phi and phi' of the regular solution near r = 0.

    With I0(r/a) = sum b_k r^{2k}, b_k = 1/((2a)^{2k} (k!)^2), and
    lap r^{2k+2} = (2k+2)^2 r^{2k}:
        phi = phi0 + A sum b_k r^{2k+2} / (2k+2)^2.
    """
    phi, dphi = phi0, 0.0
    b = 1.0
    for k in range(terms):
        if k:
            b /= (2.0 * a) ** 2 * k * k
        n = 2 * k + 2
        phi += A * b * r**n / n**2
        dphi += A * b * r ** (n - 1) / n
    return phi, dphi


def integrate_radial(a, geom, epsilon=None, v_total=1.0, steps=100_000, *,
                     one_minus_epsilon=None, tol=1e-6):
    """Integrate the radial equation on a uniform grid of ``steps`` intervals.

    Starts from the axis value a^2 A + eps V_total with one power-series step over [0, h],
    then classical RK4 to r = R. Raises ConvergenceError when the maximum
    relative deviation from the closed form exceeds ``tol`` (``tol=None``
    disables the check).
    """
    if steps < MIN_STEPS:
        raise DomainError(f"steps must be >= {MIN_STEPS}, got {steps}")
    comp = complement(epsilon, one_minus_epsilon)
    sol = CylinderSolution(a, v_total, one_minus_epsilon=comp)
    xR = geom.R / a
    # A = V (1 - eps) / (a^2 I0(R/a)); the source A I0(r/a) is carried as
    # V (1 - eps) / a^2 * i0e(x) / i0e(xR) * exp(x - xR) to stay finite.
    amp = v_total * comp / a**2

    def source(r):
        x = np.asarray(r) / a
        return amp * special.i0e(x) / special.i0e(xR) * np.exp(x - xR)

    h = geom.R / steps
    grid = np.linspace(0.0, geom.R, steps + 1)
    s_grid = source(grid)
    s_mid = source(grid[:-1] + 0.5 * h)

    phi = np.empty(steps + 1)
    A_origin = amp * math.exp(-xR) / special.i0e(xR)
    # axis value of a^2 A I0(r/a) + C with C = eps V; equals eps V only once
    # I0(R/a) >> 1
    phi[0] = (1.0 - comp) * v_total + a * a * A_origin
    p, dp = _origin_series(A_origin, a, phi[0], h)
    phi[1] = p
    for i in range(1, steps):
        r = grid[i]
        rm = r + 0.5 * h
        rn = grid[i + 1]
        k1p = dp
        k1d = s_grid[i] - dp / r
        k2p = dp + 0.5 * h * k1d
        k2d = s_mid[i] - k2p / rm
        k3p = dp + 0.5 * h * k2d
        k3d = s_mid[i] - k3p / rm
        k4p = dp + h * k3d
        k4d = s_grid[i + 1] - k4p / rn
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        dp += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        phi[i + 1] = p

    closed = cylinder_potential(sol, geom, grid)
    err = float(np.max(np.abs(phi - closed) / np.abs(closed)))
    if tol is not None and not err <= tol:
        raise ConvergenceError(
            f"radial integration with {steps} steps reached {err:.3e} > {tol:.1e}", achieved=err)
    return OdeRun(a, grid, phi, closed, err)


def check_modified_helmholtz(a, r_samples, u=None):
    """Max of |U - a^2 lap U| / |U| over ``r_samples`` by 5-point differences.

    ``u`` is a callable of r; the default is U = I0(r/a). Any solution of
    (1 - a^2 lap) U = 0 gives a residual at the finite-difference noise level,
    a constant gives exactly 1.
    """
    if not a > 0:
        raise DomainError(f"a must be positive, got {a!r}")
    if u is None:
        def u(r):
            return specfun.bessel_i0(r / a)
    r = np.atleast_1d(np.asarray(r_samples, dtype=float))
    if np.any(r <= 0):
        raise DomainError("samples must lie at r > 0")
    worst = 0.0
    for ri in r:
        h = min(5e-3 * a, ri / 4.0)
        f = [float(u(ri + k * h)) for k in (-2, -1, 0, 1, 2)]
        d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h)
        d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h)
        lap = d2 + d1 / ri
        worst = max(worst, abs(f[2] - a * a * lap) / abs(f[2]))
    return worst
