"""
Nested-cylinder ion interferometer: forward phase model, the asymptotic
inverse for the Podolsky length ``a``, the photon mass m = hbar / (a c), and
the (eps, dPhi) sweep.

Switching the tube voltage by dV changes the interferometer phase by

    dPhi = (e tau / hbar) dV (1 - eps) [I0((r0+s)/a) - I0(r0/a)] / I0(R/a),

where tau = L / v is the time spent on a horizontal arm segment. The ground
offset and the zero-voltage phase cancel in the difference. Replacing
I0(x) by e^x / sqrt(2 pi x) and dropping the inner-arm term inverts this to

    a = (R - r0 - s) / [ ln(1 - eps) - ln( hbar dPhi / (e tau dV) sqrt((r0+s)/R) ) ].
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .constants import CODATA2018, kg_to_ev
from .errors import DomainError, EstimatorError
from .fields import CylinderGeometry, complement


@dataclass(frozen=True)
class BeamSpec:
    label: str
    speed: float                 # m/s
    segment_length: float = 1.0  # m
    charge: float = CODATA2018.e_charge

    def __post_init__(self):
        if not (self.speed > 0 and self.segment_length > 0 and self.charge > 0):
            raise DomainError(f"beam {self.label!r}: speed, segment length and charge must be positive")

    @property
    def tau(self):
        return self.segment_length / self.speed


@dataclass(frozen=True)
class DrivePlan:
    """Voltage step, detectable phase step and measured axis ratio.

    ``ground_offset`` (Vg) and ``phase_offset`` (Phi0) are recorded for
    completeness only; they cancel in the phase difference.
    """

    delta_V: float
    delta_phi: float
    epsilon: float = None
    one_minus_epsilon: float = None
    ground_offset: float = None
    phase_offset: float = None

    def __post_init__(self):
        if not (self.delta_V > 0 and self.delta_phi > 0):
            raise DomainError("delta_V and delta_phi must be positive")
        comp = complement(self.epsilon, self.one_minus_epsilon)
        object.__setattr__(self, "one_minus_epsilon", comp)
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", 1.0 - comp)


@dataclass(frozen=True)
class Preset:
    geometry: CylinderGeometry
    beam: BeamSpec
    delta_V: float = 4e5


PRESETS = {
    "H+": Preset(CylinderGeometry(R=0.27, r0=0.244, s=6.4e-3), BeamSpec("1H+", speed=311.0)),
    "Cs+": Preset(CylinderGeometry(R=0.27, r0=0.249, s=0.56e-3), BeamSpec("133Cs+", speed=27.0)),
}


def get_preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise DomainError(f"unknown beam preset {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class PodolskyScale:
    a: float        # m
    mass_kg: float
    mass_eV: float


def _check_a(a):
    if not a > 0:
        raise DomainError(f"Podolsky length a must be positive, got {a!r}")


def _phase_prefactor(beam, delta_V, constants):
    return beam.charge * beam.tau / constants.hbar * delta_V


def phase_difference(geom, beam, a, epsilon=None, delta_V=4e5, *,
                     one_minus_epsilon=None, constants=CODATA2018):
    """Exact-Bessel phase change (rad) for a voltage step ``delta_V``."""
    _check_a(a)
    comp = complement(epsilon, one_minus_epsilon)
    if comp == 0.0 or geom.s == 0.0:
        return 0.0
    x0, x1, xR = geom.r0 / a, geom.outer_arm / a, geom.R / a
    i0e = specfun.bessel_i0_scaled
    # [I0(x1) - I0(x0)] / I0(xR) = e^{x1 - xR} [i0e(x1) - e^{-(x1 - x0)} i0e(x0)] / i0e(xR)
    bracket = (i0e(x1) - math.exp(x0 - x1) * i0e(x0)) / i0e(xR)
    return _phase_prefactor(beam, delta_V, constants) * comp * bracket * math.exp(x1 - xR)


def phase_difference_asymptotic(geom, beam, a, epsilon=None, delta_V=4e5, *,
                                one_minus_epsilon=None, constants=CODATA2018):
    """Forward model that :func:`estimate_a` inverts exactly.

    Uses I0(x) ~ e^x / sqrt(2 pi x) and neglects the inner-arm term, which is
    smaller by e^{-s/a}.
    """
    _check_a(a)
    comp = complement(epsilon, one_minus_epsilon)
    if comp == 0.0:
        return 0.0
    ratio = math.sqrt(geom.R / geom.outer_arm) * math.exp((geom.outer_arm - geom.R) / a)
    return _phase_prefactor(beam, delta_V, constants) * comp * ratio


def inversion_denominator(geom, beam, delta_V, delta_phi, epsilon=None, *,
                          one_minus_epsilon=None, constants=CODATA2018):
    """ln(1 - eps) - ln(hbar dPhi / (e tau dV) sqrt((r0+s)/R)), summed term by term."""
    comp = complement(epsilon, one_minus_epsilon)
    if not (delta_V > 0 and delta_phi > 0):
        raise DomainError("delta_V and delta_phi must be positive")
    log_comp = math.log(comp) if comp > 0 else -math.inf
    return (log_comp
            - math.log(constants.hbar / (beam.charge * beam.tau))
            - (math.log(delta_phi) - math.log(delta_V))
            - 0.5 * (math.log(geom.outer_arm) - math.log(geom.R)))


def estimate_a(geom, beam, delta_V, delta_phi, epsilon=None, *,
               one_minus_epsilon=None, constants=CODATA2018):
    """Podolsky length (m) from the measured phase step.

    Raises EstimatorError when the denominator is not positive: the asymptotic
    inversion then has no positive root.
    """
    comp = complement(epsilon, one_minus_epsilon)
    if comp == 0.0:
        raise EstimatorError("eps = 1 carries no information about a")
    denom = inversion_denominator(geom, beam, delta_V, delta_phi,
                                  one_minus_epsilon=comp, constants=constants)
    if not denom > 0:
        raise EstimatorError(
            f"non-physical regime: inversion denominator {denom:.6g} <= 0 "
            f"(1 - eps = {comp:.3g}, dPhi = {delta_phi:.3g} rad)")
    return (geom.R - geom.outer_arm) / denom


def photon_mass(a, constants=CODATA2018):
    """Mass of the massive mode, hbar / (a c), in kg and eV."""
    _check_a(a)
    kg = constants.hbar / (a * constants.c)
    return PodolskyScale(a=a, mass_kg=kg, mass_eV=kg_to_ev(kg, constants))


@dataclass
class SweepGrid:
    epsilon: np.ndarray
    delta_phi: np.ndarray

    def __post_init__(self):
        self.epsilon = np.atleast_1d(np.asarray(self.epsilon, dtype=float))
        self.delta_phi = np.atleast_1d(np.asarray(self.delta_phi, dtype=float))
        if self.epsilon.size == 0 or self.delta_phi.size == 0:
            raise DomainError("sweep grid must have at least one point on each axis")

    @classmethod
    def default(cls, n_epsilon=100, n_phi=100, eps_range=(0.001, 0.999), phi_range=(1e-4, 1e-2)):
        """Linear eps axis and logarithmic dPhi axis over the figure ranges."""
        return cls(np.linspace(*eps_range, n_epsilon),
                   np.logspace(math.log10(phi_range[0]), math.log10(phi_range[1]), n_phi))


@dataclass
class SweepTable:
    epsilon_axis: np.ndarray
    delta_phi_axis: np.ndarray
    a_values: np.ndarray      # shape (n_eps, n_phi), NaN where masked
    error_mask: np.ndarray
    messages: dict = field(default_factory=dict)

    @property
    def a_min(self):
        finite = self.a_values[~self.error_mask]
        return float(finite.min()) if finite.size else math.nan

    @property
    def a_max(self):
        finite = self.a_values[~self.error_mask]
        return float(finite.max()) if finite.size else math.nan

    def rows(self):
        for i, eps in enumerate(self.epsilon_axis.tolist()):
            for j, dphi in enumerate(self.delta_phi_axis.tolist()):
                masked = bool(self.error_mask[i, j])
                yield eps, dphi, (math.nan if masked else float(self.a_values[i, j])), \
                    ("non_physical" if masked else "ok")


def _sweep_row(geom, beam, delta_V, eps, phis, constants):
    values = np.full(len(phis), np.nan)
    mask = np.zeros(len(phis), dtype=bool)
    msgs = {}
    for j, dphi in enumerate(phis):
        try:
            values[j] = estimate_a(geom, beam, delta_V, dphi, eps, constants=constants)
        except EstimatorError as exc:
            mask[j] = True
            msgs[j] = str(exc)
    return values, mask, msgs


def sweep(geom, beam, delta_V, grid=None, workers=None, constants=CODATA2018):
    """Evaluate :func:`estimate_a` on every (eps, dPhi) cell.

    Failed cells are masked rather than raised. ``workers`` > 1 evaluates
    rows on a thread pool; the result is identical to the serial run.
    """
    grid = grid if grid is not None else SweepGrid.default()
    phis = grid.delta_phi.tolist()
    tasks = [(geom, beam, delta_V, float(eps), phis, constants) for eps in grid.epsilon]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda t: _sweep_row(*t), tasks))
    else:
        rows = [_sweep_row(*t) for t in tasks]
    a_values = np.vstack([r[0] for r in rows])
    mask = np.vstack([r[1] for r in rows])
    messages = {(i, j): m for i, r in enumerate(rows) for j, m in r[2].items()}
    return SweepTable(grid.epsilon.copy(), grid.delta_phi.copy(), a_values, mask, messages)
