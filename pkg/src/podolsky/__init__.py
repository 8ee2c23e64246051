"""Numerical probes of Podolsky generalized electrodynamics.

Two experiments are modelled: a nested-cylinder ion interferometer, which
yields an estimator for the Podolsky length ``a``, and the variational
hydrogen ground state, which yields an upper bound on ``a``.
"""
from .constants import CODATA2018, Length, PhysicalConstants, length_to_inverse_energy
from .errors import (BesselOverflowError, ConvergenceError, DivergenceError, DomainError,
                     EstimatorError, ModelError, PodolskyError)
from .fields import (CylinderGeometry, CylinderSolution, PotentialProfile, cylinder_field,
                     cylinder_potential, general_solution_value, point_charge_potential)
from .hydrogen import (BoundResult, HydrogenModel, VariationalResult, bound_a, energy,
                       energy_quadrature, minimize, stationarity_roots)
from .interferometry import (PRESETS, BeamSpec, DrivePlan, PodolskyScale, SweepGrid, SweepTable,
                             estimate_a, phase_difference, phase_difference_asymptotic,
                             photon_mass, sweep)
from .radial_oracle import OdeRun, check_modified_helmholtz, integrate_radial
from .specfun import (bessel_i0, bessel_i0_scaled, bessel_i1, bessel_i1_scaled, bessel_k0,
                      bessel_k0_scaled, bessel_k1, bessel_k1_scaled)

__version__ = "0.1.0"
