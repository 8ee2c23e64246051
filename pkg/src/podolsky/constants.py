"""
Physical constants and the few unit conversions the package needs.

Values are CODATA-2018. The interferometry sector works in SI; the hydrogen
sector works in natural units (hbar = c = 1, e^2 = alpha, energies in MeV,
lengths in MeV^-1) and converts at its API boundary through ``hbar_c``.
"""
from dataclasses import asdict, dataclass

from .errors import DomainError

CONSTANTS_VERSION = "CODATA-2018"


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float          # J s
    c: float             # m / s
    e_charge: float      # C
    hbar_c: float        # MeV fm
    m_electron: float    # MeV
    alpha: float         # dimensionless
    bohr_radius: float   # m
    electron_volt: float  # J

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise DomainError(f"constant {name} must be positive, got {value!r}")

    @property
    def bohr_radius_fm(self):
        return self.bohr_radius * 1e15

    def to_dict(self):
        return {"version": CONSTANTS_VERSION, **asdict(self)}


CODATA2018 = PhysicalConstants(
    hbar=1.054571817e-34,        # exact since the 2019 SI redefinition
    c=299792458.0,               # exact
    e_charge=1.602176634e-19,    # exact
    hbar_c=197.3269804,          # MeV fm
    m_electron=0.51099895000,    # MeV
    alpha=7.2973525693e-3,
    bohr_radius=5.29177210903e-11,  # m
    electron_volt=1.602176634e-19,  # J, exact
)

# metres per unit
_UNIT_SCALE = {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "fm": 1e-15}
# powers of ten between units, kept as integers so conversions are one rounding
_UNIT_EXP = {"m": 0, "cm": -2, "mm": -3, "fm": -15}


def _rescale(value, exponent):
    # multiplying by 10**-k is not exact for k > 0; dividing by 10**k is
    # correctly rounded, so conversions round once and roundtrip within 1 ulp
    if exponent >= 0:
        return value * 10.0**exponent
    return value / 10.0**(-exponent)


@dataclass(frozen=True)
class Length:
    value: float
    unit: str = "m"

    def __post_init__(self):
        if self.unit not in _UNIT_SCALE:
            raise DomainError(f"unknown length unit {self.unit!r}; expected one of {sorted(_UNIT_SCALE)}")

    def to(self, unit):
        if unit not in _UNIT_EXP:
            raise DomainError(f"unknown length unit {unit!r}")
        return Length(_rescale(self.value, _UNIT_EXP[self.unit] - _UNIT_EXP[unit]), unit)

    @property
    def meters(self):
        return self.to("m").value

    @property
    def fm(self):
        return self.to("fm").value

    @classmethod
    def parse(cls, text, default_unit="m"):
        """Parse ``"0.033cm"``, ``"5.56 fm"`` or a bare number in ``default_unit``."""
        text = str(text).strip()
        for unit in sorted(_UNIT_SCALE, key=len, reverse=True):
            if text.endswith(unit):
                number = text[: -len(unit)].strip()
                break
        else:
            number, unit = text, default_unit
        try:
            return cls(float(number), unit)
        except ValueError:
            raise DomainError(f"cannot parse length {text!r}") from None

    def __str__(self):
        return f"{self.value:g} {self.unit}"


def length_to_inverse_energy(length, constants=CODATA2018):
    """Length -> MeV^-1 through hbar*c."""
    fm = length.fm
    if not fm > 0:
        raise DomainError(f"length must be positive, got {length}")
    return fm / constants.hbar_c


def inverse_energy_to_length(inv_mev, constants=CODATA2018):
    """MeV^-1 -> Length in fm; inverse of :func:`length_to_inverse_energy`."""
    if not inv_mev > 0:
        raise DomainError(f"inverse energy must be positive, got {inv_mev!r}")
    return Length(inv_mev * constants.hbar_c, "fm")


def kg_to_ev(mass_kg, constants=CODATA2018):
    return mass_kg * constants.c**2 / constants.e_charge
