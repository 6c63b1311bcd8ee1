"""
Effective mass and velocity of a charged particle at a point of a Coulomb field.

A particle of rest energy m c^2 at distance r from a charge Z e has potential
energy e*phi = -Z e^2 / r. Folding e*phi into the rest term gives the
effective mass m' = m (1 + x) with x = e*phi / (m c^2), and keeping the
kinetic energy fixed gives the transformed speed v' = v / sqrt(1 + x).
"""

import logging
import math

from pydantic import BaseModel, ConfigDict, Field

from config.config import settings
from src.constants import Constants
from src.errors import DomainError

logger = logging.getLogger(__name__)

class FieldPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    Z: float = Field(ge=0.0, description="Nuclear charge number")
    r: float = Field(gt=0.0, description="Distance from the charge, nm")
    v: float = Field(ge=0.0, lt=1.0, description="Speed as a fraction of c")

class FieldShift(BaseModel):
    """Effective-mass quantities at one field point. Speeds are fractions of c."""
    model_config = ConfigDict(frozen=True)

    potential_energy: float = Field(description="e*phi in eV, negative for attraction")
    x: float = Field(description="e*phi / (m c^2)")
    m_prime_over_m: float = Field(description="1 + x")
    v_prime: float = Field(description="v / sqrt(1 + x)")
    delta_m_energy: float = Field(description="m c^2 - m' c^2 = -e*phi, eV")
    delta_v_squared: float = Field(description="v^2 x (first order)")
    delta_v_squared_exact: float = Field(description="v^2 - v'^2")
    relative_delta_v_squared: float = Field(description="delta(v^2) / v^2 = x")
    delta_v: float = Field(description="v x / 2 (first order)")
    delta_v_exact: float = Field(description="v - v'")
    high_speed_warning: bool = Field(description="v exceeds the nonrelativistic limit")

class EnergySplit(BaseModel):
    """The same total energy written with the rest mass and with the effective mass."""
    model_config = ConfigDict(frozen=True)

    rest: float
    kinetic: float
    potential: float
    total: float
    rest_prime: float
    kinetic_prime: float
    total_prime: float

def coulomb_potential_energy(Z: float, r: float, constants: Constants) -> float:
    """e*phi in eV for an electron at r nm from charge Z e."""
    if not r > 0:
        raise DomainError("radius must be positive")
    return -Z * constants.coulomb_strength / r

def positive_mass_radius(Z: float, constants: Constants) -> float:
    """Radius (nm) at which |e*phi| reaches m c^2; the effective mass vanishes there."""
    return Z * constants.coulomb_strength / constants.electron_rest_energy

def _potential_and_coupling(point: FieldPoint, constants: Constants):
    potential = coulomb_potential_energy(point.Z, point.r, constants)
    x = potential / constants.electron_rest_energy
    if 1.0 + x <= 0.0:
        raise DomainError(
            f"effective mass nonpositive at this radius (r={point.r} nm <= "
            f"{positive_mass_radius(point.Z, constants)!r} nm for Z={point.Z})"
        )
    return potential, x

def coupling(point: FieldPoint, constants: Constants) -> float:
    """x = e*phi / (m c^2), checked against the positive-mass boundary."""
    return _potential_and_coupling(point, constants)[1]

def field_shift(point: FieldPoint, constants: Constants) -> FieldShift:
    potential, x = _potential_and_coupling(point, constants)
    v = point.v
    v_prime = v / math.sqrt(1.0 + x)

    high_speed = v > settings.NONRELATIVISTIC_SPEED_LIMIT
    if high_speed:
        logger.warning(f"v={v} exceeds {settings.NONRELATIVISTIC_SPEED_LIMIT}; the low-velocity premise is weak here")

    return FieldShift(
        potential_energy=potential,
        x=x,
        m_prime_over_m=1.0 + x,
        v_prime=v_prime,
        delta_m_energy=-potential,
        delta_v_squared=v * v * x,
        delta_v_squared_exact=v * v - v_prime * v_prime,
        relative_delta_v_squared=x,
        delta_v=v * x / 2.0,
        delta_v_exact=v - v_prime,
        high_speed_warning=high_speed,
    )

def mass_defect(point: FieldPoint, constants: Constants) -> float:
    """Delta m c^2 in eV: energy released into motion when the particle sits at r."""
    return field_shift(point, constants).delta_m_energy

def energy_split(point: FieldPoint, constants: Constants) -> EnergySplit:
    """
    Total energy as m c^2 + m v^2/2 + e*phi and as m' c^2 + m' v'^2/2.

    Both sums are formed from their own terms; they agree because
    m' v'^2 = m v^2 and m' c^2 = m c^2 + e*phi.
    """
    shift = field_shift(point, constants)
    mc2 = constants.electron_rest_energy
    kinetic = mc2 * point.v * point.v / 2.0
    rest_prime = mc2 * shift.m_prime_over_m
    kinetic_prime = rest_prime * shift.v_prime * shift.v_prime / 2.0
    return EnergySplit(
        rest=mc2,
        kinetic=kinetic,
        potential=shift.potential_energy,
        total=mc2 + kinetic + shift.potential_energy,
        rest_prime=rest_prime,
        kinetic_prime=kinetic_prime,
        total_prime=rest_prime + kinetic_prime,
    )
