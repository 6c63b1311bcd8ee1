"""
Energy balance between two points of the same Coulomb field.

Residuals are returned in eV rather than as pass/fail flags; callers pick the
tolerance. The rest energy m c^2 is cancelled before summing so residuals
stay on the kinetic/potential scale.
"""

import logging
import math

from pydantic import BaseModel, ConfigDict, Field

from src.constants import Constants
from src.errors import DomainError
from src.field import FieldPoint, coulomb_potential_energy, field_shift

logger = logging.getLogger(__name__)

class BalancePair(BaseModel):
    model_config = ConfigDict(frozen=True)

    Z: float = Field(ge=0.0, description="Nuclear charge number")
    r1: float = Field(gt=0.0, description="First radius, nm")
    v1: float = Field(ge=0.0, lt=1.0, description="Speed at r1, fraction of c")
    r2: float = Field(gt=0.0, description="Second radius, nm")
    v2: float = Field(ge=0.0, lt=1.0, description="Speed at r2, fraction of c")

    def point1(self) -> FieldPoint:
        return FieldPoint(Z=self.Z, r=self.r1, v=self.v1)

    def point2(self) -> FieldPoint:
        return FieldPoint(Z=self.Z, r=self.r2, v=self.v2)

def swap(pair: BalancePair) -> BalancePair:
    """The same pair with points 1 and 2 exchanged."""
    return BalancePair(Z=pair.Z, r1=pair.r2, v1=pair.v2, r2=pair.r1, v2=pair.v1)

def classical_residual(pair: BalancePair, constants: Constants) -> float:
    """m (v1^2 - v2^2)/2 - Z e^2 (1/r1 - 1/r2), in eV. Zero when the pair conserves energy."""
    kinetic = constants.electron_rest_energy * (pair.v1 * pair.v1 - pair.v2 * pair.v2) / 2.0
    potential = pair.Z * constants.coulomb_strength * (1.0 / pair.r1 - 1.0 / pair.r2)
    return kinetic - potential

def solve_v2(Z: float, r1: float, v1: float, r2: float, constants: Constants) -> float:
    """Speed at r2 (fraction of c) that balances the classical energy equation."""
    if not (r1 > 0 and r2 > 0):
        raise DomainError("radius must be positive")
    v2_squared = v1 * v1 - 2.0 * Z * constants.coulomb_strength * (1.0 / r1 - 1.0 / r2) / constants.electron_rest_energy
    if v2_squared < 0.0:
        raise DomainError(
            f"classically forbidden configuration (v2^2 = {v2_squared!r} < 0 for Z={Z}, r1={r1}, v1={v1}, r2={r2})"
        )
    v2 = math.sqrt(v2_squared)
    if v2 >= 1.0:
        logger.warning(f"Solved v2={v2} is not below c; the nonrelativistic balance does not hold there")
    return v2

def strict_residual(pair: BalancePair, constants: Constants) -> float:
    """
    [m' c^2 + m' v1'^2/2] - [m'' c^2 + m'' v2'^2/2] in eV, effective masses from field_shift.

    m' c^2 - m'' c^2 is formed as m c^2 (x1 - x2) so the rest energy cancels exactly.
    """
    mc2 = constants.electron_rest_energy
    shift1 = field_shift(pair.point1(), constants)
    shift2 = field_shift(pair.point2(), constants)
    rest_difference = mc2 * shift1.x - mc2 * shift2.x
    kinetic1 = mc2 * shift1.m_prime_over_m * shift1.v_prime * shift1.v_prime / 2.0
    kinetic2 = mc2 * shift2.m_prime_over_m * shift2.v_prime * shift2.v_prime / 2.0
    return rest_difference + (kinetic1 - kinetic2)

def total_energy_residual(pair: BalancePair, constants: Constants) -> float:
    """E(point 1) - E(point 2) with E = m c^2 + m v^2/2 + e*phi, summed as written."""
    mc2 = constants.electron_rest_energy
    energy1 = mc2 + mc2 * pair.v1 * pair.v1 / 2.0 + coulomb_potential_energy(pair.Z, pair.r1, constants)
    energy2 = mc2 + mc2 * pair.v2 * pair.v2 / 2.0 + coulomb_potential_energy(pair.Z, pair.r2, constants)
    return energy1 - energy2
