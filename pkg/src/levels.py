"""
Hydrogen-like binding energies with and without the effective-mass correction.

Uncorrected level (Sommerfeld expansion to the first fine-structure term):

    B = (alpha^2 m c^2 / 2) (Z^2/n^2) [1 + (alpha^2 Z^2/n) (1/(j+1/2) - 3/(4n))]

In the bound state the electron mass is taken as m_eff c^2 = m c^2 - 2E, so
the level appears on both sides: E = B - k E with k = alpha^2 (Z^2/n^2) [...].
The closed form is E = B / (1 + k); the first-order displacement is -B k.

Energies are positive binding energies in eV.
"""

import logging
from typing import Iterator, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from config.config import settings, LABEL_ENERGY_CONVENTION
from src.constants import Constants, default_constants
from src.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

class QuantumState(BaseModel):
    """(Z, n', j) with j stored as the odd integer 2j; n = n' + j + 1/2."""
    model_config = ConfigDict(frozen=True)

    Z: int = Field(ge=1, description="Nuclear charge number")
    n_radial: int = Field(ge=0, description="Radial quantum number n'")
    twice_j: int = Field(ge=1, description="2j, odd")

    @model_validator(mode="after")
    def _check_parity(self):
        if self.twice_j % 2 == 0:
            raise ValueError(f"twice_j must be odd and >= 1 (j is a half-odd-integer), got {self.twice_j}")
        return self

    @computed_field
    @property
    def n(self) -> int:
        return self.n_radial + (self.twice_j + 1) // 2

    @computed_field
    @property
    def j(self) -> float:
        return self.twice_j / 2.0

class LevelResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    state: QuantumState
    bracket: float = Field(description="Sommerfeld bracket, dimensionless")
    k: float = Field(description="alpha^2 (Z^2/n^2) bracket")
    E_uncorrected: float = Field(description="Binding energy with m_eff = m, eV")
    E_corrected: float = Field(description="B / (1 + k), eV")
    delta_first_order: float = Field(description="-B k, eV")
    # formed as -B k / (1 + k); E_corrected - B cancels badly for small k
    delta_exact: float = Field(description="E_corrected - E_uncorrected = -B k / (1 + k), eV")
    relative_shift: float = Field(description="|delta_exact| / B = k / (1 + k)")
    m_eff_over_m: float = Field(description="1 - 2 E_corrected / (m c^2)")
    energy_convention: str = LABEL_ENERGY_CONVENTION

def _check_charge(Z: int, constants: Constants) -> None:
    if constants.alpha * Z >= 1.0:
        raise DomainError(f"supercritical charge: alpha*Z = {constants.alpha * Z!r} >= 1 for Z={Z}")

def validate_state(Z: int, n_radial: int, twice_j: int, constants: Optional[Constants] = None) -> QuantumState:
    """Check quantum numbers and the charge; returns the state or raises DomainError."""
    constants = constants or default_constants()
    if twice_j < 1 or twice_j % 2 == 0:
        raise DomainError(f"twice_j must be odd and >= 1 (j is a half-odd-integer), got {twice_j}")
    if n_radial < 0:
        raise DomainError(f"n_radial must be >= 0, got {n_radial}")
    if Z < 1:
        raise DomainError(f"Z must be >= 1, got {Z}")
    _check_charge(Z, constants)
    if Z > settings.HEAVY_ION_WARNING_Z:
        logger.warning(f"Z={Z} is above {settings.HEAVY_ION_WARNING_Z}; the truncated expansion is poorly controlled here")
    return QuantumState(Z=Z, n_radial=n_radial, twice_j=twice_j)

def bracket(state: QuantumState, constants: Constants, fine_structure: bool = True) -> float:
    """1 + (alpha^2 Z^2/n)(1/(j+1/2) - 3/(4n)); exactly 1 when fine_structure is False."""
    if not fine_structure:
        return 1.0
    n = state.n
    za = constants.alpha * state.Z
    za2 = za * za
    # 1/(j + 1/2) == 2/(2j + 1)
    return 1.0 + (za2 / n) * (2.0 / (state.twice_j + 1) - 3.0 / (4.0 * n))

def coupling(state: QuantumState, constants: Constants, fine_structure: bool = True) -> float:
    """k = alpha^2 (Z^2/n^2) bracket."""
    n = state.n
    return constants.alpha * constants.alpha * (state.Z * state.Z) / (n * n) * bracket(state, constants, fine_structure)

def level_uncorrected(state: QuantumState, constants: Constants, fine_structure: bool = True) -> float:
    """B in eV, the level with m_eff = m. Raises DomainError for alpha Z >= 1."""
    _check_charge(state.Z, constants)
    n = state.n
    return (constants.alpha * constants.alpha * constants.electron_rest_energy / 2.0) * (state.Z * state.Z) / (n * n) \
        * bracket(state, constants, fine_structure)

def self_consistency_residual(state: QuantumState, energy: float, constants: Constants,
                              fine_structure: bool = True) -> float:
    """
    Relative residual of E = (alpha^2 (m c^2 - 2E)/2)(Z^2/n^2) bracket, scaled by B.

    Returns 0.0 when B is zero (alpha = 0).
    """
    n = state.n
    mc2 = constants.electron_rest_energy
    b = level_uncorrected(state, constants, fine_structure)
    if b == 0.0:
        return abs(energy)
    rhs = (constants.alpha * constants.alpha * (mc2 - 2.0 * energy) / 2.0) * (state.Z * state.Z) / (n * n) \
        * bracket(state, constants, fine_structure)
    return abs(energy - rhs) / b

def level_corrected(state: QuantumState, constants: Constants, fine_structure: bool = True) -> LevelResult:
    br = bracket(state, constants, fine_structure)
    k = coupling(state, constants, fine_structure)
    b = level_uncorrected(state, constants, fine_structure)
    corrected = b / (1.0 + k)
    return LevelResult(
        state=state,
        bracket=br,
        k=k,
        E_uncorrected=b,
        E_corrected=corrected,
        delta_first_order=-b * k,
        delta_exact=-b * k / (1.0 + k),
        relative_shift=k / (1.0 + k),
        m_eff_over_m=1.0 - 2.0 * corrected / constants.electron_rest_energy,
    )

def iterate_level(state: QuantumState, constants: Constants, fine_structure: bool = True,
                  relaxation: Optional[float] = None) -> Iterator[float]:
    """
    Successive iterates of E <- (1 - w) E + w (B - k E), starting from E = B.

    w defaults to 1 for k < 1 (plain substitution, errors alternate in sign)
    and to 1/(1 + k) otherwise, which lands on the solution in one step.
    """
    b = level_uncorrected(state, constants, fine_structure)
    k = coupling(state, constants, fine_structure)
    if relaxation is None:
        relaxation = 1.0 if k < 1.0 else 1.0 / (1.0 + k)
    energy = b
    while True:
        yield energy
        energy = (1.0 - relaxation) * energy + relaxation * (b - k * energy)

def fixed_point_solve(state: QuantumState, constants: Constants,
                      tol: Optional[float] = None, max_iter: Optional[int] = None,
                      fine_structure: bool = True) -> float:
    """
    Solve the self-consistent level equation by iteration.

    Independent of the closed form in level_corrected; used to cross-check it.
    """
    tol = settings.FIXED_POINT_TOL if tol is None else tol
    max_iter = settings.FIXED_POINT_MAX_ITER if max_iter is None else max_iter
    k = coupling(state, constants, fine_structure)

    residual = float("inf")
    for iteration, energy in enumerate(iterate_level(state, constants, fine_structure), start=1):
        residual = self_consistency_residual(state, energy, constants, fine_structure)
        if residual < tol:
            logger.debug(f"Fixed point for {state} converged in {iteration} iteration(s), k={k}")
            return energy
        if iteration >= max_iter:
            break
    raise ConvergenceError(k=k, iterations=max_iter, residual=residual)
