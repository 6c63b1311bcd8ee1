"""
Transition lines between two levels of the same ion, with two shift variants.

- level difference: shift = delta(lower) - delta(upper), using exact level
  displacements. Telescopes across intermediate levels; the reference value.
- eq15 literal: the first-order displacement -B k with each explicit Z^2/n^2
  factor replaced by Z^2 (1/n^2 - 1/m^2), bracket taken at the lower state.

Line energies are positive for emission (upper -> lower).
"""

import logging
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from config.config import LABEL_EQ15_VARIANT
from src.constants import Constants
from src.errors import DomainError
from src.levels import QuantumState, bracket, level_corrected, validate_state

logger = logging.getLogger(__name__)

class Transition(BaseModel):
    model_config = ConfigDict(frozen=True)

    upper: QuantumState
    lower: QuantumState
    E_line_uncorrected: float = Field(description="B(lower) - B(upper), eV")
    E_line_corrected: float = Field(description="E_corrected(lower) - E_corrected(upper), eV")
    shift_level_difference: float = Field(description="delta_exact(lower) - delta_exact(upper), eV")
    shift_first_order: float = Field(description="delta_first_order(lower) - delta_first_order(upper), eV")
    shift_eq15_literal: float = Field(description="first-order displacement with 1/n^2 -> 1/n^2 - 1/m^2, eV")
    wavelength_uncorrected: Optional[float] = Field(description="hc / E_line_uncorrected, nm (vacuum); None if E_line <= 0")
    wavelength_corrected: Optional[float] = Field(description="hc / E_line_corrected, nm (vacuum); None if E_line <= 0")
    wavelength_shift_nm: Optional[float] = Field(description="wavelength_corrected - wavelength_uncorrected, nm")
    eq15_variant: str = LABEL_EQ15_VARIANT

def wavelength_nm(energy: float, constants: Constants) -> Optional[float]:
    """Vacuum wavelength hc / E in nm; None for non-positive energies."""
    if energy <= 0.0:
        return None
    return constants.hc / energy

def eq15_literal_shift(lower: QuantumState, upper_n: int, constants: Constants,
                       fine_structure: bool = True) -> float:
    """
    -(alpha^2 m c^2/2) Z^2 f [bracket] * alpha^2 Z^2 f [bracket], f = 1/n^2 - 1/m^2.

    n is lower.n, m is upper_n; vanishes identically when n == m.
    """
    n = lower.n
    f = 1.0 / (n * n) - 1.0 / (upper_n * upper_n)
    br = bracket(lower, constants, fine_structure)
    a2 = constants.alpha * constants.alpha
    z2 = lower.Z * lower.Z
    prefactor = (a2 * constants.electron_rest_energy / 2.0) * z2 * f * br
    return -prefactor * (a2 * z2 * f * br)

def line_energies(upper: QuantumState, lower: QuantumState, constants: Constants,
                  fine_structure: bool = True) -> Tuple[float, float]:
    """(uncorrected, corrected) line energies in eV; no ordering requirement."""
    up = level_corrected(upper, constants, fine_structure)
    low = level_corrected(lower, constants, fine_structure)
    return low.E_uncorrected - up.E_uncorrected, low.E_corrected - up.E_corrected

def transition(upper: QuantumState, lower: QuantumState, constants: Constants,
               fine_structure: bool = True) -> Transition:
    if upper.Z != lower.Z:
        raise DomainError(f"mismatched Z: upper Z={upper.Z}, lower Z={lower.Z}")
    if lower.n >= upper.n:
        raise DomainError(f"lower.n must be below upper.n (lower n={lower.n}, upper n={upper.n})")

    up = level_corrected(upper, constants, fine_structure)
    low = level_corrected(lower, constants, fine_structure)
    line_uncorrected = low.E_uncorrected - up.E_uncorrected
    line_corrected = low.E_corrected - up.E_corrected
    wl_uncorrected = wavelength_nm(line_uncorrected, constants)
    wl_corrected = wavelength_nm(line_corrected, constants)
    wl_shift = None
    if wl_uncorrected is not None and wl_corrected is not None:
        wl_shift = wl_corrected - wl_uncorrected

    return Transition(
        upper=upper,
        lower=lower,
        E_line_uncorrected=line_uncorrected,
        E_line_corrected=line_corrected,
        shift_level_difference=low.delta_exact - up.delta_exact,
        shift_first_order=low.delta_first_order - up.delta_first_order,
        shift_eq15_literal=eq15_literal_shift(lower, upper.n, constants, fine_structure),
        wavelength_uncorrected=wl_uncorrected,
        wavelength_corrected=wl_corrected,
        wavelength_shift_nm=wl_shift,
    )

def series(Z: int, lower: QuantumState, upper_n_max: int, constants: Constants,
           fine_structure: bool = True) -> List[Transition]:
    """Lines into `lower` from every upper n in (lower.n, upper_n_max] with j = 1/2, by energy."""
    if lower.Z != Z:
        raise DomainError(f"mismatched Z: series Z={Z}, lower Z={lower.Z}")
    if upper_n_max <= lower.n:
        raise DomainError(f"upper_n_max must exceed lower.n (got {upper_n_max} <= {lower.n})")

    lines = []
    for upper_n in range(lower.n + 1, upper_n_max + 1):
        # j = 1/2 means n' = n - 1
        upper = validate_state(Z, upper_n - 1, 1, constants)
        lines.append(transition(upper, lower, constants, fine_structure))
    lines.sort(key=lambda line: line.E_line_uncorrected)
    logger.debug(f"Series into n={lower.n} for Z={Z}: {len(lines)} line(s)")
    return lines
