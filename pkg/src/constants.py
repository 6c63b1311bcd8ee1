"""
Physical constants shared by every formula.

All energies are in eV, lengths in nm and speeds in fractions of c. A
`Constants` bundle is passed explicitly to each operation; nothing reads
module-level state at evaluation time.
"""

import json
import logging
import math
from pathlib import Path
from typing import Dict, Optional, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field

from config.config import Settings, settings as default_settings
from src.errors import DomainError

logger = logging.getLogger(__name__)

CODATA_ALPHA = 7.2973525693e-3
CODATA_ELECTRON_REST_ENERGY_EV = 510998.95
CODATA_HC_EV_NM = 1239.841984

CONFIG_KEYS = ("alpha", "electron_rest_energy_ev", "hc_ev_nm")

class Constants(BaseModel):
    """Immutable constant bundle. Serialized keys carry their units."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    # alpha = 0 is allowed: it switches every correction term off
    alpha: float = Field(ge=0.0, lt=1.0, description="Fine-structure constant, dimensionless")
    electron_rest_energy: float = Field(gt=0.0, alias="electron_rest_energy_ev", description="m c^2 in eV")
    hc: float = Field(gt=0.0, alias="hc_ev_nm", description="h c in eV*nm")

    @property
    def hbar_c(self) -> float:
        """hbar c in eV*nm."""
        return self.hc / (2.0 * math.pi)

    @property
    def coulomb_strength(self) -> float:
        """e^2 (Gaussian) = alpha * hbar c in eV*nm; e*phi = -Z * coulomb_strength / r."""
        return self.alpha * self.hbar_c

def default_constants() -> Constants:
    """CODATA 2018 values, independent of environment and config files."""
    return Constants(
        alpha=CODATA_ALPHA,
        electron_rest_energy=CODATA_ELECTRON_REST_ENERGY_EV,
        hc=CODATA_HC_EV_NM,
    )

def constants_from_settings(s: Optional[Settings] = None) -> Constants:
    """Build the bundle from Settings (environment / .env overrides)."""
    s = s or default_settings
    return Constants(alpha=s.ALPHA, electron_rest_energy=s.ELECTRON_REST_ENERGY_EV, hc=s.HC_EV_NM)

def read_config_file(path: Union[str, Path]) -> Dict[str, float]:
    """
    Read constant overrides from a JSON object or a key=value file.

    Only the keys alpha, electron_rest_energy_ev and hc_ev_nm are accepted.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        raw = json.loads(text)
        if not isinstance(raw, dict):
            raise DomainError(f"config file {path} must contain a JSON object")
    else:
        raw = dotenv_values(path)

    overrides: Dict[str, float] = {}
    for key, value in raw.items():
        if key not in CONFIG_KEYS:
            raise DomainError(f"unknown config key '{key}' in {path} (expected one of {', '.join(CONFIG_KEYS)})")
        if value is None or value == "":
            continue
        try:
            overrides[key] = float(value)
        except (TypeError, ValueError):
            raise DomainError(f"config key '{key}' in {path} is not a number: {value!r}")
    logger.debug(f"Read {len(overrides)} constant override(s) from {path}")
    return overrides

def resolve_constants(
    config_path: Optional[Union[str, Path]] = None,
    alpha: Optional[float] = None,
    electron_rest_energy_ev: Optional[float] = None,
    hc_ev_nm: Optional[float] = None,
    base: Optional[Constants] = None,
) -> Constants:
    """
    Layer overrides: base (Settings by default) <- config file <- explicit values.

    The merged bundle is validated by the Constants field constraints.
    """
    base = base or constants_from_settings()
    merged = base.model_dump(by_alias=True)
    if config_path is not None:
        merged.update(read_config_file(config_path))
    explicit = {"alpha": alpha, "electron_rest_energy_ev": electron_rest_energy_ev, "hc_ev_nm": hc_ev_nm}
    merged.update({key: value for key, value in explicit.items() if value is not None})
    constants = Constants.model_validate(merged)
    if constants != base:
        logger.info(f"Using constants {constants.model_dump(by_alias=True)}")
    return constants

def dumps_constants(constants: Constants) -> str:
    """Serialize with the external key names; floats use shortest round-trip repr."""
    return json.dumps(constants.model_dump(by_alias=True), sort_keys=True)

def loads_constants(text: str) -> Constants:
    return Constants.model_validate(json.loads(text))
