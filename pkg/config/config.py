from typing import Optional, Literal
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field

class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file='.env', env_file_encoding='utf-8', extra='ignore')

    # Physical constants (CODATA 2018)
    ALPHA: float = Field(default=7.2973525693e-3, description="Fine-structure constant")
    ELECTRON_REST_ENERGY_EV: float = Field(default=510998.95, description="Electron rest energy m c^2 in eV")
    HC_EV_NM: float = Field(default=1239.841984, description="h c in eV*nm, used for wavelengths and Coulomb energies")

    # Logging Configuration
    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    LOG_FILE_PATH: Optional[str] = None
    LOG_FILE_MAX_BYTES: int = 1024 * 1024 * 5  # 5MB
    LOG_FILE_BACKUP_COUNT: int = 3

    # Output
    DEFAULT_OUTPUT_FORMAT: Literal["json", "text"] = "text"

    # Fixed-point oracle for the self-consistent level equation
    FIXED_POINT_TOL: float = Field(default=1e-13, description="Relative residual at which iteration stops")
    FIXED_POINT_MAX_ITER: int = Field(default=200, description="Iteration cap before ConvergenceError")

    # Soft limits (warnings, not errors)
    NONRELATIVISTIC_SPEED_LIMIT: float = Field(default=0.1, description="Speeds above this fraction of c are flagged")
    HEAVY_ION_WARNING_Z: int = Field(default=92, description="States with Z above this are logged as outside the tested range")

    # Sweep self-checks
    SWEEP_SPOT_CHECK_FRACTION: float = Field(default=0.05, description="Fraction of sweep rows re-validated per run")
    SWEEP_SPOT_CHECK_SEED: int = 0

settings = Settings()

# --- CLI messages (Module-level constants) ---
MSG_DOMAIN_ERROR = "error: {error}"
MSG_CONVERGENCE_ERROR = "error: fixed-point iteration failed: {error}"
MSG_INVALID_SWEEP = "error: invalid sweep spec: {error}"
MSG_IO_ERROR = "error: cannot write to {destination}: {error}"
MSG_CONFIG_ERROR = "error: cannot read config file {path}: {error}"
MSG_SWEEP_WRITTEN = "Wrote {rows} rows ({mode}, {format}) to {destination}"
MSG_SWEEP_SKIPPED = "Skipped {count} state(s); see notices above"

# Labels written into JSON/text outputs
LABEL_ENERGY_CONVENTION = "E is a positive binding energy; the spectroscopic level energy is -E"
LABEL_EQ15_VARIANT = (
    "eq15 literal: both Z^2/n^2 prefactors of the level displacement use (1/n^2 - 1/m^2); "
    "the bracket keeps the lower state's n and j"
)

if __name__ == "__main__":
    print("Current Configuration Loaded via Pydantic:")
    print(settings.model_dump_json(indent=2))
