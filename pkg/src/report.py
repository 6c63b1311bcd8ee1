"""
Shift tables over (Z, n, j) grids and their CSV / JSON emission.

Output is byte-deterministic: rows are ordered by key, floats are written in
shortest round-trip form (repr), CSV lines end in "\\n" and JSON is indented
with a trailing newline. parse_table reads either format back exactly.
"""

import csv
import io
import json
import logging
import random
import sys
from pathlib import Path
from typing import IO, ClassVar, Iterator, List, Literal, Optional, Tuple, Type, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config.config import settings
from src.constants import Constants
from src.errors import DomainError, SweepSpecError
from src.levels import QuantumState, level_corrected, validate_state
from src.transitions import transition

logger = logging.getLogger(__name__)

MAX_Z = 137

OutputFormat = Literal["csv", "json"]
SweepMode = Literal["levels", "transitions"]
Destination = Union[str, Path, IO, None]

class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    z_min: int
    z_max: int
    n_max: int
    include_all_j: bool = False
    mode: SweepMode = "levels"
    output_format: OutputFormat = "csv"

    @model_validator(mode="after")
    def _check_grid(self):
        if not 1 <= self.z_min <= self.z_max <= MAX_Z:
            raise ValueError(f"z range must satisfy 1 <= z_min <= z_max <= {MAX_Z}, got {self.z_min}..{self.z_max}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if self.mode == "transitions" and self.n_max < 2:
            raise ValueError("transitions mode needs n_max >= 2")
        return self

def parse_z_range(text: str) -> Tuple[int, int]:
    """'1..92' -> (1, 92); a single integer means a one-element range."""
    text = text.strip()
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return int(low), int(high)
        value = int(text)
        return value, value
    except ValueError:
        raise SweepSpecError(f"z range must look like '1..92' or '26', got {text!r}")

class ShiftRow(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)
    HEADER: ClassVar[Tuple[str, ...]] = (
        "Z", "n", "twice_j", "E_uncorr_eV", "E_corr_eV", "dE_first_eV", "dE_exact_eV", "k", "m_eff_ratio",
    )

    Z: int
    n: int
    twice_j: int
    e_uncorrected: float = Field(alias="E_uncorr_eV")
    e_corrected: float = Field(alias="E_corr_eV")
    delta_first_order: float = Field(alias="dE_first_eV")
    delta_exact: float = Field(alias="dE_exact_eV")
    k: float
    m_eff_over_m: float = Field(alias="m_eff_ratio")

    def key(self) -> Tuple[int, ...]:
        return (self.Z, self.n, self.twice_j)

class TransitionRow(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)
    HEADER: ClassVar[Tuple[str, ...]] = (
        "Z", "lower_n", "lower_twice_j", "upper_n", "upper_twice_j",
        "E_line_uncorr_eV", "E_line_corr_eV", "shift_level_diff_eV", "shift_eq15_eV",
        "wavelength_uncorr_nm", "wavelength_corr_nm",
    )

    Z: int
    lower_n: int
    lower_twice_j: int
    upper_n: int
    upper_twice_j: int
    e_line_uncorrected: float = Field(alias="E_line_uncorr_eV")
    e_line_corrected: float = Field(alias="E_line_corr_eV")
    shift_level_difference: float = Field(alias="shift_level_diff_eV")
    shift_eq15_literal: float = Field(alias="shift_eq15_eV")
    wavelength_uncorrected: Optional[float] = Field(alias="wavelength_uncorr_nm")
    wavelength_corrected: Optional[float] = Field(alias="wavelength_corr_nm")

    @field_validator("wavelength_uncorrected", "wavelength_corrected", mode="before")
    @classmethod
    def _empty_is_none(cls, value):
        return None if value == "" else value

    def key(self) -> Tuple[int, ...]:
        return (self.Z, self.lower_n, self.lower_twice_j, self.upper_n, self.upper_twice_j)

class _Table(BaseModel):
    model_config = ConfigDict(frozen=True)
    ROW_TYPE: ClassVar[Type[BaseModel]]
    MODE: ClassVar[str]

    notices: List[str] = Field(default_factory=list, description="States skipped during the sweep")

    @model_validator(mode="after")
    def _check_order(self):
        keys = [row.key() for row in self.rows]
        for previous, current in zip(keys, keys[1:]):
            if not previous < current:
                raise ValueError(f"rows must be strictly sorted by key; {previous} is followed by {current}")
        return self

class ShiftTable(_Table):
    ROW_TYPE: ClassVar[Type[BaseModel]] = ShiftRow
    MODE: ClassVar[str] = "levels"

    rows: List[ShiftRow] = Field(default_factory=list)

class TransitionTable(_Table):
    ROW_TYPE: ClassVar[Type[BaseModel]] = TransitionRow
    MODE: ClassVar[str] = "transitions"

    rows: List[TransitionRow] = Field(default_factory=list)

Table = Union[ShiftTable, TransitionTable]

def _grid_states(Z: int, n_max: int, include_all_j: bool, constants: Constants,
                 notices: List[str]) -> List[QuantumState]:
    """Valid states for one Z ordered by (n, twice_j); skipped states go to notices."""
    states = []
    for n in range(1, n_max + 1):
        twice_js = range(1, 2 * n, 2) if include_all_j else (1,)
        for twice_j in twice_js:
            n_radial = n - (twice_j + 1) // 2
            try:
                states.append(validate_state(Z, n_radial, twice_j, constants))
            except DomainError as e:
                notice = f"skipped Z={Z} n={n} twice_j={twice_j}: {e}"
                logger.warning(notice)
                notices.append(notice)
    return states

def _level_row(state: QuantumState, constants: Constants, fine_structure: bool) -> ShiftRow:
    result = level_corrected(state, constants, fine_structure)
    return ShiftRow(
        Z=state.Z,
        n=state.n,
        twice_j=state.twice_j,
        e_uncorrected=result.E_uncorrected,
        e_corrected=result.E_corrected,
        delta_first_order=result.delta_first_order,
        delta_exact=result.delta_exact,
        k=result.k,
        m_eff_over_m=result.m_eff_over_m,
    )

def _transition_row(upper: QuantumState, lower: QuantumState, constants: Constants,
                    fine_structure: bool) -> TransitionRow:
    line = transition(upper, lower, constants, fine_structure)
    return TransitionRow(
        Z=lower.Z,
        lower_n=lower.n,
        lower_twice_j=lower.twice_j,
        upper_n=upper.n,
        upper_twice_j=upper.twice_j,
        e_line_uncorrected=line.E_line_uncorrected,
        e_line_corrected=line.E_line_corrected,
        shift_level_difference=line.shift_level_difference,
        shift_eq15_literal=line.shift_eq15_literal,
        wavelength_uncorrected=line.wavelength_uncorrected,
        wavelength_corrected=line.wavelength_corrected,
    )

def _check_level_row(row: ShiftRow, constants: Constants, fine_structure: bool) -> List[str]:
    problems = []
    b = row.e_uncorrected
    if abs(row.e_corrected * (1.0 + row.k) - b) > 1e-12 * max(b, 1.0):
        problems.append("E_corrected (1 + k) != E_uncorrected")
    if row.delta_exact > 0.0 or row.delta_first_order > row.delta_exact:
        problems.append("displacement signs/ordering violated")
    if row.delta_exact - row.delta_first_order > b * row.k * row.k * (1.0 + 1e-12):
        problems.append("first-order remainder exceeds B k^2")
    state = QuantumState(Z=row.Z, n_radial=row.n - (row.twice_j + 1) // 2, twice_j=row.twice_j)
    if _level_row(state, constants, fine_structure) != row:
        problems.append("row is not reproducible")
    return problems

def _spot_check(table: Table, constants: Constants, fine_structure: bool) -> None:
    """Recompute a deterministic random sample of rows and check the level invariants."""
    if not table.rows:
        return
    count = max(1, round(len(table.rows) * settings.SWEEP_SPOT_CHECK_FRACTION))
    sample = random.Random(settings.SWEEP_SPOT_CHECK_SEED).sample(table.rows, count)
    for row in sample:
        if isinstance(row, ShiftRow):
            problems = _check_level_row(row, constants, fine_structure)
        else:
            upper = QuantumState(Z=row.Z, n_radial=row.upper_n - (row.upper_twice_j + 1) // 2, twice_j=row.upper_twice_j)
            lower = QuantumState(Z=row.Z, n_radial=row.lower_n - (row.lower_twice_j + 1) // 2, twice_j=row.lower_twice_j)
            problems = [] if _transition_row(upper, lower, constants, fine_structure) == row else ["row is not reproducible"]
        if problems:
            raise ArithmeticError(f"sweep row {row.key()} failed spot check: {'; '.join(problems)}")
    logger.debug(f"Spot-checked {count} of {len(table.rows)} row(s)")

def sweep(spec: SweepSpec, constants: Constants, fine_structure: bool = True) -> Table:
    """One row per valid state (levels) or ordered state pair (transitions) in the grid."""
    notices: List[str] = []
    level_rows: List[ShiftRow] = []
    line_rows: List[TransitionRow] = []

    for Z in range(spec.z_min, spec.z_max + 1):
        states = _grid_states(Z, spec.n_max, spec.include_all_j, constants, notices)
        if spec.mode == "levels":
            level_rows.extend(_level_row(state, constants, fine_structure) for state in states)
            continue
        for lower in states:
            for upper in states:
                if upper.n > lower.n:
                    line_rows.append(_transition_row(upper, lower, constants, fine_structure))

    if spec.mode == "levels":
        table: Table = ShiftTable(rows=sorted(level_rows, key=ShiftRow.key), notices=notices)
    else:
        table = TransitionTable(rows=sorted(line_rows, key=TransitionRow.key), notices=notices)
    _spot_check(table, constants, fine_structure)
    logger.info(f"Sweep {spec.mode} Z={spec.z_min}..{spec.z_max} n_max={spec.n_max}: "
                f"{len(table.rows)} row(s), {len(notices)} skipped")
    return table

def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)

def _row_dicts(table: Table) -> Iterator[dict]:
    for row in table.rows:
        yield row.model_dump(by_alias=True)

def render(table: Table, output_format: OutputFormat) -> bytes:
    """Serialize a table; identical input gives identical bytes."""
    header = table.ROW_TYPE.HEADER
    if output_format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in _row_dicts(table):
            writer.writerow([_format_value(row[column]) for column in header])
        return buffer.getvalue().encode("utf-8")
    if output_format == "json":
        rows = [{column: row[column] for column in header} for row in _row_dicts(table)]
        return (json.dumps(rows, indent=2, allow_nan=False) + "\n").encode("utf-8")
    raise DomainError(f"unknown output format {output_format!r}")

def emit(table: Table, output_format: OutputFormat, destination: Destination = "-") -> bytes:
    """
    Write the rendered table to a path, a binary/text stream, or '-' for stdout.

    Returns the bytes written. OSError propagates for unwritable paths.
    """
    data = render(table, output_format)
    if destination is None:
        return data
    if destination == "-":
        stream = getattr(sys.stdout, "buffer", None)
        if stream is not None:
            sys.stdout.flush()
            stream.write(data)
            stream.flush()
        else:
            sys.stdout.write(data.decode("utf-8"))
        return data
    if isinstance(destination, (str, Path)):
        Path(destination).write_bytes(data)
        logger.info(f"Wrote {len(table.rows)} row(s) to {destination}")
        return data
    try:
        destination.write(data)
    except TypeError:
        destination.write(data.decode("utf-8"))
    return data

def parse_table(data: Union[bytes, str], mode: SweepMode, output_format: OutputFormat) -> Table:
    """Inverse of render."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    table_type = ShiftTable if mode == "levels" else TransitionTable
    row_type = table_type.ROW_TYPE
    if output_format == "csv":
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != row_type.HEADER:
            raise DomainError(f"unexpected CSV header {reader.fieldnames}")
        raw_rows = list(reader)
    elif output_format == "json":
        raw_rows = json.loads(text)
    else:
        raise DomainError(f"unknown output format {output_format!r}")
    return table_type(rows=[row_type.model_validate(raw) for raw in raw_rows])
