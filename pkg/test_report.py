"""
Tests for sweeps and their CSV / JSON output.
"""

import io
import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from config.config import settings
from src.errors import SweepSpecError
from src.report import (
    ShiftRow,
    ShiftTable,
    SweepSpec,
    TransitionTable,
    emit,
    parse_table,
    parse_z_range,
    render,
    sweep,
)

GOLDEN = Path(__file__).resolve().parent / "golden" / "sweep_z1-10_n3.csv"


def test_single_cell(constants):
    table = sweep(SweepSpec(z_min=1, z_max=1, n_max=1), constants)
    assert len(table.rows) == 1
    row = table.rows[0]
    assert (row.Z, row.n, row.twice_j) == (1, 1, 1)
    assert row.e_uncorrected == pytest.approx(13.6059, abs=1e-3)
    assert table.notices == []


def test_small_grid_row_count_and_order(constants):
    table = sweep(SweepSpec(z_min=1, z_max=2, n_max=2), constants)
    assert [row.key() for row in table.rows] == [(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)]


def test_all_j(constants):
    table = sweep(SweepSpec(z_min=3, z_max=3, n_max=3, include_all_j=True), constants)
    assert [row.key() for row in table.rows] == [
        (3, 1, 1), (3, 2, 1), (3, 2, 3), (3, 3, 1), (3, 3, 3), (3, 3, 5),
    ]


def test_rows_must_be_sorted(constants):
    rows = sweep(SweepSpec(z_min=1, z_max=2, n_max=1), constants).rows
    with pytest.raises(ValidationError, match="strictly sorted"):
        ShiftTable(rows=list(reversed(rows)))


def test_empty_table_output():
    empty = ShiftTable()
    assert render(empty, "csv") == (",".join(ShiftRow.HEADER) + "\n").encode()
    assert render(empty, "json") == b"[]\n"
    assert parse_table(render(empty, "csv"), "levels", "csv").rows == []


def test_supercritical_states_become_notices(magnified):
    table = sweep(SweepSpec(z_min=8, z_max=11, n_max=1), magnified)
    assert [row.Z for row in table.rows] == [8, 9]
    assert len(table.notices) == 2
    assert all("supercritical charge" in notice for notice in table.notices)


def test_fully_skipped_sweep_is_empty(magnified):
    table = sweep(SweepSpec(z_min=10, z_max=12, n_max=2), magnified)
    assert table.rows == []
    assert len(table.notices) == 6
    assert render(table, "json") == b"[]\n"


def test_transitions_mode(constants):
    table = sweep(SweepSpec(z_min=1, z_max=1, n_max=3, mode="transitions"), constants)
    assert isinstance(table, TransitionTable)
    assert [(row.lower_n, row.upper_n) for row in table.rows] == [(1, 2), (1, 3), (2, 3)]
    assert all(row.shift_level_difference < 0 for row in table.rows)


@pytest.mark.parametrize("kwargs", [
    dict(z_min=0, z_max=3, n_max=1),
    dict(z_min=5, z_max=4, n_max=1),
    dict(z_min=1, z_max=138, n_max=1),
    dict(z_min=1, z_max=1, n_max=0),
    dict(z_min=1, z_max=1, n_max=1, mode="transitions"),
    dict(z_min=1, z_max=1, n_max=1, output_format="xml"),
])
def test_invalid_sweep_spec(kwargs):
    with pytest.raises(ValidationError):
        SweepSpec(**kwargs)


def test_parse_z_range():
    assert parse_z_range("1..92") == (1, 92)
    assert parse_z_range(" 26 ") == (26, 26)
    for text in ("", "a..b", "1-5", "1..x"):
        with pytest.raises(SweepSpecError):
            parse_z_range(text)


@pytest.mark.parametrize("output_format", ["csv", "json"])
def test_output_is_byte_deterministic(constants, output_format):
    spec = SweepSpec(z_min=1, z_max=5, n_max=3, include_all_j=True)
    assert render(sweep(spec, constants), output_format) == render(sweep(spec, constants), output_format)


@pytest.mark.parametrize("mode", ["levels", "transitions"])
@pytest.mark.parametrize("output_format", ["csv", "json"])
def test_output_reads_back_exactly(constants, mode, output_format):
    table = sweep(SweepSpec(z_min=1, z_max=92, n_max=3, mode=mode), constants)
    again = parse_table(render(table, output_format), mode, output_format)
    assert again.rows == table.rows


def test_missing_wavelengths_read_back(alpha_off):
    table = sweep(SweepSpec(z_min=1, z_max=2, n_max=2, mode="transitions"), alpha_off)
    data = render(table, "csv")
    assert b",,\n" in data
    assert all(row.wavelength_uncorrected is None for row in parse_table(data, "transitions", "csv").rows)
    rows = json.loads(render(table, "json"))
    assert rows[0]["wavelength_corr_nm"] is None


def test_json_columns_follow_header(constants):
    rows = json.loads(render(sweep(SweepSpec(z_min=1, z_max=1, n_max=2), constants), "json"))
    assert list(rows[0]) == list(ShiftRow.HEADER)


def test_emit_destinations(constants, tmp_path, capsysbinary):
    table = sweep(SweepSpec(z_min=1, z_max=3, n_max=2), constants)
    expected = render(table, "csv")

    path = tmp_path / "sweep.csv"
    assert emit(table, "csv", path) == expected
    assert path.read_bytes() == expected

    stream = io.BytesIO()
    emit(table, "csv", stream)
    assert stream.getvalue() == expected

    assert emit(table, "csv", None) == expected
    assert capsysbinary.readouterr().out == b""

    emit(table, "csv", "-")
    assert capsysbinary.readouterr().out == expected


def test_emit_unwritable_path(constants, tmp_path):
    table = sweep(SweepSpec(z_min=1, z_max=1, n_max=1), constants)
    with pytest.raises(OSError):
        emit(table, "csv", tmp_path / "missing" / "sweep.csv")


def test_charge_column_scaling(constants):
    table = sweep(SweepSpec(z_min=1, z_max=6, n_max=3), constants, fine_structure=False)
    by_key = {row.key(): row for row in table.rows}
    for Z in range(2, 7):
        for n in range(1, 4):
            ratio = by_key[(Z, n, 1)].delta_first_order / by_key[(1, n, 1)].delta_first_order
            assert ratio == pytest.approx(Z ** 4, rel=1e-14)


def test_spot_check_covers_every_row(constants, monkeypatch):
    monkeypatch.setattr(settings, "SWEEP_SPOT_CHECK_FRACTION", 1.0)
    table = sweep(SweepSpec(z_min=80, z_max=92, n_max=4, include_all_j=True), constants)
    assert len(table.rows) == 13 * 10


def test_golden_snapshot(constants):
    assert GOLDEN.exists(), "golden/sweep_z1-10_n3.csv is missing; run scripts/regenerate_golden.py"
    table = sweep(SweepSpec(z_min=1, z_max=10, n_max=3), constants)
    assert render(table, "csv") == GOLDEN.read_bytes()
