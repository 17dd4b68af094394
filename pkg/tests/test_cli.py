import json
import subprocess
import sys

import pytest

from zeig.cli import EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main, render_json

from conftest import fixture_path

EX1 = str(fixture_path("example1.json"))
EX2 = str(fixture_path("example2.json"))
DIAG = str(fixture_path("diagonal_123_m3.json"))
ZERO = str(fixture_path("zero_m2_n2.json"))
RANK1 = str(fixture_path("rank_one_m4_n2.json"))
CORRUPT = str(fixture_path("corrupt.json"))


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- info ------------------------------------------------------------------------


def test_info_example2_structure(capsys):
    code, out, _ = run_cli(capsys, "info", EX2)
    assert code == EXIT_OK
    assert "weakly symmetric: yes" in out
    assert "symmetric: no" in out
    assert "max row sum: 14.5" in out


def test_info_example1_symmetric(capsys):
    code, out, _ = run_cli(capsys, "info", EX1)
    assert code == EXIT_OK
    assert "symmetric: yes" in out


def test_info_json_fields(capsys):
    code, out, _ = run_cli(capsys, "info", EX2, "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["order"] == 3 and doc["dim"] == 3
    assert doc["entry_count"] == 27
    assert doc["weakly_symmetric"] is True and doc["symmetric"] is False
    assert doc["row_sums"] == [14.5, 8.5, 8.5]


def test_info_corrupt_file_names_problem(capsys):
    code, out, err = run_cli(capsys, "info", CORRUPT)
    assert code == EXIT_USAGE
    assert "invalid JSON" in err


def test_missing_file_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "info", "no_such_file.json")
    assert code == EXIT_USAGE
    assert "cannot read" in err


# -- bounds ----------------------------------------------------------------------


def test_bounds_example1_json(capsys):
    code, out, _ = run_cli(capsys, "bounds", EX1, "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["omega_max"] == pytest.approx(4.3971, abs=1e-4)
    assert doc["gershgorin"] == pytest.approx(5.3333, abs=1e-4)
    assert doc["attaining_pair"] == [2, 1]
    assert doc["warnings"] == []


def test_bounds_example2_json(capsys):
    code, out, _ = run_cli(capsys, "bounds", EX2, "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["omega_max"] == pytest.approx(11.7268, abs=5e-4)
    assert doc["gershgorin"] == 14.5


def test_bounds_zero_tensor(capsys):
    code, out, _ = run_cli(capsys, "bounds", ZERO, "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["omega_max"] == 0 and doc["chain_middle"] == 0 and doc["gershgorin"] == 0


def test_bounds_json_round_trips_byte_identical(capsys):
    _, out, _ = run_cli(capsys, "bounds", EX1, "--json")
    assert render_json(json.loads(out)) == out


# -- regions ---------------------------------------------------------------------


def test_regions_omega_supremum(capsys):
    code, out, _ = run_cli(capsys, "regions", EX1, "--set", "Omega")
    assert code == EXIT_OK
    assert "Omega" in out
    assert "4.39706" in out


def test_regions_all_nested_suprema(capsys):
    code, out, _ = run_cli(capsys, "regions", EX1, "--set", "all", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["Omega"]["supremum"] <= doc["M"]["supremum"] <= doc["K"]["supremum"]
    assert doc["Omega"]["supremum"] == pytest.approx(4.3971, abs=1e-4)
    assert doc["M"]["supremum"] == pytest.approx(31 / 6, rel=1e-12)
    assert doc["K"]["supremum"] == pytest.approx(16 / 3, rel=1e-12)


def test_regions_unknown_set_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "regions", EX1, "--set", "Q")
    assert code == EXIT_USAGE
    assert "invalid choice" in err


def test_regions_csv_export(tmp_path, capsys):
    csv_path = tmp_path / "omega.csv"
    code, _, _ = run_cli(capsys, "regions", EX1, "--set", "Omega", "--csv", str(csv_path))
    assert code == EXIT_OK
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "lo,hi,lo_open,hi_open"
    lo, hi, lo_open, hi_open = lines[1].split(",")
    assert float(lo) == 0.0
    assert float(hi) == pytest.approx(4.3970633623780984, rel=1e-15)
    assert (lo_open, hi_open) == ("0", "0")


def test_regions_csv_requires_single_set(tmp_path, capsys):
    code, _, err = run_cli(capsys, "regions", EX1, "--csv", str(tmp_path / "r.csv"))
    assert code == EXIT_USAGE
    assert "single set" in err


# -- eigs ------------------------------------------------------------------------


def test_eigs_sweep_example1(capsys):
    code, out, _ = run_cli(capsys, "eigs", EX1, "--method", "sweep", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc
    values = [item["lambda"] for item in doc]
    assert values == sorted(values, reverse=True)
    assert all(item["residual"] <= 1e-12 for item in doc)


def test_eigs_newton_diagonal(capsys):
    code, out, _ = run_cli(
        capsys, "eigs", DIAG, "--method", "newton", "--restarts", "500", "--seed", "7", "--json"
    )
    assert code == EXIT_OK
    values = [item["lambda"] for item in json.loads(out)]
    assert any(abs(v - 3.0) <= 1e-9 for v in values)


def test_eigs_sweep_requires_dim2(capsys):
    code, _, err = run_cli(capsys, "eigs", EX2, "--method", "sweep")
    assert code == EXIT_USAGE
    assert "dim" in err


def test_eigs_bad_grid_and_restarts(capsys):
    assert run_cli(capsys, "eigs", EX1, "--method", "sweep", "--grid", "10")[0] == EXIT_USAGE
    assert run_cli(capsys, "eigs", EX2, "--restarts", "0")[0] == EXIT_USAGE


def test_eigs_deterministic_output(capsys):
    _, out1, _ = run_cli(capsys, "eigs", EX2, "--restarts", "200", "--seed", "42", "--json")
    _, out2, _ = run_cli(capsys, "eigs", EX2, "--restarts", "200", "--seed", "42", "--json")
    assert out1 == out2


# -- verify ----------------------------------------------------------------------


def test_verify_example1_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", EX1)
    assert code == EXIT_OK
    assert "all checks passed" in out


def test_verify_example2_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", EX2, "--restarts", "300")
    assert code == EXIT_OK


def test_verify_injected_escape_fails(capsys):
    code, out, _ = run_cli(capsys, "verify", EX1, "--inject-lambda", "53.33")
    assert code == EXIT_VERIFY
    assert "VIOLATION" in out
    assert "not in Omega" in out


def test_verify_json_report(capsys):
    code, out, _ = run_cli(capsys, "verify", EX2, "--restarts", "300", "--json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["method"] == "newton"
    assert doc["chain_ok"] is True
    assert doc["all_passed"] is True
    assert doc["checks"]
    assert render_json(doc) == out


# -- exit-code contract over the fixture corpus --------------------------------------


@pytest.mark.parametrize("command", ["info", "bounds", "regions", "eigs", "verify"])
@pytest.mark.parametrize(
    "path, ok",
    [(EX1, True), (EX2, True), (DIAG, True), (ZERO, True), (RANK1, True), (CORRUPT, False)],
)
def test_exit_code_contract(capsys, command, path, ok):
    args = [command, path]
    if command in ("eigs", "verify"):
        args += ["--restarts", "50"]
    code, _, err = run_cli(capsys, *args)
    if ok:
        assert code == EXIT_OK, err
    else:
        assert code == EXIT_USAGE


def test_no_command_is_usage_error(capsys):
    code, _, err = run_cli(capsys)
    assert code == EXIT_USAGE
    assert "command" in err


def test_cli_runs_as_module(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "zeig.cli", "bounds", EX1, "--json"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["omega_max"] == pytest.approx(4.3971, abs=1e-4)
