import csv
import io
import json

import pytest

from fibzeta.cli import GridRequest, main, parse_complex
from fibzeta.errors import DomainError


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -------------------------------------------------------------- complex parsing

@pytest.mark.parametrize(
    "text,expected",
    [
        ("2", 2 + 0j),
        ("-1", -1 + 0j),
        ("1.5+2i", 1.5 + 2j),
        ("1.5-2.25i", 1.5 - 2.25j),
        ("3i", 3j),
        ("-i", -1j),
        ("+i", 1j),
        ("1+i", 1 + 1j),
        ("0.5+14.134725i", 0.5 + 14.134725j),
        ("1e-3-2e-3i", 0.001 - 0.002j),
    ],
)
def test_parse_complex_accepts(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "1+2", "i1", "2+3j5", "1 + 2i2", "abc"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


# ------------------------------------------------------------------------ eval

def test_eval_reciprocal_fibonacci(capsys):
    code, out, _ = run_cli(capsys, "eval", "--D", "5", "--s", "1",
                           "--parity", "combined", "--method", "binomial")
    assert code == 0
    value = float(out.split("value_re:")[1].splitlines()[0])
    assert abs(value - 3.359885666243) < 1e-9


def test_eval_even_minus_one_poisson(capsys):
    code, out, _ = run_cli(capsys, "eval", "--D", "5", "--s=-1",
                           "--parity", "even", "--method", "poisson")
    assert code == 0
    value = float(out.split("value_re:")[1].splitlines()[0])
    assert abs(value - (-1.0)) < 1e-9


def test_eval_norm_plus_one_failure(capsys):
    code, _, err = run_cli(capsys, "eval", "--D", "6", "--s", "1", "--parity", "odd")
    assert code == 4
    assert "NormPlusOneError" in err


def test_eval_pole_proximity_exit_code(capsys):
    code, _, err = run_cli(capsys, "eval", "--D", "5", "--s", "1e-9", "--parity", "odd")
    assert code == 3
    assert "PoleProximityError" in err


def test_eval_json_output(capsys):
    code, out, _ = run_cli(capsys, "eval", "--D", "5", "--s", "2", "--json")
    assert code == 0
    record = json.loads(out)
    assert record["method"] == "binomial"
    assert abs(float(record["value_re"]) - 2.426320751167241) < 1e-9


def test_eval_bad_complex_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "eval", "--D", "5", "--s", "nope")
    assert code == 2


# ------------------------------------------------------------------------ grid

def test_grid_rows_and_method_deltas(capsys):
    code, out, _ = run_cli(
        capsys, "grid", "--D", "5", "--parity", "odd",
        "--re", "1", "3", "1", "--im", "-1", "1", "1",
        "--methods", "binomial,poisson", "--tol", "1e-12",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "re_s"
    data = rows[1:]
    assert len(data) == 18  # 9 points x 2 methods
    by_point = {}
    for row in data:
        assert row[7] == "ok"
        by_point.setdefault((row[0], row[1]), {})[row[2]] = complex(float(row[3]), float(row[4]))
    for vals in by_point.values():
        assert abs(vals["binomial"] - vals["poisson"]) < 1e-8


def test_grid_marks_pole_rows(capsys):
    code, out, _ = run_cli(
        capsys, "grid", "--D", "5", "--parity", "odd",
        "--re", "-1", "1", "1", "--im", "0", "0", "1",
        "--methods", "binomial",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[1:]
    status = {row[0]: row[7] for row in rows}
    assert status["0"] == "pole"
    assert status["1"] == "ok"


def test_grid_empty_range_header_only(capsys):
    code, out, _ = run_cli(
        capsys, "grid", "--D", "5", "--re", "2", "1", "1", "--im", "0", "0", "1",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 1  # header only


def test_grid_csv_round_trip_bit_identical(capsys):
    code, out, _ = run_cli(
        capsys, "grid", "--D", "5", "--parity", "even",
        "--re", "0.3", "2.3", "0.5", "--im", "0.1", "0.1", "1",
        "--methods", "binomial", "--tol", "1e-12",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[1:]
    for row in rows:
        for cell in (row[3], row[4]):
            assert f"{float(cell):.17g}" == cell


def test_grid_workers_deterministic(capsys):
    args = ["grid", "--D", "5", "--parity", "odd", "--re", "0.5", "2", "0.5",
            "--im", "-1", "1", "1", "--methods", "binomial,poisson"]
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args, "--workers", "2")
    assert code1 == code2 == 0
    assert out1 == out2


def test_grid_json_format(capsys):
    code, out, _ = run_cli(
        capsys, "grid", "--D", "5", "--re", "1", "2", "1", "--im", "0", "0", "1",
        "--methods", "binomial", "--format", "json",
    )
    assert code == 0
    records = json.loads(out)
    assert len(records) == 2
    assert records[0]["status"] == "ok"


def test_grid_request_validation():
    with pytest.raises(DomainError):
        GridRequest(5, "odd", (0.0, 1.0, -0.1), (0.0, 1.0, 0.5), ("binomial",), 1e-10, "csv")
    with pytest.raises(DomainError):
        GridRequest(5, "odd", (0.0, 1.0, 0.1), (0.0, 1.0, 0.5), ("binomial",), 0.5, "csv")
    with pytest.raises(DomainError):
        GridRequest(5, "odd", (0.0, 1.0, 0.1), (0.0, 1.0, 0.5), ("sorcery",), 1e-10, "csv")
    with pytest.raises(DomainError):
        GridRequest(5, "whatever", (0.0, 1.0, 0.1), (0.0, 1.0, 0.5), ("binomial",), 1e-10, "csv")


# ----------------------------------------------------------------------- poles

def test_poles_odd_table(capsys):
    code, out, _ = run_cli(capsys, "poles", "--D", "5", "--kmax", "1", "--mmax", "1")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert len(rows) == 6


def test_poles_combined_filters(capsys):
    code, out, _ = run_cli(capsys, "poles", "--D", "5", "--kmax", "1", "--mmax", "1",
                           "--which", "combined")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert {(r[0], r[1]) for r in rows} == {("0", "0"), ("1", "-1"), ("1", "1")}


def test_poles_origin_residue(capsys):
    code, out, _ = run_cli(capsys, "poles", "--D", "5", "--kmax", "0", "--mmax", "0")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert len(rows) == 1
    assert abs(float(rows[0][4]) - 1.0390434606175138) < 1e-12


def test_poles_norm_plus_one_exit(capsys):
    code, _, err = run_cli(capsys, "poles", "--D", "7")
    assert code == 4


# -------------------------------------------------------------------- sequence

def test_sequence_d3(capsys):
    code, out, _ = run_cli(capsys, "sequence", "--D", "3", "--n", "5")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert rows[-1][:3] == ["5", "209", "724"]
    assert all(r[3] == "ok" for r in rows)


def test_sequence_d10(capsys):
    code, out, _ = run_cli(capsys, "sequence", "--D", "10", "--n", "4")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert rows[-1][:3] == ["4", "228", "1442"]


def test_sequence_d5(capsys):
    code, out, _ = run_cli(capsys, "sequence", "--D", "5", "--n", "10")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert rows[-1][:3] == ["10", "55", "123"]


# ---------------------------------------------------------------------- detect

def test_detect_even_member(capsys):
    code, out, _ = run_cli(capsys, "detect", "--D", "5", "--n", "8")
    assert code == 0
    assert "member_even_index" in out and "witness: 18" in out


def test_detect_non_member(capsys):
    code, out, _ = run_cli(capsys, "detect", "--D", "5", "--n", "4")
    assert code == 0
    assert "not_member" in out


# ---------------------------------------------------------------------- verify

def test_verify_special_values(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "special-values", "--D", "5")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out


def test_verify_pell_small_bound(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "pell", "--D", "5",
                           "--bound", "20000")
    assert code == 0
    assert "pell-membership D=5" in out


def test_verify_unknown_suite_usage_error(capsys):
    code, _, err = run_cli(capsys, "verify", "--suite", "astrology")
    assert code == 2
    assert "unknown suite" in err


def test_verify_deterministic_with_seed(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "--suite", "zeta-cancellation",
                             "--D", "5", "--seed", "42")
    code2, out2, _ = run_cli(capsys, "verify", "--suite", "zeta-cancellation",
                             "--D", "5", "--seed", "42")
    assert (code1, out1) == (code2, out2)


# ------------------------------------------------------------- config handling

def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "fibzeta.conf"
    cfg.write_text("pole_guard_radius = 0.5\nprecision_dps = 32  # comment\n")
    # inside the configured (huge) guard radius -> pole proximity
    code, _, err = run_cli(capsys, "eval", "--D", "5", "--s", "0.4", "--parity", "odd",
                           "--config", str(cfg))
    assert code == 3 and "PoleProximityError" in err
    # flag overrides the config file
    code, out, _ = run_cli(capsys, "eval", "--D", "5", "--s", "0.4", "--parity", "odd",
                           "--config", str(cfg), "--pole-guard", "1e-3")
    assert code == 0


def test_precision_env_variable(monkeypatch):
    from fibzeta.config import default_settings

    monkeypatch.setenv("FIBZETA_PRECISION", "48")
    assert default_settings().precision_dps == 48
    monkeypatch.setenv("FIBZETA_PRECISION", "asdf")
    with pytest.raises(ValueError):
        default_settings()
    monkeypatch.delenv("FIBZETA_PRECISION")
    assert default_settings().precision_dps == 64


def test_usage_error_exit_code(capsys):
    assert main(["eval", "--D", "5"]) == 2  # missing --s
    assert main(["unknown-command"]) == 2
