"""Command-line interface: output contracts, exit codes, determinism."""

import csv
import json

import pytest

from hypolib.cli import main


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_kernel_command_writes_csv(tmp_path):
    out = tmp_path / "kernel.csv"
    rc = main(
        ["kernel", "--lambda", "2", "0", "--n", "1", "--z-r", "0.4",
         "--xi", "0.0,1.5", "--out", str(out)]
    )
    assert rc == 0
    rows = read_csv(out)
    assert rows[0] == ["xi_angle", "value_re", "value_im"]
    assert len(rows) == 3
    float(rows[1][1])  # numeric cells parse back


def test_spherical_closed_form_cells(tmp_path):
    out = tmp_path / "sph.csv"
    assert main(["spherical", "--lambda", "2", "0", "--r-grid", "0.2:0.6:3",
                 "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0][3] == "closed_form_re"
    assert rows[1][3] != ""
    out2 = tmp_path / "sph2.csv"
    assert main(["spherical", "--lambda", "2", "0", "--n", "1",
                 "--r-grid", "0.2:0.6:3", "--out", str(out2)]) == 0
    rows2 = read_csv(out2)
    assert rows2[1][3] == ""  # no closed form away from order 0


def test_float_cells_use_full_precision(tmp_path):
    out = tmp_path / "z.csv"
    assert main(["zeros", "--lambda", "-1", "0", "--count", "400",
                 "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 3
    for cell in (rows[1][1], rows[2][1]):
        assert float(cell) == float(format(float(cell), ".17g"))
    assert rows[1][2] == ""  # first zero has no predecessor gap


def test_forbidden_ray_dirichlet_is_a_usage_error(capsys):
    rc = main(["dirichlet", "--lambda", "-1", "0", "--radii", "0.9"])
    assert rc == 2
    assert "forbidden" in capsys.readouterr().err


def test_missing_datum_is_a_library_error(capsys):
    rc = main(["convergence", "--lambda", "0", "0", "--mode", "uniform",
               "--radii", "0.9"])
    assert rc == 1
    assert "datum" in capsys.readouterr().err


def test_bad_usage_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["spherical", "--lambda", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_config_supplies_defaults_cli_overrides(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 1, "r_grid": "0.2:0.6:3"}))
    out = tmp_path / "a.csv"
    assert main(["spherical", "--lambda", "2", "0", "--config", str(cfg),
                 "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 4 and rows[1][3] == ""  # config n=1 took effect
    out2 = tmp_path / "b.csv"
    assert main(["spherical", "--lambda", "2", "0", "--config", str(cfg),
                 "--n", "0", "--out", str(out2)]) == 0
    rows2 = read_csv(out2)
    assert rows2[1][3] != ""  # explicit flag beats the config


def test_lacunary_report_frozen_row(tmp_path):
    out = tmp_path / "lac.csv"
    assert main(["lacunary", "--N", "2", "--grid-size", "65536",
                 "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["N", "circle_radius", "sup_value"]
    assert float(rows[1][2]) == pytest.approx(6.8995033096161391, rel=1e-9)


def test_examples_tables(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["examples", "--what", "d", "--n-max", "1",
                 "--r-grid", "0.3:0.7:2", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert rows[0] == ["n", "r", "value"]
    assert len(rows) == 5


def test_selftest_exit_codes_and_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["selftest", "--seed", "5", "--criteria", "2,6", "--out", str(a)]) == 0
    assert main(["selftest", "--seed", "5", "--criteria", "2,6", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = read_csv(a)
    assert rows[0] == ["criterion", "name", "status", "details"]
    assert [r[0] for r in rows[1:]] == ["2", "6"]
    assert all(r[2] == "pass" for r in rows[1:])


def test_selftest_reports_failure_with_exit_one(tmp_path):
    out = tmp_path / "red.csv"
    rc = main(["selftest", "--seed", "5", "--criteria", "4", "--out", str(out)])
    assert rc == 1
    rows = read_csv(out)
    assert rows[1][2] == "fail"


def test_criteria_range_expansion(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["selftest", "--seed", "5", "--criteria", "2-3,6", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert [r[0] for r in rows[1:]] == ["2", "3", "6"]
