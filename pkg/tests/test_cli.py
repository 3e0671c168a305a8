import math

import pytest

from mopweno import cli
from mopweno.cli import RunConfig, compare_schemes, config_from_mapping, main, parse_args, read_config_file, run_matrix


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# accuracy sweep\nproblem = sin\nschemes = weno-js, mop-weno-m\ncells = 10, 20\ntfinal = 2\n")
    values = read_config_file(cfg)
    c = config_from_mapping(values)
    assert c.schemes == ["weno-js", "mop-weno-m"] and c.cells == [10, 20] and c.tfinal == 2.0
    c = parse_args(["--config", str(cfg), "--cells", "40", "--scheme", "weno-m", "--slow"])
    assert c.cells == [40] and c.schemes == ["weno-m"] and c.slow and c.problem == "sin"
    with pytest.raises(ValueError, match="unknown config keys"):
        config_from_mapping({"problem": "sin", "colour": "red"})


@pytest.mark.parametrize(
    "argv",
    [
        ["--problem", "sin", "--scheme", "weno-z", "--cells", "10", "--tfinal", "1"],
        ["--problem", "square", "--cells", "10", "--tfinal", "1"],
        ["--problem", "sin", "--cells", "0", "--tfinal", "1"],
        ["--problem", "sin", "--cells", "10"],
    ],
)
def test_bad_configs_exit_2(argv):
    assert main(argv) == 2


def test_empty_scheme_list(tmp_path, capsys):
    assert main(["--problem", "sin", "--cells", "10", "--tfinal", "1", "--out", str(tmp_path)]) == 0
    assert capsys.readouterr().out.strip().splitlines() == [",".join(cli.REPORT_FIELDS)]


def test_sin_matrix_orders_and_files(tmp_path):
    cfg = RunConfig("sin", ["weno-js"], [10, 20, 40, 80, 160, 320], 2.0, out=tmp_path)
    reps = run_matrix(cfg)
    assert len(reps) == 6 and all(r.status == "ok" for r in reps)
    assert all(math.isnan(o) for o in reps[0].orders)
    assert 4.9 <= reps[-1].orders[0] <= 5.1
    body = (tmp_path / "solution_weno-js_N10.csv").read_text().splitlines()
    assert body[0] == "x,u,exact" and len(body) == 11


def test_reruns_are_byte_identical(tmp_path):
    argv = ["--problem", "slp", "--scheme", "weno-m", "--scheme", "mop-weno-m", "--cells", "100",
            "--tfinal", "0.2", "--baseline", "weno-m"]
    assert main(argv + ["--out", str(tmp_path / "a")]) == 0
    assert main(argv + ["--out", str(tmp_path / "b")]) == 0
    for name in ("report.csv", "comparison.csv", "solution_mop-weno-m_N100.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert (tmp_path / "a" / "metadata.json").exists()


def test_failed_cells_are_recorded(tmp_path, capsys):
    # 15 cells cannot place the SLP jumps on faces; the matrix carries on
    rc = main(["--problem", "slp", "--scheme", "weno-js", "--cells", "15", "--cells", "20", "--tfinal", "0.1"])
    out = capsys.readouterr().out.splitlines()
    assert rc == 1
    assert ",failed," in out[1] and ",ok," in out[2]


def test_slow_runs_are_skipped_without_flag():
    reps = run_matrix(RunConfig("sin9", ["weno-js"], [20], 2000.0))
    assert reps[0].status == "skipped"


def test_compare_schemes():
    reps = run_matrix(RunConfig("sin9", ["weno-js", "mip-weno-acmk"], [200], 10.0))
    rows = compare_schemes(reps, "mip-weno-acmk")
    base = [r for r in rows if r["scheme"] == "mip-weno-acmk"][0]
    assert base["l1"] == base["l2"] == base["linf"] == 0.0
    js = [r for r in rows if r["scheme"] == "weno-js"][0]
    assert js["l1"] == pytest.approx(359.06, abs=1.0)
    with pytest.raises(KeyError):
        compare_schemes(reps, "weno-m")


def test_2d_cell_writes_slice(tmp_path):
    reps = run_matrix(RunConfig("riemann4", ["mop-weno-m"], [20], 0.02, out=tmp_path))
    assert reps[0].status == "ok" and reps[0].non_op_count == 0
    assert (tmp_path / "slice_mop-weno-m_N20.csv").read_text().startswith("x,rho\n")
    assert (tmp_path / "solution_mop-weno-m_N20.csv").read_text().startswith("x,y,rho,u,v,p\n")
