import pytest

from diffbot.cli import main
from diffbot.output import TRACE_COLUMNS
from diffbot.scenarios import SCENARIOS


def read_metrics(path):
    return dict(line.split("=", 1) for line in path.read_text().splitlines())


def test_scenarios_listed(capsys):
    assert main(["scenarios"]) == 0
    assert capsys.readouterr().out.split() == list(SCENARIOS)


def test_run_line_raw_schema(tmp_path):
    assert main(["run", "line", "--estimator", "raw", "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "trace.csv").read_text().splitlines()
    assert lines[0] == "t,ref_wr,ref_wl,true_wr,true_wl,meas_wr,meas_wl,est_wr,est_wl,pwm_r,pwm_l,x,y,phi"
    assert lines[0].split(",") == list(TRACE_COLUMNS)
    assert all(len(row.split(",")) == 14 for row in lines[1:])
    assert len(lines) - 1 == 2500
    for name in ("metrics.txt", "speed_r.dat", "speed_l.dat", "path.dat"):
        assert (tmp_path / name).exists()


def test_plot_data_layout(tmp_path):
    main(["run", "circle", "--out", str(tmp_path)])
    blocks = (tmp_path / "path.dat").read_text().strip().split("\n\n\n")
    assert len(blocks) == 2
    for block in blocks:
        assert all(len(line.split()) == 2 for line in block.splitlines())
    speed_blocks = (tmp_path / "speed_r.dat").read_text().strip().split("\n\n\n")
    assert len(speed_blocks) == 2


def test_metrics_format(tmp_path):
    main(["run", "line", "--out", str(tmp_path)])
    metrics = read_metrics(tmp_path / "metrics.txt")
    assert {"settling_s", "rms_speed_error", "final_pose_error_m", "path_closure_m"} <= metrics.keys()
    for value in metrics.values():
        assert value == "absent" or len(value.split(".")[1]) == 6


def test_hexagon_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["run", "hexagon", "--seed", "42", "--out", str(a)]) == 0
    assert main(["run", "hexagon", "--seed", "42", "--out", str(b)]) == 0
    assert (a / "trace.csv").read_bytes() == (b / "trace.csv").read_bytes()


def test_seed_override_changes_trace(tmp_path):
    main(["run", "line", "--seed", "1", "--out", str(tmp_path / "a")])
    main(["run", "line", "--seed", "2", "--out", str(tmp_path / "b")])
    assert (tmp_path / "a/trace.csv").read_bytes() != (tmp_path / "b/trace.csv").read_bytes()


def test_settling_compare(tmp_path):
    assert main(["run", "settling-compare", "--out", str(tmp_path)]) == 0
    m = read_metrics(tmp_path / "metrics.txt")
    assert float(m["settling_kf_s"]) < float(m["settling_lpf_s"])
    assert (tmp_path / "trace_lpf.csv").exists()


def test_paper_replay_runs(tmp_path):
    assert main(["run", "hexagon-paper-replay", "--out", str(tmp_path)]) == 0


@pytest.mark.parametrize(
    "argv, message",
    [
        (["run", "zigzag"], "unknown scenario"),
        (["run", "line", "--config", "/nonexistent/x.cfg"], "cannot read config"),
    ],
)
def test_errors_exit_nonzero_with_one_line(tmp_path, capsys, argv, message):
    assert main(argv + ["--out", str(tmp_path)]) != 0
    err = capsys.readouterr().err
    assert message in err
    assert err.count("\n") == 1


def test_invalid_parameter(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("ts_s = 0\n")
    assert main(["run", "line", "--config", str(cfg), "--out", str(tmp_path / "o")]) != 0
    assert "ts_s" in capsys.readouterr().err
    assert main(["validate", "--config", str(cfg)]) != 0


def test_validate_ok(tmp_path, capsys):
    cfg = tmp_path / "ok.cfg"
    cfg.write_text("gains.kp = 0.479\n")
    assert main(["validate", "--config", str(cfg)]) == 0
    assert "ok" in capsys.readouterr().out


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["run", "line", "--out", str(blocker / "sub")]) != 0
