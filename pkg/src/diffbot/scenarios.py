"""Named scenarios and the function that runs one to disk."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .config import load_config
from .output import write_metrics, write_plot_data, write_trace_csv
from .simulation import (
    SimConfig,
    TrajectoryPlan,
    compute_metrics,
    inside_arena,
    make_plan,
    paper_replay_plan,
    simulate_run,
)

__all__ = ["SCENARIOS", "PRESET_PLANS", "RunManifest", "scenario_plan", "run_scenario"]


def _plans(config: SimConfig) -> dict[str, TrajectoryPlan]:
    return {
        "line": make_plan("line"),
        "turn": make_plan("turn_in_place"),
        "circle": make_plan("circle"),
        "hexagon": make_plan("hexagon"),
        "hexagon-paper-replay": paper_replay_plan(config.geometry),
        "settling-compare": make_plan("line"),
    }


SCENARIOS = ("line", "turn", "circle", "hexagon", "hexagon-paper-replay", "settling-compare")
# Plans whose wheel commands are chosen by us (the replay transcribes a recording).
PRESET_PLANS = ("line", "turn", "circle", "hexagon")


def scenario_plan(name: str, config: SimConfig | None = None) -> TrajectoryPlan:
    if name not in SCENARIOS:
        raise ValueError(f"unknown scenario {name!r} (choose from {', '.join(SCENARIOS)})")
    return _plans(config or SimConfig())[name]


@dataclass(frozen=True)
class RunManifest:
    scenario: str
    config_path: Path | None = None
    out_dir: Path = Path("out")
    seed: int | None = None
    estimator: str | None = None


def _run_metrics(config: SimConfig, trace) -> dict[str, object]:
    m = compute_metrics(trace)
    return {
        "steps": float(len(trace)),
        "duration_s": len(trace) * trace.ts_s,
        "settling_r_s": m.settling_time_s[0],
        "settling_l_s": m.settling_time_s[1],
        "settling_s": m.settling_s,
        "rms_speed_error": m.rms_speed_error,
        "final_pose_error_m": m.final_pose_error_m,
        "path_closure_m": m.path_closure_m,
        "inside_arena": inside_arena(trace, config.arena_m),
    }


def run_scenario(manifest: RunManifest) -> list[Path]:
    """Run a scenario and write its files; returns the written paths.

    Raises ``ValueError`` (incl. ``ConfigError``) for bad input and ``OSError``
    when the output directory cannot be written.
    """
    if manifest.scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {manifest.scenario!r} (choose from {', '.join(SCENARIOS)})")
    config = load_config(manifest.config_path)
    overrides = {}
    if manifest.seed is not None:
        overrides["rng_seed"] = manifest.seed
    if manifest.estimator is not None:
        overrides["estimator_mode"] = manifest.estimator
    config = dataclasses.replace(config, **overrides)
    plan = scenario_plan(manifest.scenario, config)

    out = Path(manifest.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    if manifest.scenario == "settling-compare":
        kf_cfg = dataclasses.replace(config, estimator_mode="kf")
        lpf_cfg = dataclasses.replace(config, estimator_mode="lpf")
        kf_trace = simulate_run(kf_cfg, plan)
        lpf_trace = simulate_run(lpf_cfg, plan)
        kf_m, lpf_m = compute_metrics(kf_trace), compute_metrics(lpf_trace)
        metrics = {
            "settling_kf_s": kf_m.settling_s,
            "settling_lpf_s": lpf_m.settling_s,
            "rms_speed_error_kf": kf_m.rms_speed_error,
            "rms_speed_error_lpf": lpf_m.rms_speed_error,
        }
        written = [
            write_trace_csv(kf_trace, out / "trace.csv"),
            write_trace_csv(lpf_trace, out / "trace_lpf.csv"),
            write_metrics(metrics, out / "metrics.txt"),
        ]
        written += write_plot_data(kf_trace, out, plan)
        return written

    trace = simulate_run(config, plan)
    written = [
        write_trace_csv(trace, out / "trace.csv"),
        write_metrics(_run_metrics(config, trace), out / "metrics.txt"),
    ]
    written += write_plot_data(trace, out, plan)
    return written
