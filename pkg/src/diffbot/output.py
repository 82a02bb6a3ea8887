"""Trace, metrics and plot-data writers.

All numbers are written with fixed formats so reruns are byte-identical.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .simulation import SimTrace, TrajectoryPlan, reference_path

TRACE_COLUMNS = (
    "t", "ref_wr", "ref_wl", "true_wr", "true_wl", "meas_wr", "meas_wl",
    "est_wr", "est_wl", "pwm_r", "pwm_l", "x", "y", "phi",
)


def _fmt(x: float) -> str:
    s = f"{x:.9g}"
    return "0" if s == "-0" else s


def trace_rows(trace: SimTrace) -> np.ndarray:
    return np.column_stack(
        (trace.t, trace.ref, trace.true, trace.meas, trace.est, trace.pwm, trace.pose)
    )


def write_trace_csv(trace: SimTrace, path: Path) -> Path:
    rows = trace_rows(trace)
    lines = [",".join(TRACE_COLUMNS)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows.tolist())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def format_metric(value) -> str:
    if value is None:
        return "absent"
    if isinstance(value, bool):
        value = float(value)
    if isinstance(value, float) and math.isnan(value):
        return "absent"
    return f"{value:.6f}"


def write_metrics(metrics: dict[str, object], path: Path) -> Path:
    """``name=value`` per line in insertion order."""
    text = "".join(f"{k}={format_metric(v)}\n" for k, v in metrics.items())
    path.write_text(text, encoding="utf-8")
    return path


def _write_blocks(path: Path, blocks) -> Path:
    # gnuplot data sets separated by two blank lines: plot 'f' index 0, 'f' index 1
    parts = []
    for block in blocks:
        parts.append("\n".join(f"{_fmt(a)} {_fmt(b)}" for a, b in block))
    path.write_text("\n\n\n".join(parts) + "\n", encoding="utf-8")
    return path


def write_plot_data(trace: SimTrace, out_dir: Path, plan: TrajectoryPlan | None = None) -> list[Path]:
    """speed_r.dat / speed_l.dat (index 0: reference, index 1: estimate vs time)
    and path.dat (index 0: reference path, index 1: true path)."""
    written = []
    for j, wheel in enumerate(("r", "l")):
        ref = zip(trace.t.tolist(), trace.ref[:, j].tolist())
        est = zip(trace.t.tolist(), trace.est[:, j].tolist())
        written.append(_write_blocks(out_dir / f"speed_{wheel}.dat", (ref, est)))
    plan = plan or trace.plan
    ideal = reference_path(plan, trace.ts_s)[:, :2] if plan is not None else np.empty((0, 2))
    written.append(_write_blocks(out_dir / "path.dat", (ideal.tolist(), trace.pose[:, :2].tolist())))
    return written
