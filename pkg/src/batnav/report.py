"""CSV, text and SVG emitters for benchmark tables and mission traces.

Floats are written with ``repr`` so every value parses back bit-for-bit.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from batnav.benchmarks import TrialStatistics, get_function
from batnav.environment import EnvironmentSpec
from batnav.perception import bits_to_str, str_to_bits
from batnav.planner import CycleRecord, MissionTrace, RunsResult

ALGO_LABELS = {"BA": "Standard BA", "MFBA": "MFBA"}
FITNESS_ROWS = (
    ("minimum", "minimum"),
    ("maximum", "maximum"),
    ("Standard deviation", "standard_deviation"),
    ("mean", "mean"),
)


def fmt(value: Optional[float]) -> str:
    if value is None:
        return ""
    return repr(float(value))


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# --- benchmark tables -------------------------------------------------------

BENCH_HEADER = ("function", "algorithm", "best", "worst", "mean", "sd", "significant")


def bench_csv(rows: Sequence[TrialStatistics]) -> str:
    return _csv_text(
        BENCH_HEADER,
        [
            (get_function(s.function).label, s.algorithm, fmt(s.best), fmt(s.worst), fmt(s.mean),
             fmt(s.standard_deviation), s.significance_mark)
            for s in rows
        ],
    )


def bench_text(rows: Sequence[TrialStatistics]) -> str:
    lines = [f"{'Fun':<5}{'Alg.':<6}{'Best':>14}{'Worst':>14}{'Mean':>14}{'SD':>14}  significant"]
    for s in rows:
        fn = get_function(s.function)
        lines.append(
            f"{fn.label:<5}{s.algorithm:<6}{s.best:>14.4e}{s.worst:>14.4e}{s.mean:>14.4e}"
            f"{s.standard_deviation:>14.4e}  {s.significance_mark}"
        )
    n = rows[0].run_count if rows else 0
    lines.append(f"({n} runs per row; '+' MFBA better, '-' tie, '.' MFBA worse)")
    return "\n".join(lines) + "\n"


# --- mission traces ---------------------------------------------------------


def trace_header(n_obstacles: int) -> List[str]:
    header = ["cycle", "time_s", "x_m", "y_m", "mode", "sensory_vector", "escape_bearing_deg"]
    for k in range(1, n_obstacles + 1):
        header += [f"obs{k}_x_m", f"obs{k}_y_m"]
    return header


def trace_csv(trace: MissionTrace) -> str:
    n_obs = len(trace.records[0].obstacles) if trace.records else 0
    rows = []
    for r in trace.records:
        row = [str(r.cycle), fmt(r.time), fmt(r.position[0]), fmt(r.position[1]), r.mode,
               bits_to_str(r.sensory_vector), fmt(r.escape_bearing)]
        for ox, oy in r.obstacles:
            row += [fmt(ox), fmt(oy)]
        rows.append(row)
    return _csv_text(trace_header(n_obs), rows)


def parse_trace_csv(text: str) -> List[CycleRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    n_obs = (len(header) - 7) // 2
    if header != trace_header(n_obs):
        raise ValueError(f"unexpected trace header {header}")
    records = []
    for row in reader:
        obstacles = tuple(
            (float(row[7 + 2 * k]), float(row[8 + 2 * k])) for k in range(n_obs)
        )
        records.append(
            CycleRecord(
                cycle=int(row[0]),
                time=float(row[1]),
                position=(float(row[2]), float(row[3])),
                mode=row[4],
                sensory_vector=str_to_bits(row[5]),
                escape_bearing=float(row[6]) if row[6] else None,
                obstacles=obstacles,
            )
        )
    return records


def read_trace_csv(path) -> List[CycleRecord]:
    return parse_trace_csv(Path(path).read_text(encoding="utf-8"))


# --- mission summaries ------------------------------------------------------

SUMMARY_HEADER = ("run", "seed", "path_length_m", "cycles", "collision", "reached", "fitness")


def summary_csv(result: RunsResult) -> str:
    rows = []
    for k, tr in enumerate(result.traces, 1):
        fitness = tr.run_fitness(result.epsilon) if tr.succeeded else None
        rows.append((str(k), str(tr.seed), fmt(tr.path_length), str(tr.cycle_count),
                     str(tr.collision).lower(), str(tr.reached).lower(), fmt(fitness)))
    stats = result.fitness_statistics
    for label, attr in FITNESS_ROWS:
        rows.append((label, "", "", "", "", "", _fmt_stat(getattr(stats, attr))))
    return _csv_text(SUMMARY_HEADER, rows)


def _fmt_stat(value: float) -> str:
    return "" if math.isnan(value) else fmt(value)


def summary_text(result: RunsResult, algorithm: str) -> str:
    lines = [f"{ALGO_LABELS.get(algorithm, algorithm)}: {len(result.traces)} runs"]
    for k, tr in enumerate(result.traces, 1):
        status = "collision" if tr.collision else ("reached" if tr.reached else "timeout")
        lines.append(f"  run {k:2d} seed {tr.seed:<6d} length {tr.path_length:9.4f} m  "
                     f"cycles {tr.cycle_count:4d}  {status}")
    if result.best is not None:
        k = result.traces.index(result.best) + 1
        lines.append(f"  best: run {k} length {result.best.path_length:.4f} m")
    else:
        lines.append("  best: none (no run reached the goal collision-free)")
    stats = result.fitness_statistics
    for label, attr in FITNESS_ROWS:
        value = getattr(stats, attr)
        lines.append(f"  fitness {label:<19} {'n/a' if math.isnan(value) else format(value, '.10g')}")
    return "\n".join(lines) + "\n"


def compare_csv(results: Dict[str, RunsResult]) -> str:
    algos = list(results)
    header = ["Fitness"] + [ALGO_LABELS.get(a, a) for a in algos]
    rows = []
    for label, attr in FITNESS_ROWS:
        rows.append([label] + [_fmt_stat(getattr(results[a].fitness_statistics, attr)) for a in algos])
    rows.append(["best path length"] + [fmt(results[a].best.path_length) if results[a].best else "" for a in algos])
    rows.append(["successful runs"] + [str(results[a].fitness_statistics.count) for a in algos])
    return _csv_text(header, rows)


def compare_text(results: Dict[str, RunsResult]) -> str:
    algos = list(results)
    lines = [f"{'Fitness':<20}" + "".join(f"{ALGO_LABELS.get(a, a):>18}" for a in algos)]
    for label, attr in FITNESS_ROWS:
        cells = []
        for a in algos:
            v = getattr(results[a].fitness_statistics, attr)
            cells.append(f"{'n/a' if math.isnan(v) else format(v, '.10g'):>18}")
        lines.append(f"{label:<20}" + "".join(cells))
    cells = [f"{results[a].best.path_length:>18.4f}" if results[a].best else f"{'n/a':>18}" for a in algos]
    lines.append(f"{'best path length':<20}" + "".join(cells))
    return "\n".join(lines) + "\n"


# --- SVG --------------------------------------------------------------------


def path_svg(trace: MissionTrace, env: EnvironmentSpec, sensing_range: float, snapshots: int = 4) -> str:
    """Static plot: workspace, obstacle tracks and snapshots, robot path."""
    scale = 50.0
    margin = 40.0
    b = env.bounds
    width = (b.x_max - b.x_min) * scale + 2 * margin
    height = (b.y_max - b.y_min) * scale + 2 * margin

    def px(x):
        return f"{margin + (x - b.x_min) * scale:.2f}"

    def py(y):
        return f"{margin + (b.y_max - y) * scale:.2f}"

    def r_px(r):
        return f"{r * scale:.2f}"

    out = [
        f"<svg xmlns='http://www.w3.org/2000/svg' width='{width:.0f}' height='{height:.0f}' "
        f"viewBox='0 0 {width:.0f} {height:.0f}'>",
        "<rect x='0' y='0' width='100%' height='100%' fill='#ffffff' />",
        "<style>text{font-family:monospace;font-size:11px;fill:#111827;}</style>",
        f"<rect x='{px(b.x_min)}' y='{py(b.y_max)}' width='{r_px(b.x_max - b.x_min)}' "
        f"height='{r_px(b.y_max - b.y_min)}' fill='none' stroke='#9ca3af' />",
    ]
    records = trace.records
    n = len(records)
    picks = sorted({round(i * (n - 1) / max(snapshots - 1, 1)) for i in range(snapshots)}) if n else []

    for k in range(len(env.obstacles)):
        xs = [r.obstacles[k] for r in records]
        pts = " ".join(f"{px(x)},{py(y)}" for x, y in xs)
        out.append(f"<polyline points='{pts}' fill='none' stroke='#dc2626' stroke-dasharray='3 3' />")
        for i in picks:
            x, y = records[i].obstacles[k]
            out.append(f"<circle cx='{px(x)}' cy='{py(y)}' r='{r_px(env.obstacles[k].radius)}' "
                       f"fill='none' stroke='#111827' />")
        x0, y0 = records[0].obstacles[k]
        out.append(f"<text x='{px(x0)}' y='{py(y0)}' dx='6' dy='-6'>ob{k + 1}</text>")

    # an obstacle is sensed once its edge is within SR of the inflated robot point
    for i in picks:
        x, y = records[i].position
        out.append(f"<circle cx='{px(x)}' cy='{py(y)}' r='{r_px(sensing_range + env.robot_radius)}' "
                   f"fill='none' stroke='#c026d3' stroke-width='0.8' />")
        out.append(f"<text x='{px(x)}' y='{py(y)}' dx='4' dy='14'>t={records[i].time:g}</text>")

    pts = " ".join(f"{px(x)},{py(y)}" for x, y in trace.positions)
    out.append(f"<polyline points='{pts}' fill='none' stroke='#2563eb' stroke-width='1.5' />")
    for r in records:
        color = "#16a34a" if r.mode == "Navigate" else "#f59e0b"
        out.append(f"<circle cx='{px(r.position[0])}' cy='{py(r.position[1])}' r='2.2' fill='{color}' />")

    sx, sy = env.start
    gx, gy = env.goal
    out.append(f"<rect x='{float(px(sx)) - 5:.2f}' y='{float(py(sy)) - 5:.2f}' width='10' height='10' fill='#111827' />")
    out.append(f"<text x='{px(sx)}' y='{py(sy)}' dx='8' dy='-8'>SP</text>")
    out.append(f"<circle cx='{px(gx)}' cy='{py(gy)}' r='6' fill='none' stroke='#16a34a' stroke-width='2' />")
    out.append(f"<text x='{px(gx)}' y='{py(gy)}' dx='8' dy='-8'>GP</text>")
    status = "collision" if trace.collision else ("reached" if trace.reached else "timeout")
    out.append(f"<text x='{margin:.0f}' y='20'>{trace.algorithm} seed {trace.seed}: "
               f"length {trace.path_length:.4f} m, {status}; green = Navigate, amber = Avoid</text>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
