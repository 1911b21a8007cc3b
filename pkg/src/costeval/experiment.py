"""Monte-Carlo harness: how well each metric's ranking tracks example-dependent cost.

For every cell of an (r_plus, r_C) grid the harness draws random datasets
and classifier outcomes under the churn cost model, computes the
example-dependent total classification cost of each outcome, and reports the
mean rank correlation between each metric's ordering of the outcomes and the
cost ordering.  All metrics see exactly the same draws within a cell, and
every random stream is derived from one master seed through named
SeedSequence spawn keys, so results are reproducible byte for byte
regardless of worker count or kernel choice.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from ._kernel import resolve_kernel
from .costs import ChurnScenario, tune_retention_cost
from .metrics import KINDS, descriptor_for, evaluate_counts, h_measure_from_mean
from .ranking import CorrelationScheme, correlate, rank_values
from .weighting import beta_from_moments, beta_pdf, gauss_legendre_unit

# Fixed default seed: runs without an explicit seed are reproducible, never
# seeded from entropy.
DEFAULT_SEED = 1729

# Default cost-share and class-ratio grid: near-boundary points plus a
# coarse interior sweep.
DEFAULT_GRID = (0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)

# "h_informed" is h_measure with a Beta prior moment-matched to the sample's
# empirical cost-share distribution; it exists only as a harness metric id.
HARNESS_EXTRA_METRICS = ("h_informed",)
HARNESS_METRICS = KINDS + HARNESS_EXTRA_METRICS

# wa, msu, and c_score are affine in the example-independent cost, so they
# induce one shared outcome ranking; the harness ranks that statistic once.
AFFINE_FAMILY = frozenset({"wa", "msu", "c_score"})

RNG_ALGORITHM = "philox4x64"
# SeedSequence spawn keys: (0,) samples revenues from the pool, (2,) draws a
# synthetic pool, (1, row, col, sample) drives one Monte-Carlo sample.
_STREAM_REVENUE_SAMPLE = 0
_STREAM_CELL = 1
_STREAM_SYNTHETIC_POOL = 2

_GAUSS_ORDER = 64
_C_CLAMP = 1e-6


@dataclass(frozen=True)
class SyntheticRevenues:
    """Lognormal stand-in revenue pool for runs without a revenue file."""

    n: int = 2000
    log_mean: float = 4.0
    log_sigma: float = 0.5

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("synthetic pool size must be positive")
        if not (math.isfinite(self.log_mean) and math.isfinite(self.log_sigma)):
            raise ValueError("lognormal parameters must be finite")
        if self.log_sigma <= 0:
            raise ValueError("log_sigma must be positive")


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one heatmap run."""

    n_tot: int = 400
    n_samples: int = 100
    p_eff: float = 0.25
    grid: tuple[float, ...] = DEFAULT_GRID
    metrics: tuple[str, ...] = KINDS
    correlation: CorrelationScheme = CorrelationScheme()
    seed: int = DEFAULT_SEED
    revenue_csv: str | None = None
    revenue_column: str = "MonthlyCharges"
    synthetic: SyntheticRevenues | None = None
    workers: int = 1
    kernel: str = "auto"

    def __post_init__(self) -> None:
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        object.__setattr__(self, "metrics", tuple(self.metrics))
        if self.n_tot < 2:
            raise ValueError("n_tot must be at least 2")
        if self.n_samples < 1:
            raise ValueError("n_samples must be at least 1")
        if not 0.0 < self.p_eff <= 1.0:
            raise ValueError(f"p_eff must lie in (0, 1], got {self.p_eff!r}")
        if not self.grid:
            raise ValueError("grid must contain at least one ratio")
        if any(not 0.0 < g < 1.0 for g in self.grid):
            raise ValueError("grid ratios must lie strictly inside (0, 1)")
        if len(set(self.grid)) != len(self.grid):
            raise ValueError("grid ratios must be distinct")
        if not self.metrics:
            raise ValueError("at least one metric is required")
        unknown = [m for m in self.metrics if m not in HARNESS_METRICS]
        if unknown:
            raise ValueError(f"unknown metrics: {unknown}")
        if len(set(self.metrics)) != len(self.metrics):
            raise ValueError("metric list contains duplicates")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.kernel not in ("auto", "numpy", "cython"):
            raise ValueError(f"kernel must be auto, numpy, or cython, got {self.kernel!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


@dataclass(frozen=True)
class LoadedRevenues:
    """Revenue values read from a CSV column plus the count of unusable cells."""

    values: np.ndarray
    skipped: int
    source: str
    column: str


def load_revenues(path: str | os.PathLike, column: str = "MonthlyCharges") -> LoadedRevenues:
    """Read positive revenues from one column of an RFC-4180 CSV with a header row.

    Blank, non-numeric, and non-positive cells are skipped and counted.
    """
    values: list[float] = []
    skipped = 0
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected a header row") from None
        try:
            index = header.index(column)
        except ValueError:
            raise ValueError(f"{path}: no column named {column!r} in header {header}") from None
        for row in reader:
            cell = row[index].strip() if index < len(row) else ""
            try:
                value = float(cell)
            except ValueError:
                skipped += 1
                continue
            if not (math.isfinite(value) and value > 0):
                skipped += 1
                continue
            values.append(value)
    if not values:
        raise ValueError(f"{path}: column {column!r} contains no usable revenues")
    return LoadedRevenues(
        values=np.asarray(values, dtype=np.float64),
        skipped=skipped,
        source=str(path),
        column=column,
    )


def synthetic_pool(spec: SyntheticRevenues, seed: int) -> np.ndarray:
    """Draw the synthetic revenue pool from its dedicated stream."""
    rng = _stream(seed, (_STREAM_SYNTHETIC_POOL,))
    return rng.lognormal(mean=spec.log_mean, sigma=spec.log_sigma, size=spec.n)


def sample_revenues(pool: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """Sample n revenues from the pool without position replacement."""
    pool = np.asarray(pool, dtype=np.float64)
    if pool.ndim != 1 or pool.size == 0:
        raise ValueError("pool must be a non-empty one-dimensional array")
    if not 0 < n <= pool.size:
        raise ValueError(f"cannot sample {n} revenues from a pool of {pool.size}")
    return pool[rng.permutation(pool.size)[:n]]


@dataclass(frozen=True)
class CMoments:
    """First two moments of the clamped per-example cost-share distribution."""

    mean: float
    variance: float
    clamped: int


def empirical_c_distribution(revenues: np.ndarray, scenario: ChurnScenario) -> CMoments:
    """Moments of the per-example cost share c_a = retention_cost / (revenue * p_eff).

    Shares are clamped into (0, 1) before the moments are taken; the clamp
    count is reported alongside.
    """
    revenues = np.asarray(revenues, dtype=np.float64)
    if revenues.ndim != 1 or revenues.size == 0:
        raise ValueError("need at least one revenue")
    c = scenario.retention_cost / (revenues * scenario.p_eff)
    clamped = int(np.count_nonzero((c < _C_CLAMP) | (c > 1.0 - _C_CLAMP)))
    c = np.clip(c, _C_CLAMP, 1.0 - _C_CLAMP)
    return CMoments(mean=float(c.mean()), variance=float(c.var()), clamped=clamped)


def _stream(seed: int, spawn_key: tuple[int, ...]) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=spawn_key)))


def _clamped_p(n_tot: int, r_plus: float) -> tuple[int, bool]:
    p = int(round(n_tot * r_plus))
    clamped = min(max(p, 1), n_tot - 1)
    return clamped, clamped != p


@dataclass(frozen=True)
class CellResult:
    """Per-cell mean correlations and bookkeeping counts."""

    row: int
    col: int
    r_c: float
    r_plus: float
    p: int
    p_clamped: bool
    mean_corr: dict[str, float]  # NaN when every sample's correlation was undefined
    undefined_corr: dict[str, int]
    dropped_pairs: dict[str, int]
    clamped_c: int


def run_cell(
    r_plus: float,
    r_c: float,
    config: ExperimentConfig,
    revenues: np.ndarray,
    row: int = 0,
    col: int = 0,
) -> CellResult:
    """Evaluate one grid cell: config.n_samples paired draws, all metrics at once.

    The sampled revenues are fixed for the whole experiment; the cell's cost
    model follows from r_c through the retention-cost tuning, and P from
    r_plus (rounded, clamped into [1, n_tot - 1]).
    """
    revenues = np.asarray(revenues, dtype=np.float64)
    n_tot = config.n_tot
    if revenues.shape != (n_tot,):
        raise ValueError(f"expected {n_tot} sampled revenues, got shape {revenues.shape}")
    p, p_clamped = _clamped_p(n_tot, r_plus)
    n = n_tot - p
    r_avg = float(revenues.mean())
    retention = tune_retention_cost(r_c, config.p_eff, r_avg)
    c_fp = retention
    c_fn = config.p_eff * r_avg - retention
    scenario = ChurnScenario(retention_cost=retention, p_eff=config.p_eff, revenues=tuple(revenues))
    # per-example deviation of the FN cost from its population average
    fn_deviation = config.p_eff * (revenues - r_avg)

    _, kernel_fn = resolve_kernel(config.kernel)
    sizes = np.arange(n_tot + 1, dtype=np.int64)
    needs_moments = any(m in ("ewa", "h_informed") for m in config.metrics)
    gl_nodes, gl_weights = gauss_legendre_unit(_GAUSS_ORDER)

    corr_sum = {m: 0.0 for m in config.metrics}
    corr_count = {m: 0 for m in config.metrics}
    undefined_corr = {m: 0 for m in config.metrics}
    dropped_pairs = {m: 0 for m in config.metrics}
    clamped_c = 0

    for s in range(config.n_samples):
        rng = _stream(config.seed, (_STREAM_CELL, row, col, s))
        positive_idx = rng.permutation(n_tot)[:p]
        is_positive = np.zeros(n_tot, dtype=bool)
        is_positive[positive_idx] = True
        u = rng.random((n_tot + 1, n_tot))

        tp_int, fn_dev_sum = kernel_fn(u, sizes, is_positive, fn_deviation)
        tp = tp_int.astype(np.float64)
        fn = p - tp
        fp = sizes.astype(np.float64) - tp
        tn = n - fp
        mean_cost = c_fn * fn + c_fp * fp
        tcc = mean_cost + fn_dev_sum

        tcc_full_ranks = rank_values(tcc, higher_is_better=False)
        affine_ranks = (
            rank_values(mean_cost, higher_is_better=False)
            if AFFINE_FAMILY.intersection(config.metrics)
            else None
        )

        if needs_moments:
            moments = empirical_c_distribution(revenues[positive_idx], scenario)
            clamped_c += moments.clamped

        for metric in config.metrics:
            if metric in AFFINE_FAMILY:
                corr = correlate(affine_ranks, tcc_full_ranks, config.correlation)
                if corr is None:
                    undefined_corr[metric] += 1
                else:
                    corr_sum[metric] += corr
                    corr_count[metric] += 1
                continue

            values = _metric_values(
                metric, tp, fn, fp, tn, c_fn, c_fp, moments if needs_moments else None,
                gl_nodes, gl_weights,
            )
            mask = np.isfinite(values)
            kept = int(mask.sum())
            dropped_pairs[metric] += values.size - kept
            if kept < 2:
                undefined_corr[metric] += 1
                continue
            higher = True if metric == "h_informed" else descriptor_for(metric).higher_is_better
            if mask.all():
                metric_ranks = rank_values(values, higher_is_better=higher)
                reference = tcc_full_ranks
            else:
                metric_ranks = rank_values(values[mask], higher_is_better=higher)
                reference = rank_values(tcc[mask], higher_is_better=False)
            corr = correlate(metric_ranks, reference, config.correlation)
            if corr is None:
                undefined_corr[metric] += 1
            else:
                corr_sum[metric] += corr
                corr_count[metric] += 1

    mean_corr = {
        m: (corr_sum[m] / corr_count[m]) if corr_count[m] else math.nan for m in config.metrics
    }
    return CellResult(
        row=row,
        col=col,
        r_c=r_c,
        r_plus=r_plus,
        p=p,
        p_clamped=p_clamped,
        mean_corr=mean_corr,
        undefined_corr=undefined_corr,
        dropped_pairs=dropped_pairs,
        clamped_c=clamped_c,
    )


def _metric_values(
    metric: str,
    tp: np.ndarray,
    fn: np.ndarray,
    fp: np.ndarray,
    tn: np.ndarray,
    c_fn: float,
    c_fp: float,
    moments: CMoments | None,
    gl_nodes: np.ndarray,
    gl_weights: np.ndarray,
) -> np.ndarray:
    """Values of one metric over the outcome sweep; NaN marks undefined rows."""
    p = float(tp[0] + fn[0])
    n = float(tn[0] + fp[0])
    if metric == "h_measure":
        # uninformed Beta(2, 2) prior has mean 1/2
        return h_measure_from_mean(fn, fp, p, n, 0.5)
    if metric == "h_informed":
        return h_measure_from_mean(fn, fp, p, n, moments.mean)
    if metric == "ewa":
        return _ewa_values(tp, tn, p, n, moments, gl_nodes, gl_weights)
    return evaluate_counts(metric, tp, fn, fp, tn, c_fn=c_fn, c_fp=c_fp)


def _ewa_values(
    tp: np.ndarray,
    tn: np.ndarray,
    p: float,
    n: float,
    moments: CMoments,
    gl_nodes: np.ndarray,
    gl_weights: np.ndarray,
) -> np.ndarray:
    """EWA per outcome under the moment-matched weight distribution.

    The empirical distribution describes the cost share c; the WA weight is
    w = 1 - c, so the fitted Beta gets its parameters mirrored.  A degenerate
    (zero-variance or unmatchable) distribution falls back to the point
    evaluation WA(1 - mean).
    """

    params = None
    if moments.variance > 0.0:
        try:
            params = beta_from_moments(moments.mean, moments.variance)
        except ValueError:
            params = None
    if params is None:
        w = 1.0 - moments.mean
        return ((w * tp + (1.0 - w) * tn) / (w * p + (1.0 - w) * n)).astype(np.float64)
    weight_dist = params.mirrored()
    density = beta_pdf(gl_nodes, weight_dist)
    coefficients = gl_weights * density
    wa_grid = (gl_nodes * tp[:, None] + (1.0 - gl_nodes) * tn[:, None]) / (
        gl_nodes * p + (1.0 - gl_nodes) * n
    )
    return wa_grid @ coefficients


@dataclass(frozen=True)
class HeatmapResult:
    """All per-metric correlation grids of one run plus shared metadata."""

    config: ExperimentConfig
    r_plus_axis: tuple[float, ...]
    r_c_axis: tuple[float, ...]
    grids: dict[str, np.ndarray]  # (len(r_c_axis), len(r_plus_axis)), NaN = blank
    undefined_corr: dict[str, np.ndarray]
    dropped_pairs: dict[str, np.ndarray]
    clamped_c: np.ndarray
    p_by_col: tuple[int, ...]
    p_clamped_cols: tuple[bool, ...]
    kernel: str
    revenue_info: dict


def _cell_task(args: tuple) -> CellResult:
    r_plus, r_c, config, revenues, row, col = args
    return run_cell(r_plus, r_c, config, revenues, row=row, col=col)


def resolve_revenue_pool(config: ExperimentConfig) -> tuple[np.ndarray, dict]:
    """The revenue pool a config describes, plus metadata about its origin."""
    if config.revenue_csv is not None:
        loaded = load_revenues(config.revenue_csv, config.revenue_column)
        info = {
            "source": loaded.source,
            "column": loaded.column,
            "skipped": loaded.skipped,
            "pool_size": int(loaded.values.size),
        }
        return loaded.values, info
    if config.synthetic is not None:
        pool = synthetic_pool(config.synthetic, config.seed)
        info = {
            "source": "synthetic-lognormal",
            "log_mean": config.synthetic.log_mean,
            "log_sigma": config.synthetic.log_sigma,
            "pool_size": int(pool.size),
        }
        return pool, info
    raise ValueError("config needs a revenue source: revenue_csv or synthetic")


def run_heatmap(config: ExperimentConfig, pool: np.ndarray | None = None) -> HeatmapResult:
    """Run the full grid and collect one correlation heatmap per metric.

    The same grid serves as both axes: rows are cost shares r_C, columns are
    class ratios r_plus.  Revenues are sampled from the pool once, before
    any cell runs, so every cell sees the same dataset revenues.
    """
    if pool is not None:
        pool = np.asarray(pool, dtype=np.float64)
        if pool.ndim != 1 or pool.size == 0:
            raise ValueError("pool must be a non-empty one-dimensional array")
        if np.any(~np.isfinite(pool)) or np.any(pool <= 0):
            raise ValueError("pool revenues must be positive and finite")
        revenue_info: dict = {"source": "caller-supplied", "pool_size": int(pool.size)}
    else:
        pool, revenue_info = resolve_revenue_pool(config)
    if pool.size < config.n_tot:
        raise ValueError(
            f"revenue pool has {pool.size} values but n_tot={config.n_tot} are needed"
        )
    revenues = sample_revenues(
        pool, config.n_tot, _stream(config.seed, (_STREAM_REVENUE_SAMPLE,))
    )
    revenue_info = dict(revenue_info, r_avg=float(revenues.mean()))

    kernel_name, _ = resolve_kernel(config.kernel)
    axis = config.grid
    tasks = [
        (r_plus, r_c, config, revenues, row, col)
        for row, r_c in enumerate(axis)
        for col, r_plus in enumerate(axis)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool_exec:
            results = list(pool_exec.map(_cell_task, tasks))
    else:
        results = [_cell_task(t) for t in tasks]

    shape = (len(axis), len(axis))
    grids = {m: np.full(shape, np.nan) for m in config.metrics}
    undefined = {m: np.zeros(shape, dtype=np.int64) for m in config.metrics}
    dropped = {m: np.zeros(shape, dtype=np.int64) for m in config.metrics}
    clamped = np.zeros(shape, dtype=np.int64)
    p_by_col = [0] * len(axis)
    p_clamped_cols = [False] * len(axis)
    for cell in results:
        for metric in config.metrics:
            grids[metric][cell.row, cell.col] = cell.mean_corr[metric]
            undefined[metric][cell.row, cell.col] = cell.undefined_corr[metric]
            dropped[metric][cell.row, cell.col] = cell.dropped_pairs[metric]
        clamped[cell.row, cell.col] = cell.clamped_c
        p_by_col[cell.col] = cell.p
        p_clamped_cols[cell.col] = cell.p_clamped
    return HeatmapResult(
        config=config,
        r_plus_axis=axis,
        r_c_axis=axis,
        grids=grids,
        undefined_corr=undefined,
        dropped_pairs=dropped,
        clamped_c=clamped,
        p_by_col=tuple(p_by_col),
        p_clamped_cols=tuple(p_clamped_cols),
        kernel=kernel_name,
        revenue_info=revenue_info,
    )


def grid_csv_text(result: HeatmapResult, metric: str) -> str:
    """One metric's grid as CSV: r_plus axis across, r_C axis down, 6-decimal cells."""
    grid = result.grids[metric]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["r_c\\r_plus"] + [repr(v) for v in result.r_plus_axis])
    for row, r_c in enumerate(result.r_c_axis):
        cells = [
            "" if math.isnan(grid[row, col]) else f"{grid[row, col]:.6f}"
            for col in range(len(result.r_plus_axis))
        ]
        writer.writerow([repr(r_c)] + cells)
    return buffer.getvalue()


def grid_metadata(result: HeatmapResult, metric: str) -> dict:
    """Companion metadata for one metric's grid."""
    config = result.config
    higher = True if metric == "h_informed" else descriptor_for(metric).higher_is_better
    return {
        "metric": metric,
        "higher_is_better": higher,
        "seed": config.seed,
        "rng": {
            "algorithm": RNG_ALGORITHM,
            "streams": {
                "revenue_sample": [_STREAM_REVENUE_SAMPLE],
                "cell_sample": [_STREAM_CELL, "row", "col", "sample"],
                "synthetic_pool": [_STREAM_SYNTHETIC_POOL],
            },
        },
        "kernel": result.kernel,
        "correlation": {"kind": config.correlation.kind, "n0": config.correlation.n0},
        "config": {
            "n_tot": config.n_tot,
            "n_samples": config.n_samples,
            "p_eff": config.p_eff,
            "grid": list(config.grid),
            "metrics": list(config.metrics),
            "workers": config.workers,
        },
        "revenues": result.revenue_info,
        "axes": {
            "r_plus": list(result.r_plus_axis),
            "r_c": list(result.r_c_axis),
            "p_by_r_plus": list(result.p_by_col),
            "p_clamped": list(result.p_clamped_cols),
        },
        "undefined_correlations": result.undefined_corr[metric].tolist(),
        "dropped_pairs": result.dropped_pairs[metric].tolist(),
        "clamped_c": result.clamped_c.tolist(),
    }


def write_heatmap_outputs(result: HeatmapResult, out_dir: str | os.PathLike) -> list[str]:
    """Write <metric>.csv and <metric>.json per metric; returns the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    written: list[str] = []
    for metric in result.config.metrics:
        csv_path = os.path.join(out_dir, f"{metric}.csv")
        with open(csv_path, "w", newline="", encoding="utf-8") as handle:
            handle.write(grid_csv_text(result, metric))
        json_path = os.path.join(out_dir, f"{metric}.json")
        with open(json_path, "w", encoding="utf-8") as handle:
            json.dump(grid_metadata(result, metric), handle, sort_keys=True, indent=2)
            handle.write("\n")
        written.extend([csv_path, json_path])
    return written


def render_text(result: HeatmapResult, metrics: tuple[str, ...] | None = None) -> str:
    """Compact terminal view: correlations scaled by 10 and rounded to integers."""
    metrics = metrics or result.config.metrics
    lines: list[str] = []
    col_width = max(len(repr(v)) for v in result.r_plus_axis)
    col_width = max(col_width, 3)
    for metric in metrics:
        grid = result.grids[metric]
        lines.append(f"{metric}  (rows: r_C, cols: r_plus; mean correlation x 10)")
        header = " " * 8 + " ".join(f"{repr(v):>{col_width}}" for v in result.r_plus_axis)
        lines.append(header)
        for row, r_c in enumerate(result.r_c_axis):
            cells = []
            for col in range(len(result.r_plus_axis)):
                value = grid[row, col]
                cells.append(" " * col_width if math.isnan(value) else f"{int(np.rint(value * 10)):>{col_width}}")
            lines.append(f"{repr(r_c):>7} " + " ".join(cells))
        lines.append("")
    return "\n".join(lines)


def parse_config_file(path: str | os.PathLike) -> dict[str, str]:
    """Parse a flat key = value config file; '#' starts a comment."""
    mapping: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected 'key = value', got {raw.rstrip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if not key or not value:
                raise ValueError(f"{path}:{line_no}: expected 'key = value', got {raw.rstrip()!r}")
            if key in mapping:
                raise ValueError(f"{path}:{line_no}: duplicate key {key!r}")
            mapping[key] = value
    return mapping


_CONFIG_KEYS = (
    "n_tot",
    "n_samples",
    "p_eff",
    "grid",
    "metrics",
    "correlation",
    "n0",
    "seed",
    "revenue_csv",
    "revenue_column",
    "workers",
    "kernel",
)


def config_from_mapping(
    mapping: dict[str, str], base: ExperimentConfig | None = None
) -> ExperimentConfig:
    """Build a config from string key/values (config file or CLI), over a base."""
    config = base if base is not None else ExperimentConfig()
    unknown = [k for k in mapping if k not in _CONFIG_KEYS]
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)} (known: {list(_CONFIG_KEYS)})")
    updates: dict = {}
    if "n_tot" in mapping:
        updates["n_tot"] = int(mapping["n_tot"])
    if "n_samples" in mapping:
        updates["n_samples"] = int(mapping["n_samples"])
    if "p_eff" in mapping:
        updates["p_eff"] = float(mapping["p_eff"])
    if "grid" in mapping:
        updates["grid"] = tuple(float(v) for v in mapping["grid"].split(",") if v.strip())
    if "metrics" in mapping:
        updates["metrics"] = tuple(v.strip() for v in mapping["metrics"].split(",") if v.strip())
    if "seed" in mapping:
        updates["seed"] = int(mapping["seed"])
    if "revenue_csv" in mapping:
        updates["revenue_csv"] = mapping["revenue_csv"]
    if "revenue_column" in mapping:
        updates["revenue_column"] = mapping["revenue_column"]
    if "workers" in mapping:
        updates["workers"] = int(mapping["workers"])
    if "kernel" in mapping:
        updates["kernel"] = mapping["kernel"]
    if "correlation" in mapping or "n0" in mapping:
        kind = mapping.get("correlation", config.correlation.kind)
        n0 = float(mapping.get("n0", config.correlation.n0))
        updates["correlation"] = CorrelationScheme(kind=kind, n0=n0)
    return replace(config, **updates)
