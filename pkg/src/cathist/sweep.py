"""Fidelity sweeps over an (epsilon, rho) grid.

Each grid cell runs the mechanism `repetitions` times against the same input
column and reports mean/stddev fidelity plus mean injected and surviving bin
counts. Per-repetition seeds are derived from (base_seed, epsilon index, rho
index, repetition index), so every cell is reproducible in isolation and the
CSV is byte-identical no matter how many workers ran it or in what order.
"""

from __future__ import annotations

import csv
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .core import DomainSpec, Histogram, PrivacyParams
from .domain import DomainSampler, load_domain
from .ingest import ColumnSelector, read_histogram
from .mechanism import CatHistConfig, TrialsConvention, cat_hist
from .metrics import fidelity
from .numerics import derive_seed, threshold_defined

SWEEP_CSV_HEADER = (
    "epsilon", "rho", "mean_f", "stddev_f", "mean_injected",
    "mean_surviving", "repetitions", "status",
)

DEFAULT_EPSILONS = (0.01, 0.1, 1.0)
DEFAULT_RHOS = (0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass(frozen=True)
class SweepConfig:
    column: ColumnSelector
    domain: DomainSpec
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    rhos: tuple[float, ...] = DEFAULT_RHOS
    repetitions: int = 100
    base_seed: int = 0
    trials: TrialsConvention = TrialsConvention.FULL_N
    allow_out_of_domain_active: bool = False
    drop_values: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")
        if not self.epsilons or not self.rhos:
            raise ValueError("epsilon and rho grids must be non-empty")


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    rho: float
    mean_f: float | None
    stddev_f: float | None
    mean_injected: float | None
    mean_surviving: float | None
    repetitions: int
    status: str  # "ok" or "invalid"


@dataclass(frozen=True)
class _CellTask:
    hist: Histogram
    domain: DomainSpec
    epsilon: float
    rho: float
    eps_index: int
    rho_index: int
    repetitions: int
    base_seed: int
    trials: TrialsConvention
    allow_out_of_domain_active: bool


def _run_cell(task: _CellTask, sampler: DomainSampler | None = None) -> SweepRow:
    if sampler is None:
        sampler = load_domain(task.domain)
    if not threshold_defined(task.rho, sampler.size):
        return SweepRow(task.epsilon, task.rho, None, None, None, None, task.repetitions, "invalid")
    fs = []
    injected = []
    surviving = []
    privacy = PrivacyParams(task.epsilon, task.rho)
    for rep in range(task.repetitions):
        seed = derive_seed(task.base_seed, task.eps_index, task.rho_index, rep)
        config = CatHistConfig(
            privacy=privacy,
            domain=task.domain,
            seed=seed,
            trials=task.trials,
            allow_out_of_domain_active=task.allow_out_of_domain_active,
        )
        noisy = cat_hist(config, task.hist, sampler=sampler)
        fs.append(fidelity(task.hist, noisy).value)
        injected.append(len(noisy.injected_bins()))
        surviving.append(len(noisy.active_bins()))
    return SweepRow(
        epsilon=task.epsilon,
        rho=task.rho,
        mean_f=statistics.fmean(fs),
        stddev_f=statistics.pstdev(fs),
        mean_injected=statistics.fmean(injected),
        mean_surviving=statistics.fmean(surviving),
        repetitions=task.repetitions,
        status="ok",
    )


def run_sweep(config: SweepConfig, jobs: int = 1) -> list[SweepRow]:
    """Run the full grid and return rows ordered by (epsilon, rho).

    jobs > 1 distributes cells over a process pool; results are identical to
    the serial run.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    hist = read_histogram(config.column, config.drop_values)
    tasks = [
        _CellTask(
            hist=hist,
            domain=config.domain,
            epsilon=epsilon,
            rho=rho,
            eps_index=ei,
            rho_index=ri,
            repetitions=config.repetitions,
            base_seed=config.base_seed,
            trials=config.trials,
            allow_out_of_domain_active=config.allow_out_of_domain_active,
        )
        for ei, epsilon in enumerate(config.epsilons)
        for ri, rho in enumerate(config.rhos)
    ]
    if jobs == 1:
        sampler = load_domain(config.domain)
        rows = [_run_cell(task, sampler) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_cell, tasks))
    return sorted(rows, key=lambda row: (row.epsilon, row.rho))


def write_sweep_csv(rows: list[SweepRow], path: str | Path) -> None:
    """Plain CSV, one row per grid cell, full-precision floats, no comments."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SWEEP_CSV_HEADER)
        for row in rows:
            writer.writerow((
                repr(float(row.epsilon)),
                repr(float(row.rho)),
                "" if row.mean_f is None else repr(row.mean_f),
                "" if row.stddev_f is None else repr(row.stddev_f),
                "" if row.mean_injected is None else repr(row.mean_injected),
                "" if row.mean_surviving is None else repr(row.mean_surviving),
                str(row.repetitions),
                row.status,
            ))
