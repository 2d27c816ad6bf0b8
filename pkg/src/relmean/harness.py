"""Monte Carlo certification of the accuracy guarantee.

A coverage run replays an estimator on many independent replicate streams
of one distribution and counts how often the estimate misses the target
window |estimate - mean| <= epsilon * mean, judged against the exact mean
from the source's facts.  Baseline estimators run on the same total draw
budget so sample-efficiency differences are visible at equal cost.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, fields

import numpy as np

from .estimator import ApproxSpec, Mode, build_plan, estimate_mean, median_of_means
from .sources import SampleSource

__all__ = [
    "EstimatorKind",
    "CoverageConfig",
    "CoverageReport",
    "CSV_HEADER",
    "run_coverage",
    "compare_estimators",
    "write_csv",
]


class EstimatorKind(enum.Enum):
    TWO_STAGE = "twostage"
    MEDIAN_OF_MEANS_ONLY = "mom"
    NAIVE_MEAN = "naive"


@dataclass(frozen=True)
class CoverageConfig:
    spec: ApproxSpec
    dist: object
    replications: int
    seed: int
    mode: Mode = Mode.STRICT
    estimator: EstimatorKind = EstimatorKind.TWO_STAGE

    def __post_init__(self) -> None:
        if self.replications < 100:
            raise ValueError("coverage needs at least 100 replications")


@dataclass(frozen=True)
class CoverageReport:
    """One coverage row; field order matches the CSV schema."""

    estimator: str
    distribution: str
    epsilon: float
    delta: float
    c: float
    mode: str
    R: int
    seed: int
    samples_per_run: int
    failures: int
    failure_rate: float
    binomial_3sigma: float
    mean_abs_rel_error: float


CSV_HEADER = (
    "estimator,distribution,epsilon,delta,c,mode,R,seed,samples_per_run,"
    "failures,failure_rate,binomial_3sigma,mean_abs_rel_error"
)


def _largest_odd_at_most(value: int) -> int:
    return value - 1 if value % 2 == 0 else value


def _mom_baseline_params(spec: ApproxSpec, budget: int) -> tuple[int, int]:
    """Group size and count for the median-of-means baseline at accuracy epsilon.

    Groups are sized for per-group failure 1/8; the group count spends as
    much of the budget as an odd multiple of the group size allows.
    """
    k = math.ceil(8.0 * spec.c * spec.c / (spec.epsilon * spec.epsilon))
    if budget < k:
        # budget smaller than one group: degrade to a plain mean of the budget
        return budget, 1
    return k, _largest_odd_at_most(budget // k)


def run_coverage(config: CoverageConfig) -> CoverageReport:
    """Replicate the configured estimator and tabulate its failure frequency.

    Failures are judged against the source's exact mean, never an estimate.
    Deterministic: replicate r always uses the stream (seed, replicate r).
    """
    spec = config.spec
    facts = config.dist.facts()
    if facts.c_bound > spec.c:
        raise ValueError(
            f"distribution c bound {facts.c_bound:.6g} exceeds spec c {spec.c:.6g}; "
            "the guarantee would be void"
        )
    plan = build_plan(spec, config.mode)
    budget = plan.k * plan.m + plan.n
    kind = config.estimator
    mom_k, mom_m = _mom_baseline_params(spec, budget)

    mu = facts.true_mean
    failures = 0
    abs_rel_errors = np.empty(config.replications)
    for r in range(config.replications):
        source = SampleSource(config.dist, config.seed, replicate_index=r)
        if kind is EstimatorKind.TWO_STAGE:
            value = estimate_mean(source, spec, config.mode).mu_hat
        elif kind is EstimatorKind.MEDIAN_OF_MEANS_ONLY:
            value = median_of_means(source, mom_k, mom_m)
        else:
            value = float(np.mean(source.take(budget)))
        rel_err = abs(value - mu) / mu
        abs_rel_errors[r] = rel_err
        if rel_err > spec.epsilon:
            failures += 1

    return CoverageReport(
        estimator=kind.value,
        distribution=config.dist.spec_string,
        epsilon=spec.epsilon,
        delta=spec.delta,
        c=spec.c,
        mode=config.mode.value,
        R=config.replications,
        seed=config.seed,
        samples_per_run=budget,
        failures=failures,
        failure_rate=failures / config.replications,
        binomial_3sigma=3.0 * math.sqrt(spec.delta * (1.0 - spec.delta) / config.replications),
        mean_abs_rel_error=float(abs_rel_errors.mean()),
    )


def compare_estimators(
    spec: ApproxSpec,
    dist,
    replications: int,
    seed: int,
    mode: Mode = Mode.STRICT,
) -> list[CoverageReport]:
    """One coverage report per estimator, all at the two-stage draw budget."""
    return [
        run_coverage(CoverageConfig(spec, dist, replications, seed, mode, kind))
        for kind in EstimatorKind
    ]


def _format_value(value) -> str:
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def write_csv(reports, path) -> None:
    """Emit coverage rows in the fixed schema; bit-stable for identical input.

    Floats carry 9 significant digits with `.` as the decimal separator;
    lines end with a bare newline.
    """
    rows = list(reports)
    with open(path, "w", encoding="ascii", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER.split(","))
        for report in rows:
            writer.writerow([_format_value(getattr(report, f.name)) for f in fields(CoverageReport)])
