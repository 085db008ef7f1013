"""Parameter sweeps with per-row child seeds."""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import ValidationError
from .network import CouplingKind, NetworkSpec, NeuronKind, modulate, with_lambda
from .observables import MeasurementReport
from .sampler import SamplerConfig, derive_seed, run_simulation

PARAMETERS = ("k", "lambda", "eps_inh_k")
CSV_COLUMNS = ("parameter_value", "activity_mean", "activity_err", "kink_count_mean", "acceptance_l0")


def grid(start: float, stop: float, steps: int) -> list[float]:
    if steps < 1:
        raise ValidationError("grid needs at least one step")
    return [float(v) for v in np.linspace(start, stop, steps)]


def apply_parameter(net: NetworkSpec, parameter: str, value: float) -> NetworkSpec:
    if parameter == "k":
        return modulate(net, value)
    if parameter == "eps_inh_k":
        return modulate(net, value, kinds=[CouplingKind.INHIBITORY])
    if parameter == "lambda":
        if not value > 0:
            raise ValidationError(f"lambda must be positive, got {value}")
        return with_lambda(net, value)
    raise ValidationError(f"unknown sweep parameter {parameter!r}; choose from {PARAMETERS}")


@dataclass(frozen=True)
class SweepPlan:
    parameter: str
    values: tuple
    base_network: NetworkSpec
    sampler: SamplerConfig
    target_neuron: str

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.parameter not in PARAMETERS:
            raise ValidationError(f"unknown sweep parameter {self.parameter!r}; choose from {PARAMETERS}")
        if not self.values or not all(math.isfinite(v) for v in self.values):
            raise ValidationError("sweep values must be a non-empty list of finite numbers")
        try:
            target = self.base_network.neuron(self.target_neuron)
        except KeyError:
            raise ValidationError(f"target neuron {self.target_neuron!r} not in network") from None
        if target.kind is not NeuronKind.SIMULATED:
            raise ValidationError(f"target neuron {self.target_neuron!r} is not simulated")

    def row_network(self, index: int) -> NetworkSpec:
        return apply_parameter(self.base_network, self.parameter, self.values[index])

    def row_sampler(self, index: int) -> SamplerConfig:
        return replace(self.sampler, rng_seed=derive_seed(self.sampler.rng_seed, index))


@dataclass(frozen=True)
class SweepRow:
    parameter_value: float
    activity_mean: float
    activity_err: float
    kink_count_mean: float
    acceptance_l0: float


def _run_row(args):
    plan, index = args
    return run_simulation(plan.row_network(index), plan.row_sampler(index))


def run_sweep(plan: SweepPlan, n_jobs: int = 1) -> tuple[list[SweepRow], list[MeasurementReport]]:
    """Simulate every plan value; rows come back in plan order."""
    jobs = [(plan, i) for i in range(len(plan.values))]
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            reports = list(pool.map(_run_row, jobs))
    else:
        reports = [_run_row(j) for j in jobs]
    rows = []
    for value, rep in zip(plan.values, reports):
        r = rep.neuron(plan.target_neuron)
        rows.append(SweepRow(value, r.activity_mean, r.activity_err, r.kink_count_mean,
                             rep.acceptance[0]))
    return rows, reports


def sweep_csv(rows, metadata: dict | None = None) -> str:
    buf = io.StringIO()
    if metadata:
        for key in sorted(metadata):
            buf.write(f"# {key}: {metadata[key]}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([repr(float(getattr(r, c))) for c in CSV_COLUMNS])
    return buf.getvalue()
