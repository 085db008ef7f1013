"""Multilevel Metropolis sampling of network paths with weight exp(-S)."""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import asdict, dataclass, replace

import numpy as np

from . import _kernels
from .action import NetworkConfiguration
from .exceptions import TuningWarning, ValidationError
from .lattice import build_kink_train
from .network import (CompiledNetwork, KinkTrainSpec, NetworkSpec, NeuronKind, SCHEMA_VERSION,
                      compile_network)
from .observables import (DEFAULT_HYSTERESIS, MeasurementReport, NeuronReport, binned_error,
                          count_kinks, vacuum_baseline)

log = logging.getLogger(__name__)

RNG_NAME = "numpy.random.PCG64"
HOT_RANGE = 1.5
MAX_BINS = 50
ACCEPTANCE_BAND = (0.2, 0.8)


@dataclass(frozen=True)
class SamplerConfig:
    thermalization_sweeps: int = 200_000
    measurement_sweeps: int = 100_000
    measure_every: int = 10
    proposal_width: float = 0.08
    n_levels: int = 3
    level_width_factor: float = 0.5
    rng_seed: int = 0
    preset: str = "desk"

    def __post_init__(self):
        if self.thermalization_sweeps < 0:
            raise ValidationError("thermalization_sweeps must be >= 0")
        if self.measurement_sweeps < 1:
            raise ValidationError("measurement_sweeps must be >= 1")
        if self.measure_every < 1:
            raise ValidationError("measure_every must be >= 1")
        if not self.proposal_width > 0:
            raise ValidationError("proposal_width must be positive")
        if self.n_levels < 1:
            raise ValidationError("n_levels must be >= 1")
        if not self.level_width_factor > 0:
            raise ValidationError("level_width_factor must be positive")
        if not 0 <= self.rng_seed < 2**64:
            raise ValidationError("rng_seed must be an unsigned 64-bit integer")

    @classmethod
    def from_preset(cls, name: str = "desk", **overrides) -> "SamplerConfig":
        try:
            base = PRESETS[name]
        except KeyError:
            raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
        return replace(base, **overrides)

    @property
    def level_widths(self) -> np.ndarray:
        return self.proposal_width * self.level_width_factor ** np.arange(self.n_levels)

    def check_lattice(self, n_slices: int):
        if 2 ** (self.n_levels - 1) > n_slices / 4:
            raise ValidationError(
                f"{self.n_levels} levels need blocks of {2 ** (self.n_levels - 1)} slices, "
                f"more than N_t/4 = {n_slices / 4:g}")


PRESETS = {
    "desk": SamplerConfig(preset="desk"),
    "paper": SamplerConfig(thermalization_sweeps=2_000_000, measurement_sweeps=1_000_000,
                           preset="paper"),
}


@dataclass
class SamplerState:
    configuration: NetworkConfiguration
    rng: np.random.Generator
    accepted: np.ndarray
    proposed: np.ndarray
    sweep_index: int = 0

    @property
    def acceptance(self) -> np.ndarray:
        return self.accepted / np.maximum(self.proposed, 1)


def derive_seed(master: int, index: int) -> int:
    """Child seed for the ``index``-th independent run under ``master``."""
    return int(np.random.SeedSequence([int(master), int(index)]).generate_state(1, np.uint64)[0])


def init_state(net: NetworkSpec | CompiledNetwork, sampler: SamplerConfig, start="cold") -> SamplerState:
    """Starting state: ``"cold"`` (+1 vacuum), ``"hot"`` (uniform in [-1.5, 1.5])
    or an explicit ``(n_neurons, n_slices)`` array.  Frozen rows always hold
    their kink trains."""
    cn = net if isinstance(net, CompiledNetwork) else compile_network(net)
    sampler.check_lattice(cn.lattice.n_slices)
    rng = np.random.Generator(np.random.PCG64(sampler.rng_seed))
    shape = (cn.n_neurons, cn.lattice.n_slices)
    if isinstance(start, str):
        if start == "cold":
            paths = np.ones(shape)
        elif start == "hot":
            paths = rng.uniform(-HOT_RANGE, HOT_RANGE, size=shape)
        else:
            raise ValidationError(f"unknown start {start!r}")
    else:
        paths = np.array(start, dtype=float)
        if paths.shape != shape:
            raise ValidationError(f"explicit paths must have shape {shape}, got {paths.shape}")
    for i, p in cn.frozen_paths.items():
        paths[i] = p
    cfg = NetworkConfiguration(cn.lattice, paths, cn.frozen.copy())
    zeros = np.zeros(sampler.n_levels, dtype=np.int64)
    return SamplerState(cfg, rng, zeros, zeros.copy())


def _advance(state: SamplerState, cn: CompiledNetwork, widths: np.ndarray, n_sweeps: int):
    if n_sweeps <= 0:
        return
    _kernels.sweep(state.configuration.paths, cn.free, cn.lam, cn.lattice.step,
                   cn.adj_ptr, cn.adj_conn, cn.adj_role, cn.adj_other, cn.conn_kind,
                   cn.conn_strength, widths, state.rng, state.accepted, state.proposed, n_sweeps)
    state.sweep_index += n_sweeps


def metropolis_sweep(state: SamplerState, net, sampler: SamplerConfig, n_sweeps: int = 1) -> SamplerState:
    """Advance the chain by ``n_sweeps`` full multilevel sweeps (in place)."""
    cn = net if isinstance(net, CompiledNetwork) else compile_network(net)
    _advance(state, cn, sampler.level_widths, n_sweeps)
    return state


def reference_train(net: NetworkSpec) -> KinkTrainSpec:
    """The network's canonical active-input train: the first active input, or the default train."""
    for n in net.neurons:
        if n.kind is NeuronKind.INPUT_ACTIVE:
            return n.kink_train
    return KinkTrainSpec()


def reference_integral(net: NetworkSpec) -> float:
    train = reference_train(net)
    path = build_kink_train(net.lattice, train)
    return float(net.lattice.step * np.sum(0.25 * train.lam * (path * path - 1.0) ** 2))


def run_simulation(net: NetworkSpec, sampler: SamplerConfig, start="cold") -> MeasurementReport:
    cn = compile_network(net)
    if not np.any(~cn.frozen):
        raise ValidationError("network has no simulated neuron")
    n_meas = sampler.measurement_sweeps // sampler.measure_every
    if n_meas < 4:
        raise ValidationError(
            f"measurement_sweeps/measure_every gives {n_meas} measurements; at least 4 are needed")
    state = init_state(cn, sampler, start)
    widths = sampler.level_widths
    lat = cn.lattice
    ref = reference_integral(net)

    log.info("thermalizing %d sweeps", sampler.thermalization_sweeps)
    _advance(state, cn, widths, sampler.thermalization_sweeps)

    free = cn.free
    paths = state.configuration.paths
    lam = cn.lam[free, None]
    integrals = np.empty((n_meas, free.size))
    kinks = np.empty((n_meas, free.size))
    trace_sum = np.zeros((free.size, lat.n_slices))
    for m in range(n_meas):
        _advance(state, cn, widths, sampler.measure_every)
        v = 0.25 * lam * (paths[free] ** 2 - 1.0) ** 2
        trace_sum += v
        integrals[m] = lat.step * v.sum(axis=1)
        kinks[m] = [count_kinks(paths[i], DEFAULT_HYSTERESIS) for i in free]
    _advance(state, cn, widths, sampler.measurement_sweeps - n_meas * sampler.measure_every)

    n_bins = min(MAX_BINS, n_meas // 2)
    per_neuron = []
    for i, nid in enumerate(cn.ids):
        if cn.frozen[i]:
            train_path = cn.frozen_paths[i]
            per_neuron.append(NeuronReport(
                id=nid, kind=cn.kinds[i].value, activity_mean=1.0, activity_err=0.0,
                raw_activity_mean=1.0, raw_activity_err=0.0, vacuum_baseline=0.0,
                kink_count_mean=float(count_kinks(train_path)),
                energy_trace=(0.25 * cn.lam[i] * (train_path ** 2 - 1.0) ** 2).tolist()))
            continue
        j = int(np.flatnonzero(free == i)[0])
        base = vacuum_baseline(lat, float(cn.lam[i]))
        raw = integrals[:, j] / ref
        err = binned_error(raw, n_bins)
        per_neuron.append(NeuronReport(
            id=nid, kind=cn.kinds[i].value,
            activity_mean=float(np.mean(integrals[:, j] - base) / ref), activity_err=err,
            raw_activity_mean=float(np.mean(raw)), raw_activity_err=err,
            vacuum_baseline=base, kink_count_mean=float(np.mean(kinks[:, j])),
            energy_trace=(trace_sum[j] / n_meas).tolist()))

    acceptance = state.acceptance.tolist()
    notes = []
    lo, hi = ACCEPTANCE_BAND
    if not lo <= acceptance[0] <= hi:
        msg = f"level-0 acceptance {acceptance[0]:.3f} outside [{lo}, {hi}]; retune proposal_width"
        warnings.warn(msg, TuningWarning, stacklevel=2)
        notes.append(msg)

    meta = {
        "schema_version": SCHEMA_VERSION,
        "package_version": _version(),
        "rng": RNG_NAME,
        "numpy_version": np.__version__,
        "seed": sampler.rng_seed,
        "preset": sampler.preset,
        "sampler": asdict(sampler),
        "lattice": {"T": lat.extent, "Nt": lat.n_slices},
        "start": start if isinstance(start, str) else "explicit",
    }
    return MeasurementReport(per_neuron=per_neuron, acceptance=acceptance, n_measurements=n_meas,
                             reference_integral=ref, metadata=meta, warnings=notes)


def _version() -> str:
    from . import __version__
    return __version__
