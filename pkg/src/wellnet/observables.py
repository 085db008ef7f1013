"""Activity, potential-energy traces, kink counting and error bars."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np
from scipy import linalg

from .exceptions import ValidationError
from .lattice import LatticeSpec

DEFAULT_HYSTERESIS = 0.5


def potential_trace(path, lam):
    """Per-slice self-potential of a path (or of every row of a 2-D array)."""
    if lam < 0:
        raise ValidationError(f"lambda must be non-negative, got {lam}")
    path = np.asarray(path, dtype=float)
    return 0.25 * lam * (path * path - 1.0) ** 2


def integral_potential(path, lattice: LatticeSpec, lam) -> float:
    path = np.asarray(path, dtype=float)
    if path.shape[-1] != lattice.n_slices:
        raise ValidationError(f"path length {path.shape[-1]} != {lattice.n_slices} slices")
    return lattice.step * np.sum(potential_trace(path, lam), axis=-1)


def activity(path, lattice: LatticeSpec, lam, reference_integral: float, baseline: float = 0.0):
    """Integrated potential energy relative to a reference input train.

    ``baseline`` is subtracted from the integral first; with the default of
    zero a vacuum path gives 0 and a replica of the reference gives 1.
    """
    if not reference_integral > 0:
        raise ValidationError(f"reference integral must be positive, got {reference_integral}")
    return (integral_potential(path, lattice, lam) - baseline) / reference_integral


def count_kinks(path, hysteresis: float = DEFAULT_HYSTERESIS) -> int:
    """Count vacuum-to-vacuum transitions of a periodic path.

    A two-state detector flips only when the path goes beyond ``+hysteresis``
    or below ``-hysteresis``; chatter inside the band is ignored.  The path is
    read cyclically, so the count is always even.
    """
    if not 0 < hysteresis < 1:
        raise ValidationError(f"hysteresis must lie in (0, 1), got {hysteresis}")
    path = np.asarray(path, dtype=float)
    states = np.sign(path[np.abs(path) > hysteresis])
    if states.size == 0:
        return 0
    return int(np.count_nonzero(states != np.roll(states, 1)))


def binned_error(samples, n_bins: int) -> float:
    """Standard error of the mean from ``n_bins`` consecutive bin averages."""
    samples = np.asarray(samples, dtype=float)
    if n_bins < 2 or samples.size < 2 * n_bins:
        raise ValidationError(
            f"need at least 2*n_bins samples and n_bins >= 2 (got {samples.size}, {n_bins})")
    per_bin = samples.size // n_bins
    means = samples[: per_bin * n_bins].reshape(n_bins, per_bin).mean(axis=1)
    return float(np.std(means, ddof=1) / math.sqrt(n_bins))


@lru_cache(maxsize=64)
def vacuum_baseline(lattice: LatticeSpec, lam: float) -> float:
    """Expected integral potential energy of an isolated neuron on ``lattice``.

    Evaluated without sampling: the periodic lattice path integral of one
    neuron is the trace of the N-th power of its transfer matrix, here on a
    position grid fine enough to resolve both the kinetic Gaussian and the
    vacuum fluctuations.
    """
    if not lam > 0:
        raise ValidationError(f"lambda must be positive, got {lam}")
    dtau = lattice.step
    omega = math.sqrt(2.0 * lam)
    sigma = math.sqrt(1.0 / (2.0 * omega))
    reach = 1.5 + 10.0 * sigma
    h = min(math.sqrt(dtau), sigma) / 4.0
    n = min(int(2 * reach / h) + 1, 3001)
    x = np.linspace(-reach, reach, n)
    h = x[1] - x[0]
    v = potential_trace(x, lam)
    half = np.exp(-0.5 * dtau * v)
    kernel = half[:, None] * np.exp(-(x[:, None] - x[None, :]) ** 2 / (2.0 * dtau)) * half[None, :]
    evals, evecs = linalg.eigh(kernel)
    ratio = evals / evals[-1]
    weights = np.sign(ratio) ** lattice.n_slices * np.abs(ratio) ** lattice.n_slices
    mean_v = np.sum(weights * np.einsum("ik,i,ik->k", evecs, v, evecs)) / np.sum(weights)
    return float(lattice.extent * mean_v)


@dataclass
class NeuronReport:
    id: str
    kind: str
    activity_mean: float
    activity_err: float
    raw_activity_mean: float
    raw_activity_err: float
    vacuum_baseline: float
    kink_count_mean: float
    energy_trace: list = field(repr=False)


@dataclass
class MeasurementReport:
    """Result of one simulation.

    ``activity_mean`` subtracts the isolated-neuron vacuum baseline, so a
    sleeping neuron reads about 0; ``raw_activity_mean`` is the bare ratio of
    integrals.  Frozen inputs report exactly 1.
    """

    per_neuron: list
    acceptance: list
    n_measurements: int
    reference_integral: float
    metadata: dict
    warnings: list = field(default_factory=list)

    def neuron(self, neuron_id: str) -> NeuronReport:
        for r in self.per_neuron:
            if r.id == neuron_id:
                return r
        raise KeyError(neuron_id)

    def to_dict(self) -> dict:
        return {
            "schema_version": self.metadata.get("schema_version", 1),
            "metadata": self.metadata,
            "reference_integral": self.reference_integral,
            "n_measurements": self.n_measurements,
            "acceptance": list(self.acceptance),
            "warnings": list(self.warnings),
            "per_neuron": [asdict(r) for r in self.per_neuron],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        cols = ["id", "kind", "activity_mean", "activity_err", "raw_activity_mean",
                "raw_activity_err", "vacuum_baseline", "kink_count_mean"]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in self.per_neuron:
            w.writerow([repr(getattr(r, c)) if isinstance(getattr(r, c), float) else getattr(r, c)
                        for c in cols])
        return buf.getvalue()

    def trace_csv(self, neuron_id: str) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["slice", "mean_V0"])
        for t, v in enumerate(self.neuron(neuron_id).energy_trace):
            w.writerow([t, repr(float(v))])
        return buf.getvalue()


def report_from_dict(doc: dict) -> MeasurementReport:
    return MeasurementReport(
        per_neuron=[NeuronReport(**r) for r in doc["per_neuron"]],
        acceptance=doc["acceptance"],
        n_measurements=doc["n_measurements"],
        reference_integral=doc["reference_integral"],
        metadata=doc["metadata"],
        warnings=doc.get("warnings", []),
    )
