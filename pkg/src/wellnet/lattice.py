"""Euclidean time lattice, analytic kinks and fixed input kink trains.

Paths are plain ``numpy`` arrays of length ``n_slices``.  The lattice is
periodic: the right neighbour of slice ``n_slices - 1`` is slice 0 and no
duplicated end point is stored.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .exceptions import KinkOverlapWarning, ValidationError

MIN_SLICES = 8
_ABSOLUTE_MIN_SLICES = 2


@dataclass(frozen=True)
class LatticeSpec:
    extent: float
    n_slices: int

    def __post_init__(self):
        if not (self.extent > 0 and math.isfinite(self.extent)):
            raise ValidationError(f"lattice extent must be positive and finite, got {self.extent}")
        if int(self.n_slices) != self.n_slices or self.n_slices < _ABSOLUTE_MIN_SLICES:
            raise ValidationError(f"lattice needs at least {_ABSOLUTE_MIN_SLICES} slices, got {self.n_slices}")
        object.__setattr__(self, "n_slices", int(self.n_slices))
        object.__setattr__(self, "extent", float(self.extent))

    @property
    def step(self) -> float:
        return self.extent / self.n_slices

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n_slices) * self.step


def build_lattice(extent: float, n_slices: int) -> LatticeSpec:
    """Validated lattice for simulations (at least 8 slices).

    :class:`LatticeSpec` itself accepts down to 2 slices for toy checks.
    """
    if n_slices < MIN_SLICES:
        raise ValidationError(f"lattice needs at least {MIN_SLICES} slices, got {n_slices}")
    return LatticeSpec(extent, n_slices)


def kink_width(lam: float) -> float:
    """Characteristic width 1/sqrt(lam/2) of a kink."""
    return 1.0 / math.sqrt(lam / 2.0)


def kink_profile(t, t0, lam, sign=1):
    """Analytic kink ``sign * tanh(sqrt(lam/2) * (t - t0))``.

    ``sign=+1`` goes from the -1 vacuum to +1, ``sign=-1`` is the antikink.
    Works element-wise on arrays.
    """
    if not lam > 0:
        raise ValidationError(f"lambda must be positive, got {lam}")
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign}")
    return sign * np.tanh(math.sqrt(lam / 2.0) * (np.asarray(t, dtype=float) - t0))


def classical_kink_action(lam: float) -> float:
    """Action of one isolated kink, 2*sqrt(2*lam)/3."""
    if lam < 0:
        raise ValidationError(f"lambda must be non-negative, got {lam}")
    return 2.0 * math.sqrt(2.0 * lam) / 3.0


@dataclass(frozen=True)
class KinkTrainSpec:
    """Recipe for a fixed input path made of alternating kinks.

    Without explicit ``centers`` the kinks sit at ``(j + 0.5) * T / n_kinks``.
    Explicit centers are reduced modulo the lattice extent when the train is
    built, so shifting any center by a multiple of T changes nothing.
    """

    n_kinks: int = 6
    lam: float = 5000.0
    start_vacuum: int = 1
    centers: tuple[float, ...] | None = field(default=None)

    def __post_init__(self):
        if int(self.n_kinks) != self.n_kinks or self.n_kinks < 0:
            raise ValidationError(f"n_kinks must be a non-negative integer, got {self.n_kinks}")
        if self.n_kinks % 2:
            raise ValidationError(f"n_kinks must be even for a periodic path, got {self.n_kinks}")
        if not self.lam > 0:
            raise ValidationError(f"kink train lambda must be positive, got {self.lam}")
        if self.start_vacuum not in (1, -1):
            raise ValidationError(f"start_vacuum must be +1 or -1, got {self.start_vacuum}")
        if self.centers is not None:
            centers = tuple(float(c) for c in self.centers)
            if len(centers) != self.n_kinks:
                raise ValidationError(
                    f"{len(centers)} centers given for {self.n_kinks} kinks")
            if not all(math.isfinite(c) for c in centers):
                raise ValidationError("kink centers must be finite")
            object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "n_kinks", int(self.n_kinks))
        object.__setattr__(self, "lam", float(self.lam))

    def resolved_centers(self, extent: float) -> np.ndarray:
        if self.centers is None:
            return (np.arange(self.n_kinks) + 0.5) * extent / self.n_kinks
        c = np.sort(np.mod(np.asarray(self.centers, dtype=float), extent))
        if self.n_kinks and np.any(np.diff(np.append(c, c[0] + extent)) <= 0):
            raise ValidationError("kink centers must be distinct modulo the lattice extent")
        return c


def min_center_spacing(spec: KinkTrainSpec, extent: float) -> float:
    if spec.n_kinks == 0:
        return math.inf
    c = spec.resolved_centers(extent)
    return float(np.min(np.diff(np.append(c, c[0] + extent))))


def build_kink_train(lattice: LatticeSpec, spec: KinkTrainSpec) -> np.ndarray:
    """Glue analytic kinks and antikinks into one periodic path.

    Each slice is assigned to the circularly nearest center (segments switch
    at the midpoints between neighbouring centers) and takes that kink's
    profile.  Emits :class:`KinkOverlapWarning` when centers are closer than
    four kink widths.
    """
    t = lattice.times
    s = spec.start_vacuum
    if spec.n_kinks == 0:
        return np.full(lattice.n_slices, float(s))
    T = lattice.extent
    c = spec.resolved_centers(T)
    if min_center_spacing(spec, T) < 4 * kink_width(spec.lam):
        warnings.warn(
            f"kink spacing {min_center_spacing(spec, T):.4g} is below 4 kink widths "
            f"({4 * kink_width(spec.lam):.4g}); kinks overlap",
            KinkOverlapWarning, stacklevel=2)

    # circular offset to every center, then pick the nearest one
    d = t[:, None] - c[None, :]
    d = d - T * np.round(d / T)
    j = np.argmin(np.abs(d), axis=1)
    offset = d[np.arange(len(t)), j]
    before = s * np.where(j % 2 == 0, 1.0, -1.0)
    return kink_profile(offset, 0.0, spec.lam, -1) * before
