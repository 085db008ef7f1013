"""Potentials and the discretized Euclidean action of a network.

The action of a periodic configuration is

    S = dtau * sum_t [ sum_i ( (phi_i[t+1] - phi_i[t])**2 / (2 dtau**2) + V0(phi_i[t]) )
                       + sum_connections V_int(phi at slice t) ]

with the excitatory coupling ``eps * phi_dst**2 * (phi_src**2 - 1)**2`` and the
inhibitory one ``eps * (phi_a**2 - 1)**4 * (phi_b**2 - 1)**4``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exceptions import ContractError, ValidationError
from .lattice import LatticeSpec
from .network import CompiledNetwork, CouplingKind, NetworkSpec, compile_network

__all__ = [
    "CouplingKind", "NetworkConfiguration", "self_potential", "excitatory_potential",
    "inhibitory_potential", "total_action", "local_action_delta",
]


def self_potential(phi, lam):
    """Double-well energy density (lam/4) * (phi**2 - 1)**2."""
    phi = np.asarray(phi, dtype=float)
    return 0.25 * lam * (phi * phi - 1.0) ** 2


def excitatory_potential(phi_src, phi_dst, eps):
    """Directed coupling; vanishes while the source sits in a vacuum.

    When the source passes through zero (a spike) the target is pulled
    towards zero as well.
    """
    phi_src = np.asarray(phi_src, dtype=float)
    phi_dst = np.asarray(phi_dst, dtype=float)
    return eps * phi_dst * phi_dst * (phi_src * phi_src - 1.0) ** 2


def inhibitory_potential(phi_a, phi_b, eps):
    phi_a = np.asarray(phi_a, dtype=float)
    phi_b = np.asarray(phi_b, dtype=float)
    return eps * (phi_a * phi_a - 1.0) ** 4 * (phi_b * phi_b - 1.0) ** 4


@dataclass
class NetworkConfiguration:
    """Current paths of all compiled neurons, shape ``(n_neurons, n_slices)``."""

    lattice: LatticeSpec
    paths: np.ndarray
    frozen: np.ndarray

    def __post_init__(self):
        self.paths = np.ascontiguousarray(self.paths, dtype=float)
        self.frozen = np.asarray(self.frozen, dtype=bool)
        if self.paths.ndim != 2 or self.paths.shape[1] != self.lattice.n_slices:
            raise ValidationError(
                f"paths must have shape (n, {self.lattice.n_slices}), got {self.paths.shape}")
        if self.frozen.shape != (self.paths.shape[0],):
            raise ValidationError("frozen mask does not match the number of paths")
        if not np.all(np.isfinite(self.paths)):
            raise ValidationError("paths contain non-finite values")


def _compiled(net) -> CompiledNetwork:
    return net if isinstance(net, CompiledNetwork) else compile_network(net)


def _check_shapes(cn: CompiledNetwork, cfg: NetworkConfiguration):
    if cfg.paths.shape != (cn.n_neurons, cn.lattice.n_slices) or cfg.lattice != cn.lattice:
        raise ValidationError(
            f"configuration shape {cfg.paths.shape} does not match network "
            f"({cn.n_neurons}, {cn.lattice.n_slices})")


def total_action(net: NetworkSpec | CompiledNetwork, cfg: NetworkConfiguration) -> float:
    cn = _compiled(net)
    _check_shapes(cn, cfg)
    dtau = cn.lattice.step
    phi = cfg.paths
    kinetic = np.sum((np.roll(phi, -1, axis=1) - phi) ** 2) / (2.0 * dtau)
    potential = np.sum(self_potential(phi, cn.lam[:, None]))
    for kind, a, b, eps in zip(cn.conn_kind, cn.conn_source, cn.conn_target, cn.conn_strength):
        if kind == 0:
            potential += np.sum(excitatory_potential(phi[a], phi[b], eps))
        else:
            potential += np.sum(inhibitory_potential(phi[a], phi[b], eps))
    return float(kinetic + dtau * potential)


def local_action_delta(net, cfg: NetworkConfiguration, neuron, slice_index: int, new_value: float) -> float:
    """Action difference for changing one site, from the terms touching it only."""
    cn = _compiled(net)
    _check_shapes(cn, cfg)
    i = cn.index(neuron)
    if cfg.frozen[i]:
        raise ContractError(f"neuron {cn.ids[i]!r} is a frozen input")
    if not 0 <= slice_index < cn.lattice.n_slices:
        raise ValidationError(f"slice {slice_index} out of range")
    shift = float(new_value) - cfg.paths[i, slice_index]
    return float(_kernels.block_delta(
        cfg.paths, i, int(slice_index), 1, shift, cn.lattice.step, cn.lam[i],
        cn.adj_ptr, cn.adj_conn, cn.adj_role, cn.adj_other, cn.conn_kind, cn.conn_strength))
