"""Compiled inner loops for the Metropolis sampler.

Connection codes: kind 0 excitatory, 1 inhibitory; role 0 means the updated
neuron is the connection's source, 1 its target.
"""
import numba
import numpy as np


@numba.njit(cache=True)
def pair_energy(kind, role, x, y, eps):
    """Energy density of one connection; ``x`` is the updated neuron, ``y`` its partner."""
    if kind == 1:
        a = x * x - 1.0
        b = y * y - 1.0
        a2 = a * a
        b2 = b * b
        return eps * a2 * a2 * b2 * b2
    if role == 0:
        src = x
        dst = y
    else:
        src = y
        dst = x
    u = src * src - 1.0
    return eps * dst * dst * u * u


@numba.njit(cache=True)
def site_potential(paths, i, t, x, lam_i, ptr, conn, role, other, kind, eps):
    u = x * x - 1.0
    v = 0.25 * lam_i * u * u
    for p in range(ptr[i], ptr[i + 1]):
        c = conn[p]
        v += pair_energy(kind[c], role[p], x, paths[other[p], t], eps[c])
    return v


@numba.njit(cache=True)
def block_delta(paths, i, start, size, shift, dtau, lam_i, ptr, conn, role, other, kind, eps):
    """Action change when slices start..start+size-1 of neuron i move by ``shift``.

    The block must not wrap around the periodic boundary.
    """
    nt = paths.shape[1]
    end = start + size - 1
    left = paths[i, (start - 1) % nt]
    right = paths[i, (end + 1) % nt]
    a = paths[i, start]
    b = paths[i, end]
    dk = ((a + shift - left) ** 2 - (a - left) ** 2
          + (right - b - shift) ** 2 - (right - b) ** 2) * (0.5 / dtau)
    dv = 0.0
    for t in range(start, end + 1):
        x = paths[i, t]
        dv += (site_potential(paths, i, t, x + shift, lam_i, ptr, conn, role, other, kind, eps)
               - site_potential(paths, i, t, x, lam_i, ptr, conn, role, other, kind, eps))
    return dk + dtau * dv


@numba.njit(cache=True)
def sweep(paths, free, lam, dtau, ptr, conn, role, other, kind, eps,
          widths, rng, accepted, proposed, n_sweeps):
    """Run ``n_sweeps`` multilevel sweeps in place.

    Level ``l`` shifts aligned blocks of ``2**l`` slices rigidly by a uniform
    offset in ``[-widths[l], widths[l]]``.
    """
    nt = paths.shape[1]
    inv2 = 0.5 / dtau
    for _ in range(n_sweeps):
        for i in free:
            lam_i = lam[i]
            for lev in range(widths.shape[0]):
                size = 1 << lev
                w = widths[lev]
                for start in range(0, nt - size + 1, size):
                    shift = w * (2.0 * rng.random() - 1.0)
                    # same arithmetic as block_delta; inlined because the call costs ~2x
                    end = start + size - 1
                    left = paths[i, (start - 1) % nt]
                    right = paths[i, (end + 1) % nt]
                    a = paths[i, start]
                    b = paths[i, end]
                    ds = ((a + shift - left) ** 2 - (a - left) ** 2
                          + (right - b - shift) ** 2 - (right - b) ** 2) * inv2
                    dv = 0.0
                    for t in range(start, end + 1):
                        x = paths[i, t]
                        dv += (site_potential(paths, i, t, x + shift, lam_i, ptr, conn, role, other, kind, eps)
                               - site_potential(paths, i, t, x, lam_i, ptr, conn, role, other, kind, eps))
                    ds += dtau * dv
                    proposed[lev] += 1
                    if ds <= 0.0 or rng.random() < np.exp(-ds):
                        accepted[lev] += 1
                        for t in range(start, start + size):
                            paths[i, t] += shift
