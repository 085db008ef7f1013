"""Factories for the canonical experiments: pair, chain, logic gates, 4x4 conv net.

Every active input in a built network shares the same default kink train, so
input spikes are synchronized.
"""
from __future__ import annotations

import numpy as np

from .exceptions import ValidationError
from .lattice import KinkTrainSpec, LatticeSpec
from .network import (DEFAULT_EXTENT, DEFAULT_LAMBDA, DEFAULT_SLICES, ConnectionSpec,
                      CouplingKind, NetworkSpec, NeuronKind, NeuronSpec)

EXC = CouplingKind.EXCITATORY
INH = CouplingKind.INHIBITORY

CHAIN_BASE = (15000.0, 10000.0, 5000.0)
GATE_INPUT_STRENGTH = 8000.0
AND_OUTPUT_STRENGTH = 2000.0
NOT_STRENGTHS = (8000.0, 6000.0)
NOT_INHIBITION = 50000.0
OR_INHIBITION = 50000.0
OR_OUTPUT_STRENGTH = 8000.0

KERNEL_EXC = np.array([[0, 1, 0], [0, 1, 0], [0, 1, 0]])
KERNEL_INH = np.array([[1, 0, 1], [1, 0, 1], [1, 0, 1]])
KERNEL_EXC_STRENGTH = 2000.0
KERNEL_INH_STRENGTH = 15000.0
CONV_OUTPUT_STRENGTH = 4000.0


def _lattice(lattice):
    return lattice if lattice is not None else LatticeSpec(DEFAULT_EXTENT, DEFAULT_SLICES)


def _input(nid, on, lam=DEFAULT_LAMBDA):
    if on:
        return NeuronSpec(nid, NeuronKind.INPUT_ACTIVE, lam, KinkTrainSpec(lam=lam))
    return NeuronSpec(nid, NeuronKind.INPUT_PASSIVE, lam)


def _sim(nid, lam=DEFAULT_LAMBDA):
    return NeuronSpec(nid, NeuronKind.SIMULATED, lam)


def parse_inputs(inputs, arity=2) -> tuple[bool, ...]:
    """Accept booleans or the strings ``"on"``/``"off"``."""
    if isinstance(inputs, str):
        inputs = inputs.split(",")
    out = []
    for x in inputs:
        if isinstance(x, str):
            key = x.strip().lower()
            if key not in ("on", "off"):
                raise ValidationError(f"input state must be 'on' or 'off', got {x!r}")
            out.append(key == "on")
        else:
            out.append(bool(x))
    if len(out) != arity:
        raise ValidationError(f"gate expects {arity} inputs, got {len(out)}")
    return tuple(out)


def build_single(lam=DEFAULT_LAMBDA, lattice=None) -> NetworkSpec:
    return NetworkSpec(_lattice(lattice), (_sim("n1", lam),), ())


def build_pair(eps=6000.0, lattice=None) -> NetworkSpec:
    if eps < 0:
        raise ValidationError("eps must be non-negative")
    return NetworkSpec(
        _lattice(lattice),
        (_input("in", True), _sim("n1")),
        (ConnectionSpec(EXC, "in", "n1", eps),))


def build_chain3(lattice=None) -> NetworkSpec:
    """Input driving three simulated neurons in a row; sweep with ``modulate``."""
    e1, e2, e3 = CHAIN_BASE
    return NetworkSpec(
        _lattice(lattice),
        (_input("in", True), _sim("n1"), _sim("n2"), _sim("n3")),
        (ConnectionSpec(EXC, "in", "n1", e1),
         ConnectionSpec(EXC, "n1", "n2", e2),
         ConnectionSpec(EXC, "n2", "n3", e3)))


def build_and(inputs=(True, True), lattice=None) -> NetworkSpec:
    """AND gate: inputs drive n1 and n2, which both feed n3 weakly.

    A single intermediate neuron is too weak to pull n3 out of its vacuum;
    the two together are strong enough.  Only the ``b`` input connection is
    modulated.
    """
    a, b = parse_inputs(inputs)
    conns = []
    if a:
        conns.append(ConnectionSpec(EXC, "in_a", "n1", GATE_INPUT_STRENGTH, modulated=False))
    if b:
        conns.append(ConnectionSpec(EXC, "in_b", "n2", GATE_INPUT_STRENGTH))
    conns += [ConnectionSpec(EXC, "n1", "n3", AND_OUTPUT_STRENGTH, modulated=False),
              ConnectionSpec(EXC, "n2", "n3", AND_OUTPUT_STRENGTH, modulated=False)]
    return NetworkSpec(
        _lattice(lattice),
        (_input("in_a", a), _input("in_b", b), _sim("n1"), _sim("n2"), _sim("n3")),
        tuple(conns))


def build_not(lattice=None) -> NetworkSpec:
    """One input drives n1 (stronger) and n2 (weaker); an inhibitory n1-n2 link,
    the only modulated connection, lets n1 silence n2."""
    e1, e2 = NOT_STRENGTHS
    return NetworkSpec(
        _lattice(lattice),
        (_input("in", True), _sim("n1"), _sim("n2")),
        (ConnectionSpec(EXC, "in", "n1", e1, modulated=False),
         ConnectionSpec(EXC, "in", "n2", e2, modulated=False),
         ConnectionSpec(INH, "n1", "n2", NOT_INHIBITION)))


def build_or(inputs=(True, True), lattice=None) -> NetworkSpec:
    """OR gate: mutually inhibiting intermediates n1, n2 each feed n3.

    Only ``in_b -> n2`` is modulated.
    """
    a, b = parse_inputs(inputs)
    conns = []
    if a:
        conns.append(ConnectionSpec(EXC, "in_a", "n1", GATE_INPUT_STRENGTH, modulated=False))
    if b:
        conns.append(ConnectionSpec(EXC, "in_b", "n2", GATE_INPUT_STRENGTH))
    conns += [ConnectionSpec(INH, "n1", "n2", OR_INHIBITION, modulated=False),
              ConnectionSpec(EXC, "n1", "n3", OR_OUTPUT_STRENGTH, modulated=False),
              ConnectionSpec(EXC, "n2", "n3", OR_OUTPUT_STRENGTH, modulated=False)]
    return NetworkSpec(
        _lattice(lattice),
        (_input("in_a", a), _input("in_b", b), _sim("n1"), _sim("n2"), _sim("n3")),
        tuple(conns))


def as_image(image) -> np.ndarray:
    img = np.asarray(image)
    if img.shape != (4, 4) or not np.all((img == 0) | (img == 1)):
        raise ValidationError(f"image must be a 4x4 grid of 0/1 values, got shape {img.shape}")
    return img.astype(int)


def parse_image(text: str) -> np.ndarray:
    """Read 4 lines of 4 characters from {0, 1}; blank lines are ignored."""
    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(rows) != 4 or any(len(r) != 4 or set(r) - {"0", "1"} for r in rows):
        raise ValidationError("image file must hold 4 lines of 4 characters from {0,1}")
    return np.array([[int(ch) for ch in r] for r in rows])


def pixel_id(r, c):
    return f"p{r}{c}"


def hidden_id(r, c):
    return f"h{r}{c}"


def build_conv(image, lattice=None) -> NetworkSpec:
    """Vertical-line detector on a 4x4 image.

    The 3x3 kernels are applied at the four valid positions, each position
    owning one second-layer neuron; all of them excite the output ``out``.
    Connections to dark (passive) pixels are omitted.
    """
    img = as_image(image)
    neurons = [_input(pixel_id(r, c), bool(img[r, c])) for r in range(4) for c in range(4)]
    neurons += [_sim(hidden_id(r, c)) for r in range(2) for c in range(2)]
    neurons.append(_sim("out"))
    conns = []
    for r in range(2):
        for c in range(2):
            h = hidden_id(r, c)
            for i in range(3):
                for j in range(3):
                    if not img[r + i, c + j]:
                        continue
                    p = pixel_id(r + i, c + j)
                    if KERNEL_EXC[i, j]:
                        conns.append(ConnectionSpec(EXC, p, h, KERNEL_EXC_STRENGTH))
                    if KERNEL_INH[i, j]:
                        conns.append(ConnectionSpec(INH, p, h, KERNEL_INH_STRENGTH))
    conns += [ConnectionSpec(EXC, hidden_id(r, c), "out", CONV_OUTPUT_STRENGTH)
              for r in range(2) for c in range(2)]
    return NetworkSpec(_lattice(lattice), tuple(neurons), tuple(conns))


VERTICAL_LINES = {
    "col1": [[0, 1, 0, 0]] * 4,
    "col2": [[0, 0, 1, 0]] * 4,
}
