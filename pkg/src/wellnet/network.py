"""Declarative network description, validation, k-modulation and JSON I/O.

A :class:`NetworkSpec` is immutable.  Before sampling it is compiled into
flat index arrays (:class:`CompiledNetwork`); passive inputs and every
connection touching them are dropped at that point.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum

import jsonschema
import numpy as np

from .exceptions import ValidationError
from .lattice import (KinkTrainSpec, LatticeSpec, build_kink_train, build_lattice, kink_width,
                      min_center_spacing)

SCHEMA_VERSION = 1
DEFAULT_LAMBDA = 5000.0
DEFAULT_EXTENT = 0.7
DEFAULT_SLICES = 512
RECOMMENDED_EXCITATORY = (3000.0, 8000.0)


class NeuronKind(str, Enum):
    SIMULATED = "simulated"
    INPUT_ACTIVE = "input_active"
    INPUT_PASSIVE = "input_passive"


class CouplingKind(str, Enum):
    EXCITATORY = "excitatory"
    INHIBITORY = "inhibitory"


@dataclass(frozen=True)
class NeuronSpec:
    id: str
    kind: NeuronKind = NeuronKind.SIMULATED
    lam: float = DEFAULT_LAMBDA
    kink_train: KinkTrainSpec | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", NeuronKind(self.kind))
        if self.kind is NeuronKind.INPUT_ACTIVE and self.kink_train is None:
            object.__setattr__(self, "kink_train", KinkTrainSpec(lam=self.lam))


@dataclass(frozen=True)
class ConnectionSpec:
    kind: CouplingKind
    source: str
    target: str
    strength: float
    modulated: bool = True

    def __post_init__(self):
        object.__setattr__(self, "kind", CouplingKind(self.kind))
        object.__setattr__(self, "strength", float(self.strength))
        if self.kind is CouplingKind.INHIBITORY and self.target < self.source:
            # undirected: store the pair in lexicographic order
            src, tgt = self.target, self.source
            object.__setattr__(self, "source", src)
            object.__setattr__(self, "target", tgt)

    @property
    def key(self):
        return (self.kind, self.source, self.target)


@dataclass(frozen=True)
class NetworkSpec:
    lattice: LatticeSpec = field(default_factory=lambda: LatticeSpec(DEFAULT_EXTENT, DEFAULT_SLICES))
    neurons: tuple[NeuronSpec, ...] = ()
    connections: tuple[ConnectionSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "neurons", tuple(self.neurons))
        object.__setattr__(self, "connections", tuple(self.connections))

    def neuron(self, neuron_id: str) -> NeuronSpec:
        for n in self.neurons:
            if n.id == neuron_id:
                return n
        raise KeyError(neuron_id)

    @property
    def ids(self) -> list[str]:
        return [n.id for n in self.neurons]


@dataclass(frozen=True)
class Diagnostic:
    level: str  # "error" | "warning"
    where: str
    message: str

    def __str__(self):
        return f"{self.level}: {self.where}: {self.message}"


def validate(net: NetworkSpec) -> list[Diagnostic]:
    """Check a network and return diagnostics; an empty error list means usable."""
    diags = []
    seen = set()
    for i, n in enumerate(net.neurons):
        where = f"neurons[{i}]"
        if n.id in seen:
            diags.append(Diagnostic("error", where, f"duplicate neuron id {n.id!r}"))
        seen.add(n.id)
        if not (n.lam > 0 and math.isfinite(n.lam)):
            diags.append(Diagnostic("error", where, f"lambda must be positive, got {n.lam}"))
        if n.kind is NeuronKind.INPUT_ACTIVE:
            train = n.kink_train
            if train.lam != n.lam:
                diags.append(Diagnostic(
                    "error", where, f"kink train lambda {train.lam} differs from neuron lambda {n.lam}"))
            try:
                spacing = min_center_spacing(train, net.lattice.extent)
            except ValidationError as exc:
                diags.append(Diagnostic("error", where + ".kink_train", str(exc)))
            else:
                if spacing < 4 * kink_width(train.lam):
                    diags.append(Diagnostic(
                        "warning", where + ".kink_train",
                        f"kink spacing {spacing:.4g} below 4 kink widths; kinks overlap"))

    if not any(n.kind is NeuronKind.SIMULATED for n in net.neurons):
        diags.append(Diagnostic("error", "neurons", "network has no simulated neuron"))

    keys = set()
    lo, hi = RECOMMENDED_EXCITATORY
    for i, c in enumerate(net.connections):
        where = f"connections[{i}]"
        for end in (c.source, c.target):
            if end not in seen:
                diags.append(Diagnostic("error", where, f"unknown neuron id {end!r}"))
        if c.source == c.target:
            diags.append(Diagnostic("error", where, f"self-loop on {c.source!r}"))
        if c.key in keys:
            diags.append(Diagnostic(
                "error", where, f"duplicate {c.kind.value} connection {c.source!r}-{c.target!r}"))
        keys.add(c.key)
        if not (c.strength >= 0 and math.isfinite(c.strength)):
            diags.append(Diagnostic("error", where, f"strength must be non-negative, got {c.strength}"))
        elif c.kind is CouplingKind.EXCITATORY and c.strength > 0 and not lo <= c.strength <= hi:
            diags.append(Diagnostic(
                "warning", where,
                f"excitatory strength {c.strength:g} outside the working range [{lo:g}, {hi:g}]"))
        if c.kind is CouplingKind.EXCITATORY and c.target in seen:
            tgt = next(n for n in net.neurons if n.id == c.target)
            if tgt.kind is not NeuronKind.SIMULATED:
                diags.append(Diagnostic(
                    "warning", where, f"excitatory target {c.target!r} is a fixed input"))
    return diags


def errors(diags: list[Diagnostic]) -> list[Diagnostic]:
    return [d for d in diags if d.level == "error"]


def ensure_valid(net: NetworkSpec) -> NetworkSpec:
    bad = errors(validate(net))
    if bad:
        raise ValidationError("invalid network:\n" + "\n".join(str(d) for d in bad))
    return net


def modulate(net: NetworkSpec, k: float, kinds=None) -> NetworkSpec:
    """Scale every modulated connection strength by ``k``.

    ``kinds`` optionally restricts scaling to some coupling kinds.
    """
    if not (k >= 0 and math.isfinite(k)):
        raise ValidationError(f"modulation factor must be non-negative, got {k}")
    kinds = None if kinds is None else {CouplingKind(x) for x in kinds}
    conns = tuple(
        replace(c, strength=k * c.strength)
        if c.modulated and (kinds is None or c.kind in kinds) else c
        for c in net.connections)
    return replace(net, connections=conns)


def with_lambda(net: NetworkSpec, lam: float) -> NetworkSpec:
    """Set the self-coupling of every neuron, input kink trains included."""
    neurons = []
    for n in net.neurons:
        train = n.kink_train
        if train is not None:
            train = replace(train, lam=float(lam))
        neurons.append(replace(n, lam=float(lam), kink_train=train))
    return replace(net, neurons=tuple(neurons))


def with_lattice(net: NetworkSpec, extent=None, n_slices=None) -> NetworkSpec:
    lat = build_lattice(net.lattice.extent if extent is None else extent,
                        net.lattice.n_slices if n_slices is None else n_slices)
    return replace(net, lattice=lat)


# --- compiled form -------------------------------------------------------

ROLE_SOURCE = 0
ROLE_TARGET = 1
KIND_CODE = {CouplingKind.EXCITATORY: 0, CouplingKind.INHIBITORY: 1}


@dataclass(frozen=True, eq=False)
class CompiledNetwork:
    lattice: LatticeSpec
    ids: tuple[str, ...]
    kinds: tuple[NeuronKind, ...]
    lam: np.ndarray
    frozen: np.ndarray
    frozen_paths: dict
    conn_kind: np.ndarray
    conn_source: np.ndarray
    conn_target: np.ndarray
    conn_strength: np.ndarray
    adj_ptr: np.ndarray
    adj_conn: np.ndarray
    adj_role: np.ndarray
    adj_other: np.ndarray

    @property
    def n_neurons(self) -> int:
        return len(self.ids)

    @property
    def free(self) -> np.ndarray:
        return np.flatnonzero(~self.frozen)

    def index(self, neuron) -> int:
        if isinstance(neuron, (int, np.integer)):
            if not 0 <= neuron < self.n_neurons:
                raise ValidationError(f"neuron index {neuron} out of range")
            return int(neuron)
        try:
            return self.ids.index(neuron)
        except ValueError:
            raise ValidationError(f"unknown neuron {neuron!r}") from None


def compile_network(net: NetworkSpec) -> CompiledNetwork:
    ensure_valid(net)
    kept = [n for n in net.neurons if n.kind is not NeuronKind.INPUT_PASSIVE]
    index = {n.id: i for i, n in enumerate(kept)}
    conns = [c for c in net.connections if c.source in index and c.target in index]

    frozen = np.array([n.kind is NeuronKind.INPUT_ACTIVE for n in kept], dtype=bool)
    frozen_paths = {i: build_kink_train(net.lattice, n.kink_train)
                    for i, n in enumerate(kept) if frozen[i]}

    src = np.array([index[c.source] for c in conns], dtype=np.int64)
    tgt = np.array([index[c.target] for c in conns], dtype=np.int64)
    ptr, adj_conn, adj_role, adj_other = [0], [], [], []
    for i in range(len(kept)):
        for ci in range(len(conns)):
            if src[ci] == i:
                adj_conn.append(ci), adj_role.append(ROLE_SOURCE), adj_other.append(tgt[ci])
            elif tgt[ci] == i:
                adj_conn.append(ci), adj_role.append(ROLE_TARGET), adj_other.append(src[ci])
        ptr.append(len(adj_conn))

    return CompiledNetwork(
        lattice=net.lattice,
        ids=tuple(n.id for n in kept),
        kinds=tuple(n.kind for n in kept),
        lam=np.array([n.lam for n in kept], dtype=float),
        frozen=frozen,
        frozen_paths=frozen_paths,
        conn_kind=np.array([KIND_CODE[c.kind] for c in conns], dtype=np.int64),
        conn_source=src,
        conn_target=tgt,
        conn_strength=np.array([c.strength for c in conns], dtype=float),
        adj_ptr=np.array(ptr, dtype=np.int64),
        adj_conn=np.array(adj_conn, dtype=np.int64),
        adj_role=np.array(adj_role, dtype=np.int64),
        adj_other=np.array(adj_other, dtype=np.int64),
    )


# --- JSON ----------------------------------------------------------------

_KINK_TRAIN_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "n_kinks": {"type": "integer", "minimum": 0},
        "start_vacuum": {"enum": [1, -1]},
        "centers": {"type": "array", "items": {"type": "number"}},
    },
}

NETWORK_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "neurons"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "lattice": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "T": {"type": "number", "exclusiveMinimum": 0},
                "Nt": {"type": "integer", "minimum": 8},
            },
        },
        "neurons": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id"],
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "kind": {"enum": [k.value for k in NeuronKind]},
                    "lambda": {"type": "number", "exclusiveMinimum": 0},
                    "kink_train": _KINK_TRAIN_SCHEMA,
                },
            },
        },
        "connections": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["kind", "source", "target", "strength"],
                "properties": {
                    "kind": {"enum": [k.value for k in CouplingKind]},
                    "source": {"type": "string"},
                    "target": {"type": "string"},
                    "strength": {"type": "number", "minimum": 0},
                    "modulated": {"type": "boolean"},
                },
            },
        },
    },
}


def _json_path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def network_from_dict(doc: dict) -> NetworkSpec:
    validator = jsonschema.Draft202012Validator(NETWORK_SCHEMA)
    problems = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if problems:
        raise ValidationError("\n".join(
            f"{_json_path(e.absolute_path)}: {e.message}" for e in problems))

    lat = doc.get("lattice", {})
    lattice = LatticeSpec(lat.get("T", DEFAULT_EXTENT), lat.get("Nt", DEFAULT_SLICES))
    neurons = []
    seen = set()
    for i, nd in enumerate(doc["neurons"]):
        nid = nd["id"]
        if nid in seen:
            raise ValidationError(f"$.neurons[{i}].id: duplicate neuron id {nid!r}")
        seen.add(nid)
        kind = NeuronKind(nd.get("kind", NeuronKind.SIMULATED.value))
        lam = float(nd.get("lambda", DEFAULT_LAMBDA))
        train = None
        if "kink_train" in nd:
            if kind is not NeuronKind.INPUT_ACTIVE:
                raise ValidationError(f"$.neurons[{i}].kink_train: only input_active neurons carry a kink train")
            kt = nd["kink_train"]
            centers = kt.get("centers")
            train = KinkTrainSpec(
                n_kinks=kt.get("n_kinks", 6 if centers is None else len(centers)),
                lam=lam,
                start_vacuum=kt.get("start_vacuum", 1),
                centers=None if centers is None else tuple(centers))
        neurons.append(NeuronSpec(nid, kind, lam, train))

    conns = [ConnectionSpec(cd["kind"], cd["source"], cd["target"], cd["strength"],
                            cd.get("modulated", True))
             for cd in doc.get("connections", [])]
    return NetworkSpec(lattice, tuple(neurons), tuple(conns))


def parse_network(text: str) -> NetworkSpec:
    """Parse a network JSON document; raises :class:`ValidationError` with locations."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("$: network document must be a JSON object")
    return network_from_dict(doc)


def network_to_dict(net: NetworkSpec) -> dict:
    neurons = []
    for n in net.neurons:
        nd = {"id": n.id, "kind": n.kind.value, "lambda": n.lam}
        if n.kind is NeuronKind.INPUT_ACTIVE:
            kt = {"n_kinks": n.kink_train.n_kinks, "start_vacuum": n.kink_train.start_vacuum}
            if n.kink_train.centers is not None:
                kt["centers"] = list(n.kink_train.centers)
            nd["kink_train"] = kt
        neurons.append(nd)
    return {
        "schema_version": SCHEMA_VERSION,
        "lattice": {"T": net.lattice.extent, "Nt": net.lattice.n_slices},
        "neurons": neurons,
        "connections": [
            {"kind": c.kind.value, "source": c.source, "target": c.target,
             "strength": c.strength, "modulated": c.modulated}
            for c in net.connections],
    }


def serialize_network(net: NetworkSpec) -> str:
    return json.dumps(network_to_dict(net), indent=2) + "\n"


def load_network(path) -> NetworkSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())
