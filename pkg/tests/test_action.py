import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wellnet.action import (NetworkConfiguration, excitatory_potential, inhibitory_potential,
                            local_action_delta, self_potential, total_action)
from wellnet.exceptions import ContractError, ValidationError
from wellnet.lattice import KinkTrainSpec, LatticeSpec, build_kink_train, kink_profile
from wellnet.network import ConnectionSpec, NetworkSpec, NeuronSpec, compile_network

# frozen oracle values (independent numpy / mpmath evaluation)
INHIBITORY_AT_HALF = 5005.645751953125          # 50000 * 0.75**8
FLIP_DELTA_512 = 2925.714285714286              # 4 / (0.7 / 512)
SINGLE_KINK_OPEN_ACTION = 66.65629               # lattice sum, wrap link excluded


def single(lattice, lam=5000.0):
    return NetworkSpec(lattice, (NeuronSpec("a", lam=lam),))


def config(net, paths):
    cn = compile_network(net)
    return NetworkConfiguration(net.lattice, np.atleast_2d(paths), cn.frozen)


def test_self_potential_values():
    assert self_potential(1.0, 5000) == 0.0
    assert self_potential(-1.0, 5000) == 0.0
    assert self_potential(0.0, 5000) == 1250.0
    assert self_potential(0.0, 1.0) == 0.25


def test_excitatory_potential_values():
    # source in a vacuum: no coupling whatever the target does
    assert excitatory_potential(1.0, 0.3, 6000.0) == 0.0
    assert excitatory_potential(-1.0, 0.3, 6000.0) == 0.0
    # source mid-spike: the target pays for leaving zero
    assert excitatory_potential(0.0, 1.0, 6000.0) == 6000.0
    assert excitatory_potential(0.0, 0.0, 6000.0) == 0.0


def test_inhibitory_potential_values():
    assert inhibitory_potential(0.0, 0.0, 1.0) == 1.0
    assert inhibitory_potential(1.0, 0.0, 50000.0) == 0.0
    assert inhibitory_potential(0.5, 0.5, 50000.0) == pytest.approx(INHIBITORY_AT_HALF, rel=1e-14)


def test_single_kink_action():
    lat = LatticeSpec(0.7, 512)
    path = kink_profile(lat.times, 0.35, 5000.0)
    s = total_action(single(lat), config(single(lat), path))
    wrap = (path[0] - path[-1]) ** 2 / (2 * lat.step)
    open_action = s - wrap
    assert open_action == pytest.approx(SINGLE_KINK_OPEN_ACTION, rel=1e-6)
    assert open_action == pytest.approx(200 / 3, rel=1e-3)


def test_kink_antikink_pair_action():
    lat = LatticeSpec(0.7, 512)
    path = build_kink_train(lat, KinkTrainSpec(n_kinks=2, centers=(0.175, 0.525)))
    s = total_action(single(lat), config(single(lat), path))
    assert s / 2 == pytest.approx(200 / 3, rel=1e-3)


def test_cold_vacuum_zero_action(default_lattice):
    net = single(default_lattice)
    assert total_action(net, config(net, np.ones(512))) == 0.0


def test_single_flip_delta(default_lattice):
    net = single(default_lattice)
    cfg = config(net, np.ones(512))
    assert local_action_delta(net, cfg, "a", 100, -1.0) == pytest.approx(FLIP_DELTA_512, rel=1e-12)


def _random_net(rng, n_neurons, n_slices):
    lat = LatticeSpec(0.3, n_slices)
    neurons = [NeuronSpec(f"n{i}", lam=float(rng.uniform(10, 6000))) for i in range(n_neurons)]
    conns = []
    for a in range(n_neurons):
        for b in range(n_neurons):
            if a == b:
                continue
            r = rng.random()
            if r < 0.4:
                conns.append(ConnectionSpec("excitatory", f"n{a}", f"n{b}", float(rng.uniform(0, 9000))))
            elif r < 0.6 and a < b:
                conns.append(ConnectionSpec("inhibitory", f"n{a}", f"n{b}", float(rng.uniform(0, 60000))))
    return NetworkSpec(lat, tuple(neurons), tuple(conns))


def _action_terms(net, paths):
    """Every additive term of the action as one flat array (independent oracle)."""
    dtau = net.lattice.step
    ids = net.ids
    lam = np.array([n.lam for n in net.neurons])[:, None]
    terms = [((np.roll(paths, -1, axis=1) - paths) ** 2 / (2 * dtau)).ravel(),
             (dtau * lam / 4 * (paths ** 2 - 1) ** 2).ravel()]
    for c in net.connections:
        a, b = paths[ids.index(c.source)], paths[ids.index(c.target)]
        if c.kind.value == "excitatory":
            terms.append(dtau * c.strength * b ** 2 * (a ** 2 - 1) ** 2)
        else:
            terms.append(dtau * c.strength * (a ** 2 - 1) ** 4 * (b ** 2 - 1) ** 4)
    return np.concatenate(terms)


def test_local_delta_matches_brute_force():
    rng = np.random.default_rng(2024)
    checked = 0
    for trial in range(100):
        net = _random_net(rng, int(rng.integers(1, 5)), int(rng.integers(8, 40)))
        cn = compile_network(net)
        paths = rng.normal(0, 1.2, size=(cn.n_neurons, net.lattice.n_slices))
        cfg = NetworkConfiguration(net.lattice, paths, cn.frozen)
        before = _action_terms(net, paths)
        for _ in range(100):
            i = int(rng.integers(cn.n_neurons))
            t = int(rng.integers(net.lattice.n_slices))
            new = float(rng.normal(0, 1.5))
            fast = local_action_delta(cn, cfg, i, t, new)
            moved = paths.copy()
            moved[i, t] = new
            # untouched terms cancel exactly, so the sum has no large-total cancellation
            brute = math.fsum(_action_terms(net, moved) - before)
            assert abs(fast - brute) <= 1e-9 * abs(brute) + 1e-12, (trial, fast, brute)
            checked += 1
    assert checked == 10_000


def test_total_action_matches_term_oracle():
    rng = np.random.default_rng(7)
    for _ in range(20):
        net = _random_net(rng, 3, 24)
        cn = compile_network(net)
        paths = rng.normal(0, 1.2, size=(3, 24))
        s = total_action(cn, NetworkConfiguration(net.lattice, paths, cn.frozen))
        assert s == pytest.approx(math.fsum(_action_terms(net, paths)), rel=1e-12)


def test_local_delta_rejects_frozen(default_lattice):
    net = NetworkSpec(default_lattice, (NeuronSpec("in", "input_active"), NeuronSpec("a")),
                      (ConnectionSpec("excitatory", "in", "a", 6000.0),))
    cn = compile_network(net)
    paths = np.vstack([cn.frozen_paths[0], np.ones(512)])
    cfg = NetworkConfiguration(default_lattice, paths, cn.frozen)
    with pytest.raises(ContractError):
        local_action_delta(cn, cfg, "in", 5, 0.0)
    with pytest.raises(ValidationError):
        local_action_delta(cn, cfg, "a", 512, 0.0)


def test_configuration_rejects_bad_input(default_lattice):
    with pytest.raises(ValidationError):
        NetworkConfiguration(default_lattice, np.ones((1, 100)), np.zeros(1, bool))
    bad = np.ones((1, 512))
    bad[0, 3] = np.nan
    with pytest.raises(ValidationError):
        NetworkConfiguration(default_lattice, bad, np.zeros(1, bool))


# --- invariants ------------------------------------------------------------

LAT16 = LatticeSpec(0.4, 16)
PAIR = NetworkSpec(LAT16, (NeuronSpec("a", lam=300.0), NeuronSpec("b", lam=700.0)),
                   (ConnectionSpec("excitatory", "a", "b", 4000.0),
                    ConnectionSpec("inhibitory", "a", "b", 9000.0)))
paths16 = arrays(np.float64, (2, 16), elements=st.floats(-3, 3))


@settings(max_examples=60, deadline=None)
@given(p=paths16)
def test_action_nonnegative(p):
    assert total_action(PAIR, config(PAIR, p)) >= 0.0


@settings(max_examples=60, deadline=None)
@given(p=paths16)
def test_action_even_under_global_flip(p):
    s = total_action(PAIR, config(PAIR, p))
    assert total_action(PAIR, config(PAIR, -p)) == pytest.approx(s, rel=1e-12, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(p=paths16, shift=st.integers(0, 15))
def test_action_invariant_under_rotation(p, shift):
    s = total_action(PAIR, config(PAIR, p))
    rolled = np.roll(p, shift, axis=1)
    assert total_action(PAIR, config(PAIR, rolled)) == pytest.approx(s, rel=1e-12, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(p=paths16)
def test_action_invariant_under_time_reversal(p):
    s = total_action(PAIR, config(PAIR, p))
    rev = p[:, ::-1]
    assert total_action(PAIR, config(PAIR, rev)) == pytest.approx(s, rel=1e-12, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(p=arrays(np.float64, (1, 16), elements=st.floats(-3, 3)))
def test_zero_coupling_is_additive(p):
    net0 = NetworkSpec(LAT16, PAIR.neurons, tuple(
        ConnectionSpec(c.kind, c.source, c.target, 0.0) for c in PAIR.connections))
    both = np.vstack([p, p[:, ::-1]])
    s = total_action(net0, config(net0, both))
    sa = total_action(single(LAT16, 300.0), config(single(LAT16, 300.0), p))
    sb = total_action(single(LAT16, 700.0), config(single(LAT16, 700.0), p[:, ::-1]))
    assert s == pytest.approx(sa + sb, rel=1e-12)
