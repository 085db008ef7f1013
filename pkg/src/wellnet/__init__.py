"""Path-integral Monte Carlo simulator for networks of double-well neurons.

Each neuron is a quantum particle in the potential (lam/4) * (phi**2 - 1)**2.
Tunnelling events (kinks) between the two vacua act as spikes, and
excitatory or inhibitory couplings carry them through the network.
"""
__version__ = "0.1.0"

from .action import (NetworkConfiguration, excitatory_potential, inhibitory_potential,
                     local_action_delta, self_potential, total_action)
from .exceptions import ContractError, KinkOverlapWarning, TuningWarning, ValidationError
from .lattice import (KinkTrainSpec, LatticeSpec, build_kink_train, build_lattice,
                      classical_kink_action, kink_profile)
from .network import (ConnectionSpec, CouplingKind, NetworkSpec, NeuronKind, NeuronSpec,
                      compile_network, modulate, parse_network, serialize_network, validate)
from .observables import (MeasurementReport, activity, binned_error, count_kinks,
                          integral_potential, potential_trace, vacuum_baseline)
from .sampler import SamplerConfig, init_state, metropolis_sweep, run_simulation


def data_file(name: str) -> str:
    """Filesystem path of a bundled data file, e.g. ``"two_neurons.json"``."""
    from importlib.resources import files
    return str(files(__name__).joinpath("data", name))
