"""
Spike transfer between two neurons
===================================

A frozen input neuron carrying six kinks excites one simulated neuron.
While the input passes through zero the target is pulled to zero too, so
the target's potential energy tracks the input spikes.
"""

import numpy as np

from wellnet import SamplerConfig, run_simulation
from wellnet.builders import build_pair

sampler = SamplerConfig(thermalization_sweeps=20_000, measurement_sweeps=20_000, rng_seed=2)

for eps in (0.0, 2000.0, 4000.0, 6000.0, 8000.0):
    rep = run_simulation(build_pair(eps), sampler)
    r = rep.neuron("n1")
    print(f"eps={eps:6.0f}  activity {r.activity_mean:.3f} +- {r.activity_err:.3f}")

# where does the energy sit in time?  peaks line up with the input kinks
trace = np.array(rep.neuron("n1").energy_trace)
peaks = np.flatnonzero((trace > np.roll(trace, 1)) & (trace >= np.roll(trace, -1)) & (trace > 200))
print("energy peaks at slices", peaks)
