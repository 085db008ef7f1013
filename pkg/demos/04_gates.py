"""
Logic gates
===========

AND: two intermediates must both fire to wake the output.
OR: mutually inhibiting intermediates, so at most one drives the output.
NOT: an inhibitory link lets n1 silence n2.
"""

import itertools

from wellnet import SamplerConfig, modulate, run_simulation
from wellnet.builders import build_and, build_not, build_or

sampler = SamplerConfig(thermalization_sweeps=10_000, measurement_sweeps=10_000, rng_seed=4)


def word(on):
    return "On " if on else "Off"


for name, build in (("AND", build_and), ("OR", build_or)):
    for a, b in itertools.product((True, False), repeat=2):
        n3 = run_simulation(build((a, b)), sampler).neuron("n3").activity_mean
        print(f"{name}({word(a)},{word(b)}) -> n3 activity {n3:.3f}")

for k in (0.0, 0.25, 0.5, 1.0):
    rep = run_simulation(modulate(build_not(), k), sampler)
    print(f"NOT eps_inh={50000 * k:7.0f}  n1 {rep.neuron('n1').activity_mean:.3f}"
          f"  n2 {rep.neuron('n2').activity_mean:.3f}")
