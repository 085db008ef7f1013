"""
One neuron: kinks, action and the sleeping state
=================================================

A neuron is a particle in the double well (lam/4)(phi^2 - 1)^2 on a periodic
Euclidean time lattice.  A kink (tunnelling between the vacua) is a spike.
"""

import numpy as np

from wellnet import (KinkTrainSpec, LatticeSpec, SamplerConfig, build_kink_train,
                     classical_kink_action, count_kinks, integral_potential, run_simulation,
                     vacuum_baseline)
from wellnet.builders import build_single

lat = LatticeSpec(0.7, 512)
print("time step", lat.step)

# the canonical input: six kinks spread evenly over the period
train = build_kink_train(lat, KinkTrainSpec())
print("kinks in the input train:", count_kinks(train))
print("its integrated potential:", integral_potential(train, lat, 5000.0))
# each kink stores half of its classical action as potential energy
print("6 * S_cl / 2 =", 3 * classical_kink_action(5000.0))

# an isolated neuron should sit in a vacuum; its quantum jitter has a small,
# exactly computable potential-energy floor
print("vacuum floor:", vacuum_baseline(lat, 5000.0))

sampler = SamplerConfig(thermalization_sweeps=20_000, measurement_sweeps=20_000, rng_seed=1)
rep = run_simulation(build_single(), sampler)
n1 = rep.neuron("n1")
print(f"activity {n1.activity_mean:.4f} +- {n1.activity_err:.4f}, "
      f"raw {n1.raw_activity_mean:.4f}, mean kinks {n1.kink_count_mean:.3f}")
print("acceptance per level", np.round(rep.acceptance, 3))
