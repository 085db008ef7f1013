"""
A chain of three neurons and its threshold
==========================================

The input drives n1 -> n2 -> n3 with strengths k * (15000, 10000, 5000).
Below a critical k the spike dies out along the chain; above it the chain
is transparent.  Heavier wells (larger lambda) need a larger k.
"""

from wellnet import SamplerConfig
from wellnet.builders import build_chain3
from wellnet.network import with_lambda
from wellnet.sweep import SweepPlan, run_sweep, sweep_csv

sampler = SamplerConfig(thermalization_sweeps=10_000, measurement_sweeps=10_000, rng_seed=3)
ks = (0.4, 0.8, 1.0, 1.2, 1.4, 1.6)

for lam in (2500.0, 5000.0, 7500.0):
    plan = SweepPlan("k", ks, with_lambda(build_chain3(), lam), sampler, "n3")
    rows, _ = run_sweep(plan)
    print(f"lambda={lam:g}")
    print(sweep_csv(rows))
