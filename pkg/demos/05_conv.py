"""
A 4x4 vertical-line detector
============================

Each lit pixel is a spiking input.  Four hidden neurons apply 3x3 kernels
(excite on the centre column, inhibit on the side columns) and all feed a
single output neuron.
"""

import numpy as np

from wellnet import SamplerConfig, run_simulation
from wellnet.builders import VERTICAL_LINES, build_conv

sampler = SamplerConfig(thermalization_sweeps=10_000, measurement_sweeps=10_000, rng_seed=5)

images = {
    "col1": np.array(VERTICAL_LINES["col1"]),
    "col2": np.array(VERTICAL_LINES["col2"]),
    "row1": np.array([[0] * 4, [1] * 4, [0] * 4, [0] * 4]),
    "diagonal": np.eye(4, dtype=int),
    "blank": np.zeros((4, 4), dtype=int),
}

for name, img in images.items():
    rep = run_simulation(build_conv(img), sampler)
    hidden = [rep.neuron(f"h{r}{c}").activity_mean for r in range(2) for c in range(2)]
    print(f"{name:9s} out {rep.neuron('out').activity_mean:6.3f}   hidden "
          + " ".join(f"{h:5.2f}" for h in hidden))
