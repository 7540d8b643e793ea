# Estimating the annealed non-exit probability deep in the tail.  Plain
# sampling of environments fails once the dominating fields become too rare,
# so the estimator tilts the conductance law toward the optimal low-lying
# shape (scaled by t^-r) and reweights.  The exact quadrature value on the
# single site keeps score.

import numpy as np

from rwrc.experiments import (
    ExperimentConfig,
    annealed_nonexit_is,
    annealed_nonexit_mc,
    annealed_nonexit_quadrature,
)
from rwrc.tail_law import TailLaw

law = TailLaw(1.0, 1.0)
times = [50.0, 100.0, 300.0, 1000.0]

config = ExperimentConfig.from_dict(
    {
        "domain": {"type": "box", "d": 1, "half_width": 0},
        "law": {"eta": 1.0, "D": 1.0},
        "times": times,
        "trials": 8000,
        "seed": 2,
    }
)

mc = annealed_nonexit_mc(config)
isa = annealed_nonexit_is(config)

print("t      exact log     mc log        is log        is rel se  ess")
for t, m, i in zip(times, mc, isa):
    exact = annealed_nonexit_quadrature(law, t)
    print(
        f"{t:<6g} {exact.log_estimate:<13.3f} {m.log_estimate:<13.3f} "
        f"{i.log_estimate:<13.3f} {i.rel_se:<10.3f} {i.ess:.0f}"
    )

print()
print("the mc column drifts low as t grows (its draws never see the rare")
print("fields that carry the mean); the tilted column tracks the exact one")

# the same machinery drives the girsanov-test and ldp-check subcommands,
# e.g.:  rwrc nonexit --method is --t 1000 --trials 10000 --seed 1 --out ne.csv
