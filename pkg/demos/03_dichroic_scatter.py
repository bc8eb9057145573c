"""Monte Carlo of a Werner pair with a random linear diattenuator on one side.

Every sample lands on or below the Werner curve in the (S_L, tangle) plane;
dichroism cannot push a Werner state toward the MEMS frontier.
Writes scatter.csv and curves.csv next to this script.
"""

from collections import Counter
from pathlib import Path

import numpy as np

from polarmap.entanglement import (
    boundary_curves,
    curves_csv,
    monte_carlo_dichroic,
    scatter_csv,
    werner_tangle_at,
)

here = Path(__file__).parent
samples = monte_carlo_dichroic(10_000, seed=0)
(here / "scatter.csv").write_text(scatter_csv(samples))
(here / "curves.csv").write_text(curves_csv(boundary_curves(201)))

s_l = np.array([s.linear_entropy for s in samples])
tau = np.array([s.tangle for s in samples])
print("classes", dict(Counter(s.cls for s in samples)))
print("largest tau - tau_Werner(S_L):", np.max(tau - werner_tangle_at(s_l)))
print("entangled fraction:", np.mean(tau > 0))
