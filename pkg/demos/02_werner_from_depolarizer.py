"""The singlet sent through an isotropic depolarizer gives a Werner state.

A map on one photon of an entangled pair acts on the reshuffled two-qubit
state exactly like a Mueller matrix acts on a coherency vector.
"""

import numpy as np

from polarmap import apply_to_singlet, concurrence_tangle, linear_entropy, werner_state
from polarmap.mueller import isotropic_depolarizer, real_from_std
from polarmap.qmaps import purity, purity_from_mueller

print(f"{'p':>5} {'S_L':>8} {'tangle':>8} {'purity':>8} {'Tr MM^T/4':>10} {'|rho - rho_W|':>14}")
for p in np.linspace(0, 1, 6):
    m = isotropic_depolarizer(p)
    rho = apply_to_singlet(m)
    tau = concurrence_tangle(rho)[1]
    gap = np.max(np.abs(rho - werner_state(p)))
    print(
        f"{p:5.2f} {linear_entropy(rho):8.4f} {tau:8.4f} {purity(rho):8.4f}"
        f" {purity_from_mueller(real_from_std(m)):10.4f} {gap:14.1e}"
    )

# entanglement survives only above p = 1/3
