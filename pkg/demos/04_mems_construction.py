"""Maximally entangled mixed states from the singlet by two local maps.

For each p a pair of trace-preserving, non-dichroic Mueller matrices turns
the singlet into the MEMS of tangle p^2. The same maps are then realized as
single-photon linear-optics networks and compared against their Kraus sums.
"""

import numpy as np

from polarmap.mems import mems_mueller_pair, verify_mems
from polarmap.network import build_mems_network, figure_for, network_equals_kraus, run_network

np.set_printoptions(precision=4, suppress=True)

pair = mems_mueller_pair(0.8)
print("p = 0.8, region", pair.params.region)
print("M_A\n", pair.m_a)
print("M_B\n", pair.m_b)
print("shared Cloude spectrum", pair.spectrum)

print(f"\n{'p':>5} {'region':>6} {'tangle':>8} {'worst error':>12} {'network A':>10} {'network B':>10}")
for p in (0.0, 0.3, 2 / 3, 0.8, 1.0):
    r = verify_mems(p)
    worst = max(v for k, v in r.items() if k not in ("p", "region", "tangle"))
    na = network_equals_kraus("A", p)
    nb = network_equals_kraus("B", p)
    print(f"{p:5.2f} {r['region']:>6} {r['tangle']:8.4f} {worst:12.1e} {na:10.1e} {nb:10.1e}")

# branch states of the side-A network for a vertically polarized photon
spec = build_mems_network("A", 0.5)
branches, rho = run_network(spec, [0, 1])
print(f"\nside A, p = 0.5 (figure {figure_for('A', 0.5)}), input |V>")
for b in branches:
    print(f"  branch {b.label} (mode {b.mode}):", b.jones)
print("detected state\n", rho.real)
