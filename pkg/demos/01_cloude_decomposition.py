"""From a random optical ensemble to a Kraus operator sum.

A scatterer is modelled as a weighted set of Jones matrices. Its Mueller
matrix is reshuffled into the Hermitian matrix H, whose eigenvectors are the
Kraus operators of the equivalent single-qubit quantum map.
"""

import numpy as np

from polarmap import classify, cloude_decompose, mueller_from_ensemble
from polarmap.mueller import diattenuator, hwp, retarder

np.set_printoptions(precision=4, suppress=True)

# three passive elements with unequal weights
ensemble = [
    (0.5, hwp(0.3)),
    (0.3, retarder([0, 0, 1], np.pi / 3)),
    (0.2, diattenuator(0.9, 0.4, 1.1)),
]
m_std, m_real = mueller_from_ensemble(ensemble)
print("real Mueller matrix\n", m_real)

ks = cloude_decompose(m_std)
print("Cloude eigenvalues", ks.weights, "sum", ks.weights.sum(), "= 2 M00 =", 2 * m_real[0, 0])

# rebuilding the Mueller matrix from the operator sum is exact to round-off
print("reconstruction error", np.max(np.abs(ks.mueller_std() - m_std)))

# the diattenuator makes the map dichroic, hence not trace-preserving
print(classify(m_real, basis="real"))
