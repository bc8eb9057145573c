"""Mueller-matrix polarization optics read as one- and two-qubit quantum maps."""

from .cloude import KrausSet, classify, cloude_decompose, reshuffle
from .entanglement import (
    concurrence_tangle,
    dichroic_sample,
    generalized_werner,
    linear_entropy,
    monte_carlo_dichroic,
    werner_state,
)
from .exceptions import NonHermitianError, PolarmapError, ShapeError, UnphysicalError, ZeroIntensityError
from .mems import mems_kraus, mems_mueller_pair, mems_state, verify_mems
from .mueller import mueller_from_ensemble, mueller_from_jones, real_from_std, std_from_real
from .network import build_mems_network, run_network
from .qmaps import SINGLET, apply_bilocal, apply_one_qubit, apply_to_singlet

__version__ = "0.1.0"
