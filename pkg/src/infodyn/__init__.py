"""Local and nonlocal information dynamics of isolated two- and three-qubit systems."""

from .complementarity import ComplementarityReport, mixed_slack_2q, per_qubit_residual, residual_pure
from .dynamics import CouplingParams, TimeGrid, evolve, hamiltonian_2q, hamiltonian_3q, ising_closed_form, trajectory
from .infomeasure import InfoReport, local_info_bz, local_info_fidelity, optimal_fidelity, total_local_info
from .qstate import (
    BlochVector,
    DensityMatrix,
    InitialProductSpec,
    PureState,
    bloch_vector,
    density_of,
    haar_random_state,
    product_state,
    reduced_density,
)
from .tangle import TangleReport, aggregate, concurrence_lambdas, three_tangle, two_tangle

__version__ = "0.1.0"
