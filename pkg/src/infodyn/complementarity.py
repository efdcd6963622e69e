"""Complementarity between local information and tangles.

For a pure state of n = 2 or 3 qubits

    sum_i I_i + 2 sum_{i<j} tau_ij (+ 3 tau_123) = n

and, per qubit k of a three-qubit state, ``I_k + sum_{j != k} tau_kj + tau_123 = 1``.
A mixed two-qubit state falls short of 2; the shortfall is reported as slack.
Larger registers raise :class:`UnsupportedSize` because no k-tangle for k >= 4
is defined here.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadIndex, UnsupportedSize, WrongDimension
from .infomeasure import local_info_fidelity, total_local_info
from .qstate import DensityMatrix, PureState, partial_trace, reduced_density
from .tangle import aggregate, two_tangle

__all__ = [
    "RESIDUAL_TOL",
    "ComplementarityReport",
    "residual_pure",
    "per_qubit_residual",
    "mixed_slack_2q",
]

# Shared by the CLI exit-code logic and the tests.
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class ComplementarityReport:
    n: int
    lhs: float
    residual: float
    per_qubit_residuals: tuple[float, ...] = field(default_factory=tuple)
    slack: float | None = None

    @property
    def ok(self) -> bool:
        return abs(self.residual) <= RESIDUAL_TOL


def _tau(report, i: int, j: int) -> float:
    return report.tau_pairs[(min(i, j), max(i, j))]


def residual_pure(state: PureState) -> ComplementarityReport:
    """Evaluate the left-hand side of the n-qubit identity and its residual."""
    n = state.qubits
    if n not in (2, 3):
        raise UnsupportedSize(
            f"the complementarity identity is only defined for 2 or 3 qubits, got {n}"
        )
    info = total_local_info(state, "fidelity")
    tangles = aggregate(state)
    lhs = info.total + tangles.aggregate
    per_qubit = ()
    if n == 3:
        per_qubit = tuple(
            _per_qubit(info.per_qubit[k - 1], tangles, n, k) for k in range(1, n + 1)
        )
    return ComplementarityReport(n=n, lhs=lhs, residual=lhs - n, per_qubit_residuals=per_qubit)


def _per_qubit(info_k: float, tangles, n: int, k: int) -> float:
    total = info_k + sum(_tau(tangles, k, j) for j in range(1, n + 1) if j != k)
    if tangles.tau_123 is not None:
        total += tangles.tau_123
    return total - 1.0


def per_qubit_residual(state: PureState, k: int) -> float:
    """``I_k + sum_{j != k} tau_kj (+ tau_123) - 1`` for qubit ``k`` (1-based)."""
    n = state.qubits
    if n not in (2, 3):
        raise UnsupportedSize(f"per-qubit relation needs 2 or 3 qubits, got {n}")
    if not 1 <= k <= n:
        raise BadIndex(f"qubit index must lie in 1..{n}, got {k}")
    info_k = local_info_fidelity(reduced_density(state, {k}))
    return _per_qubit(info_k, aggregate(state), n, k)


def mixed_slack_2q(rho: DensityMatrix) -> float:
    """``2 - (I_1 + I_2 + 2 tau_12)``; zero for pure inputs, positive otherwise."""
    if rho.qubits != 2:
        raise WrongDimension(f"expected a two-qubit density matrix, got {rho.qubits} qubits")
    i1 = local_info_fidelity(partial_trace(rho, {1}))
    i2 = local_info_fidelity(partial_trace(rho, {2}))
    return 2.0 - (i1 + i2 + 2.0 * two_tangle(rho))

