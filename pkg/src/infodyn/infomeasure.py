"""Local information carried by single qubits.

Two measures are provided.  The fidelity-based one starts from the best
achievable overlap ``max_A <phi| A rho A^dag |phi>`` over single-qubit
unitaries; that maximum is the largest eigenvalue of ``rho``, i.e.
``(1 + |r|)/2`` for Bloch vector ``r``, whatever the reference ``|phi>``.
The Brukner-Zeilinger measure is ``2 Tr rho^2 - 1``.  Both equal ``|r|^2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import UnsupportedSize, WrongDimension
from .qstate import DensityMatrix, PureState, bloch_vector, reduced_density

__all__ = [
    "InfoReport",
    "optimal_fidelity",
    "local_info_fidelity",
    "local_info_bz",
    "total_local_info",
]

Measure = Literal["fidelity", "bz"]


@dataclass(frozen=True)
class InfoReport:
    per_qubit: tuple[float, ...]
    total: float

    @classmethod
    def from_values(cls, values) -> "InfoReport":
        vals = tuple(float(v) for v in values)
        return cls(per_qubit=vals, total=float(sum(vals)))


def _require_single(rho: DensityMatrix) -> None:
    if rho.qubits != 1:
        raise WrongDimension(f"expected a single-qubit density matrix, got {rho.qubits} qubits")


def optimal_fidelity(rho: DensityMatrix) -> float:
    """``(1 + |r|)/2``, the maximal fidelity reachable by a local unitary."""
    _require_single(rho)
    r = bloch_vector(rho).norm
    return 0.5 * (1.0 + min(r, 1.0))


def local_info_fidelity(rho: DensityMatrix) -> float:
    """``(2 F_o - 1)^2``; 0 for the maximally mixed state, 1 for pure states."""
    return (2.0 * optimal_fidelity(rho) - 1.0) ** 2


def local_info_bz(rho: DensityMatrix) -> float:
    _require_single(rho)
    return 2.0 * rho.purity() - 1.0


_MEASURES = {"fidelity": local_info_fidelity, "bz": local_info_bz}


def total_local_info(state: PureState, measure: Measure = "fidelity") -> InfoReport:
    """Sum of the chosen single-qubit measure over every qubit of ``state``."""
    if not 1 <= state.qubits <= 4:
        raise UnsupportedSize(f"local information is supported for 1..4 qubits, got {state.qubits}")
    try:
        fn = _MEASURES[measure]
    except KeyError:
        raise ValueError(f"unknown measure {measure!r}; choose 'fidelity' or 'bz'") from None
    vals = [fn(reduced_density(state, {q})) for q in range(1, state.qubits + 1)]
    return InfoReport.from_values(vals)

