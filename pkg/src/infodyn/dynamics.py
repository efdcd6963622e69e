"""Coupling Hamiltonians and exact time evolution of few-qubit pure states.

Units have hbar = 1.  Evolution always goes through the spectral
decomposition ``|psi(t)> = sum_k g_k exp(-i e_k t) |phi_k>`` with
``g_k = <phi_k|psi(0)>``; there is no time-stepping.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import DimensionMismatch, NotNormalized
from .infomeasure import InfoReport, total_local_info
from .mathcore import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, SpectralDecomposition, as_matrix, hermitian_eig, kron_all
from .qstate import PureState
from .tangle import TangleReport, aggregate

__all__ = [
    "CouplingParams",
    "TimeGrid",
    "TimeSeriesRecord",
    "DEFAULT_GRID",
    "hamiltonian_2q",
    "hamiltonian_3q",
    "hamiltonian",
    "evolve",
    "ising_closed_form",
    "trajectory",
]


@dataclass(frozen=True)
class CouplingParams:
    """Coefficients of the XX, YY and ZZ couplings."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.c1, self.c2, self.c3)):
            raise ValueError("coupling parameters must be finite")

    @classmethod
    def ising(cls, c: float = 1.0) -> "CouplingParams":
        return cls(c, 0.0, 0.0)

    @classmethod
    def xy(cls, c: float = 1.0) -> "CouplingParams":
        return cls(c, c, 0.0)

    @classmethod
    def preset(cls, name: str, c: float = 1.0) -> "CouplingParams":
        try:
            return {"ising": cls.ising, "xy": cls.xy}[name](c)
        except KeyError:
            raise ValueError(f"unknown preset {name!r}") from None


@dataclass(frozen=True)
class TimeGrid:
    t_start: float
    t_end: float
    samples: int

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("a time grid needs at least 2 samples")
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
            raise ValueError("grid endpoints must be finite")
        if not self.t_end > self.t_start:
            raise ValueError("t_end must exceed t_start")

    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.samples)


DEFAULT_GRID = TimeGrid(0.0, 2.0 * math.pi, 401)


@dataclass(frozen=True)
class TimeSeriesRecord:
    t: float
    info: InfoReport
    tangles: TangleReport
    residual: float


def _pair_coupling(n: int, i: int, j: int, c: CouplingParams) -> np.ndarray:
    out = np.zeros((2**n, 2**n), dtype=complex)
    for coef, pauli in ((c.c1, PAULI_X), (c.c2, PAULI_Y), (c.c3, PAULI_Z)):
        if coef == 0.0:
            continue
        factors = [PAULI_I] * n
        factors[i - 1] = pauli
        factors[j - 1] = pauli
        out += coef * kron_all(*factors)
    return out


def hamiltonian(n: int, c: CouplingParams) -> np.ndarray:
    """Same coupling on every unordered qubit pair of an ``n``-qubit register."""
    h = np.zeros((2**n, 2**n), dtype=complex)
    for i, j in combinations(range(1, n + 1), 2):
        h += _pair_coupling(n, i, j, c)
    return h


def hamiltonian_2q(c: CouplingParams) -> np.ndarray:
    return hamiltonian(2, c)


def hamiltonian_3q(c: CouplingParams) -> np.ndarray:
    """Pairs (1,2), (1,3) and (2,3), each counted once."""
    return hamiltonian(3, c)


def _check_dims(h: np.ndarray, psi0: PureState) -> None:
    if h.shape[0] != psi0.dim:
        raise DimensionMismatch(
            f"Hamiltonian is {h.shape[0]}x{h.shape[0]} but the state has {psi0.dim} amplitudes"
        )


def _evolve_spectral(dec: SpectralDecomposition, psi0: PureState, t: float) -> PureState:
    v = dec.eigenvectors
    gamma = v.conj().T @ psi0.amplitudes
    amps = v @ (gamma * np.exp(-1j * dec.eigenvalues * t))
    return PureState(psi0.qubits, amps)


def evolve(h, psi0: PureState, t: float) -> PureState:
    """``exp(-i t h) |psi0>``."""
    h = as_matrix(h)
    _check_dims(h, psi0)
    return _evolve_spectral(hermitian_eig(h), psi0, t)


def ising_closed_form(alpha: complex, beta: complex, c: float, t: float) -> PureState:
    """Analytic state for ``c XX`` acting on ``(alpha|0> + beta|1>)|0>``::

        alpha cos(ct)|00> - i beta sin(ct)|01> + beta cos(ct)|10> - i alpha sin(ct)|11>
    """
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > 1e-9:
        raise NotNormalized("|alpha|^2 + |beta|^2 must equal 1")
    co, si = math.cos(c * t), math.sin(c * t)
    amps = [alpha * co, -1j * beta * si, beta * co, -1j * alpha * si]
    return PureState(2, amps)


def record(t: float, state: PureState) -> TimeSeriesRecord:
    info = total_local_info(state, "fidelity")
    tangles = aggregate(state)
    residual = info.total + tangles.aggregate - state.qubits
    return TimeSeriesRecord(float(t), info, tangles, residual)


def trajectory(h, psi0: PureState, grid: TimeGrid = DEFAULT_GRID) -> list[TimeSeriesRecord]:
    """Local information, tangles and complementarity residual on every grid time.

    ``h`` is diagonalized once; each sample is then independent.
    """
    h = as_matrix(h)
    _check_dims(h, psi0)
    dec = hermitian_eig(h)
    return [record(t, _evolve_spectral(dec, psi0, t)) for t in grid.times()]
