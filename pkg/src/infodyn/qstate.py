"""Pure states, density matrices, partial traces and Bloch vectors.

Basis ordering: qubit 1 is the most significant bit, so for two qubits the
amplitude vector is ``(a00, a01, a10, a11)`` with ``a_ij`` the coefficient of
``|i>_1 |j>_2``.  Qubits are numbered from 1 in every public function.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import BadIndex, MalformedStateFile, NotNormalized, WrongDimension
from .mathcore import HERMITIAN_TOL, PAULI_I, PAULI_X, PAULI_Y, PAULI_Z, hermitian_eig
from .rng import Xoshiro256pp

__all__ = [
    "PureState",
    "DensityMatrix",
    "BlochVector",
    "InitialProductSpec",
    "product_state",
    "density_of",
    "reduced_density",
    "partial_trace",
    "bloch_vector",
    "haar_random_state",
    "bell_state",
    "ghz_state",
    "w_state",
    "parse_state_json",
    "load_state_file",
    "state_to_json",
]

NORM_TOL = 1e-9
RENORMALIZE_TOL = 1e-6
MAX_QUBITS = 4


def _normalize(amps: np.ndarray) -> np.ndarray:
    norm = math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    if abs(norm - 1.0) > RENORMALIZE_TOL:
        raise NotNormalized(f"state norm {norm:.9g} is off unity by more than {RENORMALIZE_TOL}")
    return amps / norm


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized ``2**qubits`` amplitude vector.

    Use :meth:`from_amplitudes` for input that may carry rounding error; the
    plain constructor insists on unit norm to 1e-9.
    """

    qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if self.qubits < 1:
            raise WrongDimension("a state needs at least one qubit")
        if amps.size != 2**self.qubits:
            raise WrongDimension(
                f"{self.qubits} qubits need {2**self.qubits} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NotNormalized(f"squared norm {norm_sq:.12g} differs from 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, qubits: int | None = None) -> "PureState":
        """Build a state, silently renormalizing deviations up to 1e-6."""
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if qubits is None:
            qubits = int(round(math.log2(max(amps.size, 1))))
        if amps.size != 2**qubits:
            raise WrongDimension(f"{qubits} qubits need {2**qubits} amplitudes, got {amps.size}")
        return cls(qubits, _normalize(amps))

    @property
    def dim(self) -> int:
        return 2**self.qubits

    def amplitude(self, *bits: int) -> complex:
        """Amplitude of ``|b1 b2 ... bn>`` (qubit 1 first)."""
        if len(bits) != self.qubits:
            raise BadIndex(f"expected {self.qubits} bits, got {len(bits)}")
        index = 0
        for b in bits:
            index = (index << 1) | (b & 1)
        return complex(self.amplitudes[index])

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.qubits)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace matrix on ``qubits`` qubits.

    Hermiticity (1e-10) and trace (1e-10) are checked on construction.
    Positivity needs an eigendecomposition and is only checked by
    :meth:`check_positive`.
    """

    qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        d = 2**self.qubits
        if m.shape != (d, d):
            raise WrongDimension(f"expected a {d}x{d} matrix for {self.qubits} qubits, got {m.shape}")
        dev = float(np.max(np.abs(m - m.conj().T)))
        if dev > HERMITIAN_TOL:
            raise ValueError(f"density matrix is not Hermitian (deviation {dev:.3e})")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > HERMITIAN_TOL:
            raise ValueError(f"density matrix trace is {tr}, expected 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, m) -> "DensityMatrix":
        m = np.asarray(m, dtype=complex)
        qubits = int(round(math.log2(max(m.shape[0], 1))))
        return cls(qubits, m)

    @property
    def dim(self) -> int:
        return 2**self.qubits

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eig(self.matrix).eigenvalues

    def check_positive(self, tol: float = 1e-10) -> None:
        lowest = self.eigenvalues()[0]
        if lowest < -tol:
            raise ValueError(f"density matrix has negative eigenvalue {lowest:.3e}")

    def purity(self) -> float:
        m = self.matrix
        # Tr(m @ m) for Hermitian m is the squared Frobenius norm
        return float(np.sum(np.abs(m) ** 2))


@dataclass(frozen=True)
class BlochVector:
    rx: float
    ry: float
    rz: float

    @property
    def norm(self) -> float:
        return math.sqrt(self.rx**2 + self.ry**2 + self.rz**2)

    def as_array(self) -> np.ndarray:
        return np.array([self.rx, self.ry, self.rz])

    def to_density(self) -> DensityMatrix:
        """Return ``(I + r.sigma) / 2``."""
        m = 0.5 * (PAULI_I + self.rx * PAULI_X + self.ry * PAULI_Y + self.rz * PAULI_Z)
        return DensityMatrix(1, m)


@dataclass(frozen=True)
class InitialProductSpec:
    """``(alpha|0> + beta|1>)`` on qubit 1 followed by ``ancilla_count`` qubits in ``|0>``."""

    alpha: complex
    beta: complex
    ancilla_count: int = 1

    @classmethod
    def from_alpha_squared(cls, alpha_sq: float, ancilla_count: int = 1) -> "InitialProductSpec":
        if not 0.0 <= alpha_sq <= 1.0:
            raise ValueError(f"alpha^2 must lie in [0, 1], got {alpha_sq}")
        return cls(math.sqrt(alpha_sq), math.sqrt(1.0 - alpha_sq), ancilla_count)


def product_state(spec: InitialProductSpec) -> PureState:
    if spec.ancilla_count < 0:
        raise ValueError("ancilla_count must be non-negative")
    n = 1 + spec.ancilla_count
    omega = _normalize(np.array([spec.alpha, spec.beta], dtype=complex))
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = omega[0]
    amps[1 << (n - 1)] = omega[1]
    return PureState(n, amps)


def density_of(state: PureState) -> DensityMatrix:
    psi = state.amplitudes
    return DensityMatrix(state.qubits, np.outer(psi, psi.conj()))


def reduced_density(state: PureState, keep: Iterable[int]) -> DensityMatrix:
    """Partial trace of ``|psi><psi|`` over every qubit not in ``keep``.

    Kept qubits retain their relative order (lowest index most significant).
    """
    keep = sorted(set(keep))
    n = state.qubits
    if not keep:
        raise BadIndex("keep must name at least one qubit")
    if keep[0] < 1 or keep[-1] > n:
        raise BadIndex(f"qubit indices must lie in 1..{n}, got {keep}")
    traced = [q - 1 for q in range(1, n + 1) if q not in keep]
    t = state.tensor()
    rho = np.tensordot(t, t.conj(), axes=(traced, traced))
    d = 2 ** len(keep)
    return DensityMatrix(len(keep), rho.reshape(d, d))


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace a (possibly mixed) density matrix down to the qubits in ``keep``."""
    keep = sorted(set(keep))
    n = rho.qubits
    if not keep or keep[0] < 1 or keep[-1] > n:
        raise BadIndex(f"qubit indices must lie in 1..{n}, got {keep}")
    t = rho.matrix.reshape((2,) * (2 * n))
    # trace out the highest-numbered qubits first so axis numbers stay valid
    for q in sorted((q for q in range(1, n + 1) if q not in keep), reverse=True):
        m = t.ndim // 2
        t = np.trace(t, axis1=q - 1, axis2=m + q - 1)
    d = 2 ** len(keep)
    return DensityMatrix(len(keep), t.reshape(d, d))


def bloch_vector(rho: DensityMatrix) -> BlochVector:
    if rho.qubits != 1:
        raise WrongDimension(f"Bloch vectors need a single-qubit state, got {rho.qubits} qubits")
    comps = []
    for sigma in (PAULI_X, PAULI_Y, PAULI_Z):
        val = complex(np.trace(rho.matrix @ sigma))
        if abs(val.imag) > 1e-10:
            raise ValueError(f"Tr(rho sigma) has imaginary part {val.imag:.3e}")
        comps.append(val.real)
    return BlochVector(*comps)


def haar_random_state(n: int, seed: int) -> PureState:
    """Haar-distributed ``n``-qubit state from a normalized complex Gaussian vector.

    Amplitude ``k`` takes real and imaginary parts from the ``k``-th Box-Muller
    pair of ``Xoshiro256pp(seed)``, so the output is a pure function of
    ``(n, seed)``.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise WrongDimension(f"n must lie in 1..{MAX_QUBITS}, got {n}")
    gen = Xoshiro256pp(seed)
    amps = np.empty(2**n, dtype=complex)
    for k in range(2**n):
        re, im = gen.normal_pair()
        amps[k] = complex(re, im)
    amps /= np.linalg.norm(amps)
    return PureState(n, amps)


def bell_state() -> PureState:
    """``(|00> + |11>)/sqrt(2)``."""
    s = 1.0 / math.sqrt(2.0)
    return PureState(2, [s, 0, 0, s])


def ghz_state() -> PureState:
    s = 1.0 / math.sqrt(2.0)
    amps = np.zeros(8, dtype=complex)
    amps[0] = amps[7] = s
    return PureState(3, amps)


def w_state() -> PureState:
    s = 1.0 / math.sqrt(3.0)
    amps = np.zeros(8, dtype=complex)
    amps[1] = amps[2] = amps[4] = s
    return PureState(3, amps)


# -- state files ---------------------------------------------------------------


def parse_state_json(text: str) -> PureState:
    """Parse ``{"qubits": n, "amplitudes": [[re, im], ...]}``.

    Any structural problem, wrong amplitude count or a norm off by more than
    1e-6 raises :class:`MalformedStateFile`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedStateFile(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "qubits" not in doc or "amplitudes" not in doc:
        raise MalformedStateFile('expected an object with "qubits" and "amplitudes"')
    n = doc["qubits"]
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_QUBITS:
        raise MalformedStateFile(f'"qubits" must be an integer in 1..{MAX_QUBITS}')
    raw = doc["amplitudes"]
    if not isinstance(raw, list) or len(raw) != 2**n:
        got = len(raw) if isinstance(raw, list) else type(raw).__name__
        raise MalformedStateFile(f"{n} qubits need {2**n} amplitudes, got {got}")
    amps = []
    for i, entry in enumerate(raw):
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
        ):
            raise MalformedStateFile(f"amplitude {i} must be a [re, im] pair of numbers")
        if not all(math.isfinite(x) for x in entry):
            raise MalformedStateFile(f"amplitude {i} is not finite")
        amps.append(complex(entry[0], entry[1]))
    try:
        return PureState.from_amplitudes(amps, n)
    except NotNormalized as exc:
        raise MalformedStateFile(str(exc)) from exc


def load_state_file(path) -> PureState:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedStateFile(f"cannot read {path}: {exc}") from exc
    return parse_state_json(text)


def state_to_json(state: PureState) -> str:
    amps = [[float(a.real), float(a.imag)] for a in state.amplitudes]
    return json.dumps({"qubits": state.qubits, "amplitudes": amps})
