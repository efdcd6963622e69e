"""Dense complex linear algebra for few-qubit operators.

Matrices are plain ``numpy`` complex128 arrays.  The Hermitian eigensolver is
a cyclic complex Jacobi iteration; it is slow in general but exact enough
(off-diagonal mass driven to ~1e-13 relative) for the 2x2 ... 16x16
matrices this package deals with.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotHermitian, WrongDimension

__all__ = [
    "SpectralDecomposition",
    "HERMITIAN_TOL",
    "as_matrix",
    "kron",
    "kron_all",
    "hermitian_eig",
    "exp_hermitian",
    "PAULI_I",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
]

HERMITIAN_TOL = 1e-10
CONVERGENCE_TOL = 1e-13
MAX_SWEEPS = 100
MAX_DIM = 16

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _m in (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z):
    _m.setflags(write=False)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite square complex128 array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise WrongDimension(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or infinite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry ``(i*db + k, j*db + l)`` is ``a[i, j] * b[k, l]``."""
    a = as_matrix(a)
    b = as_matrix(b)
    da, db = a.shape[0], b.shape[0]
    out = a[:, None, :, None] * b[None, :, None, :]
    return out.reshape(da * db, da * db)


def kron_all(*factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = kron(out, f)
    return out


def _off_norm(a: np.ndarray) -> float:
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return float(np.linalg.norm(off))


def hermitian_eig(m) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square matrix, Hermitian to within 1e-10 entrywise.  It is
        symmetrized as ``(m + m^H)/2`` before solving.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues in ascending order; eigenvector columns aligned with them.

    Raises
    ------
    NotHermitian
        If ``m`` deviates from its conjugate transpose by more than 1e-10.
    NoConvergence
        If the off-diagonal norm is still above tolerance after 100 sweeps.
    """
    a = as_matrix(m)
    n = a.shape[0]
    if n > MAX_DIM:
        raise WrongDimension(f"dimension {n} exceeds supported maximum {MAX_DIM}")
    dev = np.max(np.abs(a - a.conj().T))
    if dev > HERMITIAN_TOL:
        raise NotHermitian(f"matrix deviates from Hermitian by {dev:.3e}")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)

    scale = max(1.0, float(np.linalg.norm(a)))
    target = CONVERGENCE_TOL * scale
    # rotations below this magnitude cannot change anything at double precision
    negligible = 1e-300

    for _ in range(MAX_SWEEPS + 1):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                mag = abs(apq)
                if mag <= negligible:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                phase = apq / mag
                # columns: [p q] <- [p q] @ G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                g10 = -s * phase.conjugate()
                g11 = c * phase.conjugate()
                cp = a[:, p].copy()
                cq = a[:, q]
                a[:, p] = c * cp + g10 * cq
                a[:, q] = s * cp + g11 * cq
                rp = a[p, :].copy()
                rq = a[q, :]
                a[p, :] = c * rp + g10.conjugate() * rq
                a[q, :] = s * rp + g11.conjugate() * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp + g10 * vq
                v[:, q] = s * vp + g11 * vq
    else:
        raise NoConvergence(
            f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps "
            f"(off-diagonal norm {_off_norm(a):.3e})"
        )

    w = np.real(np.diagonal(a)).copy()
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(eigenvalues=w[order], eigenvectors=v[:, order])


def exp_hermitian(m, t: float) -> np.ndarray:
    """Return ``exp(-i t m)`` for Hermitian ``m`` via its spectral decomposition."""
    dec = hermitian_eig(m)
    return spectral_propagator(dec, t)


def spectral_propagator(dec: SpectralDecomposition, t: float) -> np.ndarray:
    v = dec.eigenvectors
    phases = np.exp(-1j * dec.eigenvalues * t)
    return (v * phases) @ v.conj().T
