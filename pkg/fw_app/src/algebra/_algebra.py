"""Module provides spin-1 and rho-matrix algebra together with Hermitian matrix functions."""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from src.errors import DimensionMismatchError, NotHermitianError, NotPositiveDefiniteError

logger = logging.getLogger(__name__)

HERMITIAN_RTOL = 1e-14

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class SpinOperatorSet:
    """Spin-1 matrices in the S_z basis and the quadratic combinations built from them."""
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    sz2: np.ndarray
    sxx_minus_syy: np.ndarray
    identity3: np.ndarray

    @property
    def vector(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Cartesian components as a tuple.
        :return: (sx, sy, sz).
        """
        return self.sx, self.sy, self.sz


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def build_spin_matrices() -> SpinOperatorSet:
    """
    Build the conventional spin-1 matrices.
    :return: spin operator set with precomputed S_z^2 and S_x^2 - S_y^2.
    """
    sx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / _SQRT2
    sy = 1j * np.array([[0, -1, 0], [1, 0, -1], [0, 1, 0]], dtype=complex) / _SQRT2
    sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    # exact entries instead of products to keep the zeros exact
    sz2 = np.diag([1.0, 0.0, 1.0]).astype(complex)
    sxx_minus_syy = np.zeros((3, 3), dtype=complex)
    sxx_minus_syy[0, 2] = sxx_minus_syy[2, 0] = 1.0
    return SpinOperatorSet(
        sx=_frozen(sx),
        sy=_frozen(sy),
        sz=_frozen(sz),
        sz2=_frozen(sz2),
        sxx_minus_syy=_frozen(sxx_minus_syy),
        identity3=_frozen(np.eye(3)),
    )


def rho_matrices() -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Pauli matrices acting in the particle/antiparticle (rho) space.
    :return: (rho1, rho2, rho3).
    """
    rho1 = np.array([[0, 1], [1, 0]], dtype=complex)
    rho2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    rho3 = np.array([[1, 0], [0, -1]], dtype=complex)
    return rho1, rho2, rho3


def polarization_operator(spins: SpinOperatorSet = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Components of the polarization operator rho3 x S on the 6-dimensional internal space.
    :param spins: spin matrices, built when omitted.
    :return: (Pi_x, Pi_y, Pi_z) as 6x6 matrices.
    """
    spins = spins or build_spin_matrices()
    rho3 = rho_matrices()[2]
    return tuple(np.kron(rho3, s) for s in spins.vector)


def _check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("cannot combine matrices of shapes {} and {}".format(a.shape, b.shape))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Commutator of two square matrices.
    :param a: left matrix.
    :param b: right matrix.
    :return: ab - ba.
    """
    a, b = np.asarray(a), np.asarray(b)
    _check_same_shape(a, b)
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Anticommutator of two square matrices.
    :param a: left matrix.
    :param b: right matrix.
    :return: ab + ba.
    """
    a, b = np.asarray(a), np.asarray(b)
    _check_same_shape(a, b)
    return a @ b + b @ a


def is_hermitian(a: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    """
    Check the Hermiticity flag condition max|A - A^+| <= rtol * max|A|.
    :param a: square matrix.
    :param rtol: relative tolerance.
    :return: whether the matrix is Hermitian within tolerance.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    scale = np.max(np.abs(a)) if a.size else 0.0
    return np.max(np.abs(a - a.conj().T), initial=0.0) <= rtol * scale


def _symmetrized(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if not is_hermitian(a):
        raise NotHermitianError("matrix of shape {} is not Hermitian".format(a.shape))
    return (a + a.conj().T) / 2


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude component of every column real positive."""
    vectors = vectors.copy()
    for k in range(vectors.shape[1]):
        column = vectors[:, k]
        pivot = column[np.argmax(np.abs(column))]
        if pivot != 0:
            vectors[:, k] = column * (abs(pivot) / pivot)
    return vectors


def eig_hermitian(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian matrix.
    :param a: Hermitian matrix.
    :return: ascending eigenvalues and orthonormal eigenvectors as columns.
    """
    values, vectors = np.linalg.eigh(_symmetrized(a))
    return values, _fix_phases(vectors)


def sqrt_psd(a: np.ndarray) -> np.ndarray:
    """
    Principal square root of a Hermitian positive definite matrix.
    :param a: Hermitian positive definite matrix.
    :return: Hermitian square root.
    """
    values, vectors = eig_hermitian(a)
    if values[0] <= 0:
        raise NotPositiveDefiniteError(float(values[0]))
    root = (vectors * np.sqrt(values)) @ vectors.conj().T
    return (root + root.conj().T) / 2


def exp_unitary(h: np.ndarray, t: float) -> np.ndarray:
    """
    Evolution operator exp(-i h t) of a Hermitian generator.
    :param h: Hermitian matrix.
    :param t: time.
    :return: unitary matrix.
    """
    values, vectors = eig_hermitian(h)
    return (vectors * np.exp(-1j * values * t)) @ vectors.conj().T


def expectation(operator: np.ndarray, state: np.ndarray) -> complex:
    """
    Quadratic form <state|operator|state>.
    :param operator: square matrix.
    :param state: state vector.
    :return: expectation value.
    """
    return np.vdot(state, operator @ state)
