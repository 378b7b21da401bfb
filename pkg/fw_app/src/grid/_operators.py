"""
Module provides the lattice realization of the Sakata-Taketani operators of a spin-1 particle
on orbital x spin(3) x rho(2) space, ordered as rho x spin x orbital.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse as sp

from src.algebra import build_spin_matrices, rho_matrices
from src.sectors import ParticleParams
from ._fields import FieldSpec, GridSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrbitalOperators:
    """Kinetic momentum on the lattice. pi2 is built from the same central differences as its components."""
    pi_x: sp.csr_matrix
    pi_y: sp.csr_matrix
    pi_z: sp.csr_matrix
    pi2: sp.csr_matrix


@dataclass(frozen=True)
class GridOperatorSet:
    """Sakata-Taketani operators M, E, O and H assembled on one lattice."""
    grid: GridSpec
    field: FieldSpec
    params: ParticleParams
    orbital: OrbitalOperators
    s_dot_b: sp.csr_matrix
    s_dot_pi: sp.csr_matrix
    m_block: sp.csr_matrix
    x_block: sp.csr_matrix
    mM: sp.csr_matrix
    eE: sp.csr_matrix
    oO: sp.csr_matrix
    h_st: sp.csr_matrix
    metric: sp.csr_matrix

    @property
    def pi_x(self) -> sp.csr_matrix:
        return self.orbital.pi_x

    @property
    def pi_y(self) -> sp.csr_matrix:
        return self.orbital.pi_y

    @property
    def pi_z(self) -> sp.csr_matrix:
        return self.orbital.pi_z


def _central_difference(n: int, h: float) -> sp.csr_matrix:
    return sp.diags([-np.ones(n - 1), np.ones(n - 1)], [-1, 1], format="csr") / (2 * h)


def _peierls_laplacian(grid: GridSpec, ax: np.ndarray, ay: np.ndarray, charge: float) -> sp.csr_matrix:
    """Compact five-point pi_x^2 + pi_y^2 with Peierls phases on the links."""
    n, h = grid.n_points, grid.spacing
    index = np.arange(grid.size).reshape(n, n)
    ax, ay = ax.reshape(n, n), ay.reshape(n, n)

    rows, cols, values = [index.ravel()], [index.ravel()], [np.full(grid.size, 4 / h ** 2, dtype=complex)]
    # A_x does not vary along x-links and A_y along y-links, so the midpoint rule is exact
    for a, b, potential in (
        (index[:-1, :], index[1:, :], ax[:-1, :]),
        (index[:, :-1], index[:, 1:], ay[:, :-1]),
    ):
        hop = -np.exp(-1j * charge * potential * h).ravel() / h ** 2
        rows += [a.ravel(), b.ravel()]
        cols += [b.ravel(), a.ravel()]
        values += [hop, hop.conj()]

    return sp.coo_matrix(
        (np.concatenate(values), (np.concatenate(rows), np.concatenate(cols))),
        shape=(grid.size, grid.size),
    ).tocsr()


def orbital_operators(field: FieldSpec, grid: GridSpec, params: ParticleParams) -> OrbitalOperators:
    """
    Kinetic momentum operators pi = p - eA on the lattice.
    :param field: field configuration.
    :param grid: lattice.
    :param params: particle parameters.
    :return: orbital operators.
    """
    n, h, e = grid.n_points, grid.spacing, params.e
    x, y = grid.mesh()
    ax, ay, az = field.vector_potential(x, y)

    d1 = _central_difference(n, h)
    eye = sp.identity(n, format="csr")
    pi_x = (-1j * sp.kron(d1, eye) - e * sp.diags(ax)).tocsr()
    pi_y = (-1j * sp.kron(eye, d1) - e * sp.diags(ay)).tocsr()
    pi_z = sp.diags((params.pz - e * az).astype(complex), format="csr")

    # (S.pi)^2 contains the same products, so pi^2 must not use a different stencil
    pi2 = (pi_x @ pi_x + pi_y @ pi_y + pi_z @ pi_z).tocsr()
    return OrbitalOperators(pi_x=pi_x, pi_y=pi_y, pi_z=pi_z, pi2=pi2)


def peierls_pi2(
    field: FieldSpec,
    grid: GridSpec,
    params: ParticleParams,
    transverse: bool = False
) -> sp.csr_matrix:
    """
    Nearest-neighbour pi^2 with link phases. It has no checkerboard copies of the low modes,
    so its spectrum is used for Landau levels and gauge checks.
    :param field: field configuration.
    :param grid: lattice.
    :param params: particle parameters.
    :param transverse: drop the pi_z^2 term.
    :return: orbital operator.
    """
    x, y = grid.mesh()
    ax, ay, az = field.vector_potential(x, y)
    laplacian = _peierls_laplacian(grid, ax, ay, params.e)
    if transverse:
        return laplacian
    return (laplacian + sp.diags((params.pz - params.e * az) ** 2)).tocsr()


def spin_kron(spin: np.ndarray, orbital: sp.spmatrix) -> sp.csr_matrix:
    """
    Spin matrix times orbital operator on spin x orbital space.
    :param spin: 3x3 matrix.
    :param orbital: orbital operator.
    :return: sparse operator.
    """
    return sp.kron(sp.csr_matrix(spin), orbital, format="csr")


def rho_kron(rho: np.ndarray, block: sp.spmatrix) -> sp.csr_matrix:
    """
    Rho matrix times spin x orbital operator.
    :param rho: 2x2 matrix.
    :param block: operator on spin x orbital space.
    :return: sparse operator.
    """
    return sp.kron(sp.csr_matrix(rho), block, format="csr")


def field_operators(field: FieldSpec, grid: GridSpec, orbital: OrbitalOperators) -> Tuple[sp.csr_matrix, sp.csr_matrix]:
    """
    S.B and S.pi on spin x orbital space.
    :param field: field configuration.
    :param grid: lattice.
    :param orbital: orbital operators.
    :return: (S.B, S.pi).
    """
    spins = build_spin_matrices()
    x, y = grid.mesh()
    components = field.magnetic_field(x, y)
    s_dot_b = sum(spin_kron(s, sp.diags(c)) for s, c in zip(spins.vector, components))
    s_dot_pi = sum(spin_kron(s, p) for s, p in zip(spins.vector, (orbital.pi_x, orbital.pi_y, orbital.pi_z)))
    return s_dot_b.tocsr(), s_dot_pi.tocsr()


def build_operators(field: FieldSpec, grid: GridSpec, params: ParticleParams) -> GridOperatorSet:
    """
    Assemble M = m + pi^2/2m - (e/m) S.B, E = -rho3 e(g-2)/2m S.B and
    O = i rho2 [pi^2/2m - (S.pi)^2/m + e(g-2)/2m S.B] on the lattice.
    :param field: field configuration.
    :param grid: lattice satisfying the resolution rule.
    :param params: particle parameters.
    :return: operator set.
    """
    grid.validate(field, params.e)
    m, e, g = params.m, params.e, params.g
    logger.debug("assembling operators: %s field on %d^2 nodes", field.kind, grid.n_points)

    orbital = orbital_operators(field, grid, params)
    s_dot_b, s_dot_pi = field_operators(field, grid, orbital)
    eye3 = sp.identity(3 * grid.size, format="csr")
    kinetic = spin_kron(np.eye(3), orbital.pi2) / (2 * m)

    m_block = (m * eye3 + kinetic - (e / m) * s_dot_b).tocsr()
    e_block = (-e * (g - 2) / (2 * m)) * s_dot_b
    x_block = (kinetic - (s_dot_pi @ s_dot_pi) / m + (e * (g - 2) / (2 * m)) * s_dot_b).tocsr()

    rho1, rho2, rho3 = rho_matrices()
    mM = rho_kron(np.eye(2), m_block)
    eE = rho_kron(rho3, e_block)
    oO = rho_kron(1j * rho2, x_block)
    metric = rho_kron(rho3, eye3)
    h_st = (metric @ mM + eE + oO).tocsr()

    return GridOperatorSet(
        grid=grid,
        field=field,
        params=params,
        orbital=orbital,
        s_dot_b=s_dot_b,
        s_dot_pi=s_dot_pi,
        m_block=m_block,
        x_block=x_block,
        mM=mM,
        eE=eE,
        oO=oO,
        h_st=h_st,
        metric=metric,
    )
