"""
Module provides lattice checks of the exactness conditions: commutator of M and O,
the squared-Hamiltonian identity, Landau levels and conserved polarization projections.
Residual norms are taken on the span of the lowest oscillator functions centred in the box
(interior projection), never on lattice eigenvectors.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.special import eval_hermite

from src.algebra import build_spin_matrices, rho_matrices
from src.errors import GFactorError, GridResolutionError, SupercriticalFieldError, UnsupportedFieldError
from src.sectors import ParticleParams
from ._fields import FieldSpec, GridSpec
from ._operators import GridOperatorSet, build_operators, orbital_operators, peierls_pi2, rho_kron, spin_kron

logger = logging.getLogger(__name__)

INTERIOR_MODES = 10
# Gaussian widths between the centre and the last node
INTERIOR_WIDTHS = 6
POWER_ITERATIONS = 20
MAX_DENSE_POINTS = 48
LANDAU_LOWEST = 12


@dataclass(frozen=True)
class CommutatorResidual:
    """Projected norms of [M, O], of its curl-B formula and of their difference."""
    direct_norm: float
    formula_norm: float
    relative_gap: float


@dataclass(frozen=True)
class IdentityResidual:
    """Projected norm of M^2 + O^2 - (m^2 + pi^2 - 2e S.B) and the norm of m^2 + pi^2."""
    residual: float
    scale: float


@dataclass(frozen=True)
class ProjectionResiduals:
    """Projected commutator norms of polarization projections with H_FW."""
    residuals: Dict[str, float]
    scale: float


@dataclass(frozen=True)
class RefinementStudy:
    """One residual measured on a sequence of grids."""
    n_points: Tuple[int, ...]
    spacings: Tuple[float, ...]
    residuals: Tuple[float, ...]
    order: float

    @property
    def monotone(self) -> bool:
        return all(b < a for a, b in zip(self.residuals, self.residuals[1:]))


def operator_norm(matrix: np.ndarray, iterations: int = POWER_ITERATIONS) -> float:
    """
    Largest singular value of a small dense matrix by power iteration on A^+ A.
    :param matrix: dense matrix.
    :param iterations: number of iterations.
    :return: norm estimate.
    """
    matrix = np.asarray(matrix)
    if not matrix.size or not np.any(matrix):
        return 0.0
    gram = matrix.conj().T @ matrix
    v = np.ones(gram.shape[0], dtype=complex) / math.sqrt(gram.shape[0])
    # a start vector orthogonal to the top singular space would stall, mix in the largest column
    v = v + gram[:, np.argmax(np.linalg.norm(gram, axis=0))]
    v /= np.linalg.norm(v)
    for _ in range(iterations):
        w = gram @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        v = w / norm
    return float(math.sqrt(max(np.real(np.vdot(v, gram @ v)), 0.0)))


def convergence_order(spacings: Sequence[float], residuals: Sequence[float], floor: float = 0.0) -> float:
    """
    Least-squares slope of log(residual) against log(spacing).
    :param spacings: lattice spacings.
    :param residuals: measured residuals.
    :param floor: residuals at or below it are roundoff and count as exact zeros.
    :return: observed order of convergence, inf if a residual is at the floor.
    """
    residuals = np.asarray(residuals, dtype=float)
    if np.any(residuals <= floor):
        return math.inf
    slope, _ = np.polyfit(np.log(spacings), np.log(residuals), 1)
    return float(slope)


def lowest_modes(operator: sp.spmatrix, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Lowest eigenpairs of a positive definite lattice operator by shift-invert Lanczos.
    :param operator: orbital operator.
    :param k: number of modes.
    :return: ascending eigenvalues and eigenvectors as columns.
    """
    v0 = np.ones(operator.shape[0], dtype=complex)
    values, vectors = spla.eigsh(operator.tocsc(), k=k, sigma=0.0, which="LM", v0=v0)
    order = np.argsort(values)
    return values[order], vectors[:, order]


def interior_basis(grid: GridSpec, k: int = INTERIOR_MODES) -> np.ndarray:
    """
    Orthonormal span of the k lowest two-dimensional oscillator functions sampled on the lattice.
    Their width is a fixed fraction of the box, so every grid samples the same continuum subspace.
    :param grid: lattice.
    :param k: number of functions.
    :return: orthonormal columns.
    """
    if not 0 < k <= grid.size:
        raise GridResolutionError("cannot fit {} interior functions on {} nodes".format(k, grid.size))
    width = grid.extent / INTERIOR_WIDTHS
    x, y = grid.mesh()
    u, v = x / width, y / width
    envelope = np.exp(-(u ** 2 + v ** 2) / 2)

    columns = []
    shell = 0
    while len(columns) < k:
        for nx in range(shell, -1, -1):
            columns.append(eval_hermite(nx, u) * eval_hermite(shell - nx, v) * envelope)
        shell += 1
    q, _ = np.linalg.qr(np.column_stack(columns[:k]))
    return q


def _spin_basis(modes: np.ndarray) -> np.ndarray:
    return np.kron(np.eye(3), modes)


def _projected(apply: Callable[[np.ndarray], np.ndarray], basis: np.ndarray) -> np.ndarray:
    return basis.conj().T @ apply(basis)


def _require_g2(params: ParticleParams) -> None:
    if params.g != 2:
        raise GFactorError("lattice exactness checks require g = 2, got g = {!r}".format(params.g))


def curl_formula_block(ops: GridOperatorSet) -> sp.csr_matrix:
    """
    S.(pi x J - J x pi) + S.grad(S.J) + grad(S.J).S with J = curl B, gradients acting on J only.
    :param ops: operator set.
    :return: operator on spin x orbital space.
    """
    spins = build_spin_matrices()
    grid = ops.grid
    n, h = grid.n_points, grid.spacing
    x, y = grid.mesh()
    current = ops.field.current(x, y)
    j = [sp.diags(c.astype(complex)) for c in current]
    pi = (ops.pi_x, ops.pi_y, ops.pi_z)

    block = sp.csr_matrix((3 * grid.size, 3 * grid.size), dtype=complex)
    for a, (b, c) in enumerate(((1, 2), (2, 0), (0, 1))):
        pi_cross_j = pi[b] @ j[c] - pi[c] @ j[b]
        j_cross_pi = j[b] @ pi[c] - j[c] @ pi[b]
        block = block + spin_kron(spins.vector[a], pi_cross_j - j_cross_pi)

    for a in range(2):
        for c in range(3):
            gradient = np.gradient(current[c].reshape(n, n), h, axis=a).ravel()
            if np.any(gradient):
                sym = spins.vector[a] @ spins.vector[c] + spins.vector[c] @ spins.vector[a]
                block = block + spin_kron(sym, sp.diags(gradient))
    return block.tocsr()


def commutator_mo_residual(
    field: FieldSpec,
    grid: GridSpec,
    params: ParticleParams,
    k: int = INTERIOR_MODES
) -> CommutatorResidual:
    """
    Compare [M, O] assembled by multiplication with -rho2 (e/4m^2) times the curl-B formula.
    :param field: field configuration.
    :param grid: lattice.
    :param params: particle parameters with g = 2.
    :param k: number of interior functions.
    :return: direct and formula norms and their relative gap.
    """
    _require_g2(params)
    ops = build_operators(field, grid, params)
    basis = np.kron(np.eye(2), _spin_basis(interior_basis(grid, k)))

    rho2 = rho_matrices()[1]
    formula = rho_kron(rho2, (-params.e / (4 * params.m ** 2)) * curl_formula_block(ops))

    direct = _projected(lambda v: ops.mM @ (ops.oO @ v) - ops.oO @ (ops.mM @ v), basis)
    predicted = _projected(lambda v: formula @ v, basis)

    direct_norm = operator_norm(direct)
    formula_norm = operator_norm(predicted)
    gap = operator_norm(direct - predicted) / max(direct_norm, np.finfo(float).tiny)
    logger.debug("[M,O] on %d^2: direct %.3e formula %.3e gap %.3e", grid.n_points, direct_norm, formula_norm, gap)
    return CommutatorResidual(direct_norm=direct_norm, formula_norm=formula_norm, relative_gap=gap)


def exact_fw_identity_residual(
    field: FieldSpec,
    grid: GridSpec,
    params: ParticleParams,
    k: int = INTERIOR_MODES
) -> IdentityResidual:
    """
    Norm of M^2 + O^2 - (m^2 + pi^2 - 2e S.B) on the upper (even) rho block.
    :param field: current-free field configuration.
    :param grid: lattice.
    :param params: particle parameters with g = 2.
    :param k: number of interior functions.
    :return: residual and scale.
    """
    _require_g2(params)
    if not field.is_current_free:
        raise UnsupportedFieldError("the squared-Hamiltonian identity is only claimed for current-free fields")
    ops = build_operators(field, grid, params)
    spin_basis = _spin_basis(interior_basis(grid, k))
    basis = np.vstack([spin_basis, np.zeros_like(spin_basis)])

    m2 = params.m ** 2
    kinetic = spin_kron(np.eye(3), ops.orbital.pi2)
    radicand = rho_kron(np.eye(2), m2 * sp.identity(kinetic.shape[0]) + kinetic - 2 * params.e * ops.s_dot_b)

    residual = _projected(lambda v: ops.mM @ (ops.mM @ v) + ops.oO @ (ops.oO @ v) - radicand @ v, basis)
    scale = _projected(lambda v: m2 * v + kinetic @ v, spin_basis)
    return IdentityResidual(residual=operator_norm(residual), scale=operator_norm(scale))


def landau_spectrum_grid(
    field: FieldSpec,
    grid: GridSpec,
    params: ParticleParams,
    k: int = LANDAU_LOWEST
) -> np.ndarray:
    """
    Lowest eigenvalues of the transverse pi_x^2 + pi_y^2 in a uniform field, nearest-neighbour stencil.
    :param field: uniform_z field.
    :param grid: lattice.
    :param params: particle parameters.
    :param k: number of eigenvalues.
    :return: ascending eigenvalues.
    """
    if field.kind != "uniform_z":
        raise UnsupportedFieldError("Landau levels need a uniform field, got {}".format(field.kind))
    grid.validate(field, params.e)
    values, _ = lowest_modes(peierls_pi2(field, grid, params, transverse=True), k)
    return values


def landau_level_estimates(values: np.ndarray, strength: float, levels: int = 3, cluster: int = 6) -> np.ndarray:
    """
    Locate Landau levels among lattice eigenvalues as the densest cluster between neighbouring midpoints.
    Edge states of a finite box spread between the levels, bulk states pile up on them.
    :param values: eigenvalues of the transverse pi^2.
    :param strength: |e| B.
    :param levels: number of levels to locate.
    :param cluster: number of eigenvalues forming a cluster.
    :return: level estimates for n = 0 .. levels - 1.
    """
    values = np.sort(np.asarray(values, dtype=float))
    estimates = []
    for n in range(levels):
        band = values[(values >= 2 * n * strength) & (values < (2 * n + 2) * strength)]
        if band.size < cluster:
            raise GridResolutionError("Landau level n={} is not resolved by {} eigenvalues".format(n, values.size))
        widths = band[cluster - 1:] - band[:band.size - cluster + 1]
        start = int(np.argmin(widths))
        estimates.append(float(np.median(band[start:start + cluster])))
    return np.array(estimates)


def landau_multiplicities(
    values: np.ndarray,
    strength: float,
    rtol: float,
    lowest: int = LANDAU_LOWEST
) -> Dict[int, int]:
    """
    How many of the lowest eigenvalues sit on each Landau value |e|B(2n+1).
    Only levels that the lowest eigenvalues reach are reported.
    :param values: eigenvalues of the transverse pi^2.
    :param strength: |e| B.
    :param rtol: relative distance from the level that still counts.
    :param lowest: number of eigenvalues to look at.
    :return: multiplicity per level n.
    """
    values = np.sort(np.asarray(values, dtype=float))
    if values.size < lowest:
        raise GridResolutionError("need {} eigenvalues, got {}".format(lowest, values.size))
    values = values[:lowest]
    counts = {}
    n = 0
    while strength * (2 * n + 1) * (1 - rtol) <= values[-1]:
        level = strength * (2 * n + 1)
        counts[n] = int(np.sum(np.abs(values - level) <= rtol * level))
        n += 1
    return counts


def gauge_shift_residual(grid: GridSpec, params: ParticleParams, B0: float, shift: float) -> float:
    """
    Change of the lowest pi^2 eigenvalue when a constant is added to A_z and absorbed into pz.
    :param grid: lattice.
    :param params: particle parameters.
    :param B0: uniform field strength.
    :param shift: constant added to A_z.
    :return: absolute change.
    """
    plain = FieldSpec("uniform_z", B0=B0)
    shifted = FieldSpec("uniform_z", B0=B0, az_shift=shift)
    moved = ParticleParams(m=params.m, e=params.e, g=params.g, B=params.B, pz=params.pz + params.e * shift)
    reference = lowest_modes(peierls_pi2(plain, grid, params), 1)[0][0]
    value = lowest_modes(peierls_pi2(shifted, grid, moved), 1)[0][0]
    return float(abs(value - reference))


def block_structure_residuals(ops: GridOperatorSet) -> Dict[str, float]:
    """
    Anticommutator of O and commutators of M, E with the metric rho3.
    :param ops: operator set.
    :return: max-abs residuals.
    """
    def max_abs(a: sp.spmatrix) -> float:
        return float(abs(a).max()) if a.nnz else 0.0

    metric = ops.metric
    return {
        "odd_anticommutes": max_abs(ops.oO @ metric + metric @ ops.oO),
        "even_m_commutes": max_abs(ops.mM @ metric - metric @ ops.mM),
        "even_e_commutes": max_abs(ops.eE @ metric - metric @ ops.eE),
    }


def pseudo_hermiticity_residual(ops: GridOperatorSet) -> float:
    """
    Relative max-abs of rho3 H^+ rho3 - H.
    :param ops: operator set.
    :return: residual.
    """
    h = ops.h_st
    difference = ops.metric @ h.conj().T @ ops.metric - h
    scale = abs(h).max()
    return float(abs(difference).max() / scale) if difference.nnz else 0.0


def _sqrt_radicand_operator(
    ops_orbital_pi2: sp.spmatrix,
    params: ParticleParams,
    B0: float
) -> Callable[[np.ndarray], np.ndarray]:
    """Dense square root of m^2 + pi^2 - 2eB S_z, block diagonal in s_z."""
    values, vectors = np.linalg.eigh(ops_orbital_pi2.toarray())
    size = values.size
    roots = []
    for s_z in (1, 0, -1):
        radicand = params.m ** 2 + values - 2 * params.e * B0 * s_z
        if radicand.min() <= 0:
            raise SupercriticalFieldError("supercritical lattice radicand {!r} for s_z = {}".format(radicand.min(), s_z))
        roots.append(np.sqrt(radicand))

    def apply(v: np.ndarray) -> np.ndarray:
        out = np.empty_like(v, dtype=complex)
        for block, root in enumerate(roots):
            rows = slice(block * size, (block + 1) * size)
            out[rows] = vectors @ (root[:, None] * (vectors.conj().T @ v[rows]))
        return out

    return apply


def projection_operators(ops_pi: Tuple[sp.spmatrix, sp.spmatrix, sp.spmatrix], pi2: sp.spmatrix,
                         B0: float, pz: float) -> Dict[str, sp.csr_matrix]:
    """
    Spin parts of the polarization projections for a field along z; the common rho3 factor squares away.
    :param ops_pi: (pi_x, pi_y, pi_z).
    :param pi2: lattice pi^2 including pi_z^2.
    :param B0: field strength.
    :param pz: longitudinal momentum.
    :return: projections keyed by name.
    """
    spins = build_spin_matrices()
    pi_x, pi_y, pi_z = ops_pi
    eye = sp.identity(pi2.shape[0], format="csr")
    s_z = spin_kron(spins.sz, eye)
    s_pi = spin_kron(spins.sx, pi_x) + spin_kron(spins.sy, pi_y) + spin_kron(spins.sz, pi_z)
    s_pib = B0 * (spin_kron(spins.sx, pi_y) - spin_kron(spins.sy, pi_x))
    s_bpib = B0 ** 2 * (spin_kron(spins.sx, pi_x) + spin_kron(spins.sy, pi_y))
    binormal = (pz * B0) * s_pi - B0 * spin_kron(spins.sz, pi2)
    return {
        "pi_z": s_z,
        "pi_cross_b": s_pib.tocsr(),
        "b_cross_pi_cross_b": s_bpib.tocsr(),
        "pi_dot_pi": s_pi.tocsr(),
        "binormal": binormal.tocsr(),
        "pi_pi_squared": (s_pi @ s_pi).tocsr(),
        "z_pib_anticommutator": (s_z @ s_pib + s_pib @ s_z).tocsr(),
    }


def conserved_projection_residuals(
    field: FieldSpec,
    grid: GridSpec,
    params: ParticleParams,
    k: int = INTERIOR_MODES
) -> ProjectionResiduals:
    """
    Commutators of polarization projections with H_FW = rho3 sqrt(m^2 + pi^2 - 2eB S_z).
    :param field: uniform_z field.
    :param grid: lattice with at most 48 points per axis.
    :param params: particle parameters with g = 2; pz enters pi_z.
    :param k: number of interior functions.
    :return: residual per projection and the energy scale.
    """
    _require_g2(params)
    if field.kind != "uniform_z":
        raise UnsupportedFieldError("conserved projections are checked for a uniform field only")
    if grid.n_points > MAX_DENSE_POINTS:
        raise GridResolutionError("dense square root is limited to {} points per axis".format(MAX_DENSE_POINTS))
    grid.validate(field, params.e)

    orbital = orbital_operators(field, grid, params)
    apply_root = _sqrt_radicand_operator(orbital.pi2, params, field.B0)
    modes = interior_basis(grid, k)
    basis = _spin_basis(modes)
    pz_local = params.pz - params.e * field.az_shift

    residuals = {}
    for name, projection in projection_operators(
            (orbital.pi_x, orbital.pi_y, orbital.pi_z), orbital.pi2, field.B0, pz_local).items():
        commutator = _projected(lambda v: projection @ apply_root(v) - apply_root(projection @ v), basis)
        residuals[name] = operator_norm(commutator)

    kinetic = operator_norm(_projected(lambda v: orbital.pi2 @ v, modes))
    scale = float(math.sqrt(params.m ** 2 + kinetic + 2 * abs(params.e * field.B0)))
    return ProjectionResiduals(residuals=residuals, scale=scale)


def refinement_study(
    measure: Callable[[GridSpec], float],
    grids: Sequence[GridSpec],
    floor: float = 0.0
) -> RefinementStudy:
    """
    Measure a residual on several grids and fit its convergence order.
    :param measure: residual as a function of the grid.
    :param grids: grids ordered from coarse to fine.
    :param floor: roundoff level passed to the order fit.
    :return: refinement study.
    """
    residuals = tuple(float(measure(grid)) for grid in grids)
    spacings = tuple(grid.spacing for grid in grids)
    logger.debug("refinement on %s: %s", [grid.n_points for grid in grids], ["%.3e" % r for r in residuals])
    return RefinementStudy(
        n_points=tuple(grid.n_points for grid in grids),
        spacings=spacings,
        residuals=residuals,
        order=convergence_order(spacings, residuals, floor),
    )
