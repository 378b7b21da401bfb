"""
Module provides the FW Hamiltonian of a spin-1 particle with an anomalous magnetic moment
in a uniform magnetic field, reduced to one Landau sector.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

import numpy as np

from src.algebra import anticommutator, build_spin_matrices, eig_hermitian
from src.errors import ConfigurationError, NotPositiveDefiniteError, SupercriticalFieldError, UnnormalizedStateError
from src.sectors import LandauSector, ParticleParams, make_sector
from ._normal import square_root_matrix

logger = logging.getLogger(__name__)

H0_POLICIES = ("zero", "epsilon_prime")
NORM_ATOL = 1e-12


@dataclass(frozen=True)
class ReducedHamiltonian:
    """H0 + omega0 S_z + zeta S_z^2 + kappa (S_x^2 - S_y^2) in the S_z basis."""
    h0: float
    omega0: float
    zeta: float
    kappa: float
    matrix: np.ndarray

    @classmethod
    def from_coefficients(cls, h0: float, omega0: float, zeta: float, kappa: float) -> "ReducedHamiltonian":
        """
        Assemble the matrix from its coefficients.
        :param h0: spin-independent offset.
        :param omega0: spin rotation frequency.
        :param zeta: tensor frequency.
        :param kappa: mixing coefficient of s_z = +1 and -1.
        :return: reduced Hamiltonian.
        """
        matrix = np.array([
            [h0 + omega0 + zeta, 0, kappa],
            [0, h0, 0],
            [kappa, 0, h0 - omega0 + zeta],
        ], dtype=complex)
        matrix.setflags(write=False)
        return cls(h0=h0, omega0=omega0, zeta=zeta, kappa=kappa, matrix=matrix)


@dataclass(frozen=True)
class StationaryTriplet:
    """Eigenenergies and eigenvectors labelled by s = +1, 0, -1."""
    energies: Tuple[float, float, float]
    vectors: Tuple[np.ndarray, np.ndarray, np.ndarray]
    beta: float
    bigY: float
    bigZ: float


@dataclass(frozen=True)
class PolarizationObservables:
    """Vector and tensor polarization of a spin state."""
    sz_mean: float
    sz2_mean: float
    s_piB2_mean: float
    s_pi2_mean: float
    cross_means: Dict[str, float]

    @property
    def sum_rule(self) -> float:
        return self.s_piB2_mean + self.s_pi2_mean + self.sz2_mean


def _require_transverse(params: ParticleParams) -> None:
    if params.pz != 0:
        raise ConfigurationError("pz must be 0 for the anomalous-moment Hamiltonian, got {!r}".format(params.pz))


def _kinetic_excess(sector: LandauSector, params: ParticleParams) -> float:
    # eps' - m without cancellation
    return sector.pi2 / (sector.eps_prime + params.m)


def particle_at_rest(params: ParticleParams) -> LandauSector:
    """
    Sector with pi^2 = 0, i.e. eps' = m.
    :param params: particle parameters.
    :return: synthetic sector of a particle at rest.
    """
    return LandauSector(n=0, pi2=0.0, eps_prime=params.m, b=2 * params.e * params.B / params.m ** 2)


def frequencies(params: ParticleParams, sector: LandauSector) -> Tuple[float, float, float]:
    """
    Coefficients of the reduced Hamiltonian.
    :param params: particle parameters with pz = 0.
    :param sector: Landau sector.
    :return: (omega0, zeta, kappa).
    """
    _require_transverse(params)
    m, e, g, B = params.m, params.e, params.g, params.B
    eps = sector.eps_prime
    omega0 = -e * (g - 2) * B / (2 * m)
    zeta = -e ** 2 * g * (g - 2) * B ** 2 / (8 * m ** 2 * eps)
    kappa = -e ** 2 * (g - 1) * (g - 2) * _kinetic_excess(sector, params) * B ** 2 / (8 * m ** 3 * eps)
    return omega0, zeta, kappa


def _y_z(beta: float) -> Tuple[float, float]:
    root = math.sqrt(1 + beta ** 2)
    return 1 / root, math.sqrt(2 * root * (1 + root))


def beta_parameters(params: ParticleParams, sector: LandauSector) -> Tuple[float, float, float]:
    """
    Mixing parameter beta = kappa/omega0 and the normalizations Y, Z.
    :param params: particle parameters with pz = 0.
    :param sector: Landau sector.
    :return: (beta, Y, Z); beta is 0 for g = 2 where both kappa and omega0 vanish.
    """
    _require_transverse(params)
    if params.g == 2:
        return 0.0, 1.0, 2.0
    m, e, g, B = params.m, params.e, params.g, params.B
    beta = e * (g - 1) * _kinetic_excess(sector, params) * B / (4 * m ** 2 * sector.eps_prime)
    bigY, bigZ = _y_z(beta)
    return beta, bigY, bigZ


def reduced_hamiltonian(
    params: ParticleParams,
    sector: LandauSector,
    h0_policy: str = "epsilon_prime",
    force_kappa_zero: bool = False
) -> ReducedHamiltonian:
    """
    Reduced 3x3 FW Hamiltonian of one Landau sector.
    :param params: particle parameters with pz = 0.
    :param sector: Landau sector.
    :param h0_policy: "zero" or "epsilon_prime", value of the spin-independent term.
    :param force_kappa_zero: drop the s_z = +1/-1 mixing term.
    :return: reduced Hamiltonian.
    """
    if h0_policy not in H0_POLICIES:
        raise ConfigurationError("unknown h0 policy {!r}, expected one of {}".format(h0_policy, H0_POLICIES))
    omega0, zeta, kappa = frequencies(params, sector)
    if force_kappa_zero:
        logger.info("kappa forced to 0 (was %r)", kappa)
        kappa = 0.0
    h0 = sector.eps_prime if h0_policy == "epsilon_prime" else 0.0
    return ReducedHamiltonian.from_coefficients(h0, omega0, zeta, kappa)


def stationary_states(rh: ReducedHamiltonian) -> StationaryTriplet:
    """
    Closed-form eigen system of the reduced Hamiltonian with all phases set to 0.
    :param rh: reduced Hamiltonian.
    :return: energies and vectors for s = +1, 0, -1.
    """
    h0, omega0, zeta, kappa = rh.h0, rh.omega0, rh.zeta, rh.kappa
    psi0 = np.array([0, 1, 0], dtype=complex)

    if omega0 != 0 or kappa == 0:
        beta = kappa / omega0 if omega0 != 0 else 0.0
        bigY, bigZ = _y_z(beta)
        root = math.sqrt(1 + beta ** 2)
        psi_plus = np.array([(1 + root) / bigZ, 0, beta / bigZ], dtype=complex)
        psi_minus = np.array([-beta / bigZ, 0, (1 + root) / bigZ], dtype=complex)
        splitting = omega0 * root
    else:
        # omega0 = 0 with kappa != 0 is the beta -> infinity limit
        beta, bigY, bigZ = math.inf, 0.0, math.inf
        sign = math.copysign(1.0, kappa)
        psi_plus = np.array([1, 0, sign], dtype=complex) / math.sqrt(2)
        psi_minus = np.array([-sign, 0, 1], dtype=complex) / math.sqrt(2)
        splitting = abs(kappa)

    energies = (h0 + splitting + zeta, h0, h0 - splitting + zeta)
    return StationaryTriplet(
        energies=energies,
        vectors=(psi_plus, psi0, psi_minus),
        beta=beta,
        bigY=bigY,
        bigZ=bigZ,
    )


def polarization_expectations(state: np.ndarray) -> PolarizationObservables:
    """
    Vector and tensor polarization of a normalized spin state.
    :param state: complex 3-vector in the S_z basis.
    :return: polarization observables.
    """
    state = np.asarray(state, dtype=complex)
    norm = np.linalg.norm(state)
    if abs(norm - 1) > NORM_ATOL:
        raise UnnormalizedStateError("state norm is {!r}, expected 1".format(norm))

    spins = build_spin_matrices()

    def mean(operator: np.ndarray) -> float:
        return float(np.real(np.vdot(state, operator @ state)))

    cross_means = {
        "sx": mean(spins.sx),
        "sy": mean(spins.sy),
        "sxsy": mean(anticommutator(spins.sx, spins.sy)),
        "szsx": mean(anticommutator(spins.sz, spins.sx)),
        "sysz": mean(anticommutator(spins.sy, spins.sz)),
    }
    return PolarizationObservables(
        sz_mean=mean(spins.sz),
        sz2_mean=mean(spins.sz2),
        s_piB2_mean=mean(spins.sx @ spins.sx),
        s_pi2_mean=mean(spins.sy @ spins.sy),
        cross_means=cross_means,
    )


def hamiltonian_full_sector(params: ParticleParams, sector: LandauSector) -> np.ndarray:
    """
    Sector realization of the anomalous-moment FW Hamiltonian up to B^3 terms, with
    S.pi -> S_y |pi| and S.(pi x B) -> S_x |pi| B.
    :param params: particle parameters with pz = 0.
    :param sector: Landau sector.
    :return: 3x3 Hermitian matrix.
    """
    _require_transverse(params)
    spins = build_spin_matrices()
    m, e, g, B = params.m, params.e, params.g, params.B
    pi2 = sector.pi2

    radicand = (
        sector.eps_prime ** 2 * spins.identity3
        - 2 * e * B * spins.sz
        - (e ** 2 * g * (g - 2) * B ** 2 / (4 * m ** 2)) * spins.sz2
    )
    values, vectors = eig_hermitian(radicand)
    if values[0] <= 0:
        exc = NotPositiveDefiniteError(float(values[0]))
        raise SupercriticalFieldError("supercritical field in sector n={}: {}".format(sector.n, exc)) from exc
    roots = np.sqrt(values)
    eps = (vectors * roots) @ vectors.conj().T
    inverse = (vectors / (roots * (roots + m))) @ vectors.conj().T

    polarizability = (
        pi2 * B ** 2 * (spins.sy @ spins.sy - spins.sx @ spins.sx)
        - e * (g - 1) * B ** 3 * spins.sz
    )
    correction = e ** 2 * (g - 1) * (g - 2) / (16 * m ** 3) * anticommutator(inverse, polarizability)

    full = eps - (e * (g - 2) * B / (2 * m)) * spins.sz + correction
    return (full + full.conj().T) / 2


def amm_reference(params: ParticleParams, sector: LandauSector) -> np.ndarray:
    """
    Reduced Hamiltonian with H0 replaced by the g=2 square-root block.
    :param params: particle parameters with pz = 0.
    :param sector: Landau sector.
    :return: 3x3 Hermitian matrix.
    """
    rh = reduced_hamiltonian(params, sector, h0_policy="zero")
    return square_root_matrix(sector, params) + rh.matrix


def amm_eigenvalue_gap(params: ParticleParams, sector: LandauSector) -> float:
    """
    Largest eigenvalue difference between the full-sector and the reduced Hamiltonian.
    :param params: particle parameters with pz = 0.
    :param sector: Landau sector.
    :return: max |dE|.
    """
    full, _ = eig_hermitian(hamiltonian_full_sector(params, sector))
    reduced, _ = eig_hermitian(amm_reference(params, sector))
    return float(np.max(np.abs(full - reduced)))


def amm_scaling_exponent(params: ParticleParams, n: int, fields: Iterable[float]) -> float:
    """
    Log-log slope of the eigenvalue gap against the field strength.
    :param params: particle parameters, B is overridden by each field.
    :param n: orbital quantum number.
    :param fields: field strengths.
    :return: fitted exponent.
    """
    fields = list(fields)
    gaps = []
    for B in fields:
        p = ParticleParams(m=params.m, e=params.e, g=params.g, B=B, pz=params.pz)
        gaps.append(amm_eigenvalue_gap(p, make_sector(p, n)))
    slope, _ = np.polyfit(np.log(fields), np.log(gaps), 1)
    return float(slope)


def polarizability_identity_residual_scalar(sector: LandauSector, B: float) -> float:
    """
    Residual of B^2 (S.pi)^2 + [S.(pi x B)]^2 + pi^2 (S.B)^2 - 2 (pi x B)^2 under the sector replacements.
    :param sector: Landau sector.
    :param B: field strength.
    :return: max-norm residual.
    """
    spins = build_spin_matrices()
    pi2 = sector.pi2
    total = (
        B ** 2 * pi2 * (spins.sy @ spins.sy)
        + pi2 * B ** 2 * (spins.sx @ spins.sx)
        + pi2 * B ** 2 * spins.sz2
        - 2 * B ** 2 * pi2 * spins.identity3
    )
    return float(np.max(np.abs(total)))


def substitution_map(rh: ReducedHamiltonian, triplet: StationaryTriplet) -> Dict[str, float]:
    """
    Quantities that replace the tensor-dynamics parameters A, B - A and omega'.
    :param rh: reduced Hamiltonian.
    :param triplet: its stationary states.
    :return: mapping of parameter name to value.
    """
    return {
        "A": rh.kappa,
        "B_minus_A": rh.zeta,
        "omega_prime": (triplet.energies[0] - triplet.energies[2]) / 2,
    }


def sector_energies_reduced(params: ParticleParams, n: int, h0_policy: str = "epsilon_prime") -> Dict[int, float]:
    """
    Stationary energies of the reduced Hamiltonian in sector n.
    :param params: particle parameters with pz = 0.
    :param n: orbital quantum number.
    :param h0_policy: value of the spin-independent term.
    :return: energies keyed by s = +1, 0, -1.
    """
    sector = make_sector(params, n)
    triplet = stationary_states(reduced_hamiltonian(params, sector, h0_policy))
    return dict(zip((1, 0, -1), triplet.energies))
