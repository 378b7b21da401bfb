"""Module provides the closed-form FW Hamiltonian of a spin-1 particle with the normal magnetic moment (g = 2)."""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.algebra import build_spin_matrices, sqrt_psd
from src.errors import GFactorError, NotPositiveDefiniteError, SupercriticalFieldError
from src.sectors import LandauSector, ParticleParams

logger = logging.getLogger(__name__)

NEAR_CRITICAL_GUARD = 1e-9


@dataclass(frozen=True)
class ClosedFormCoeffs:
    """Coefficients of eps'(1 + a1 S_z + a2 S_z^2)."""
    b: float
    a1: float
    a2: float


def a_coefficients(b: float) -> ClosedFormCoeffs:
    """
    Coefficients a1, a2 as functions of b = 2eB/eps'^2.
    :param b: field parameter, |b| < 1.
    :return: closed-form coefficients.
    """
    if not abs(b) <= 1 - NEAR_CRITICAL_GUARD:
        raise SupercriticalFieldError("supercritical field: |b| = {!r} is not below 1".format(abs(b)))
    plus, minus = math.sqrt(1 + b), math.sqrt(1 - b)
    # rationalized so that neither coefficient subtracts nearly equal roots
    total = plus + minus
    return ClosedFormCoeffs(b=b, a1=-b / total, a2=-b * b / (total * ((1 + plus) * (1 + minus))))


def _require_g2(params: ParticleParams) -> None:
    if params.g != 2:
        raise GFactorError("closed form requires g = 2, got g = {!r}".format(params.g))


def energy_g2(sector: LandauSector, s_z: int, params: ParticleParams) -> float:
    """
    Sector energy eps'(1 + a1 s_z + a2 s_z^2).
    :param sector: Landau sector.
    :param s_z: spin projection, one of -1, 0, +1.
    :param params: particle parameters with g = 2.
    :return: energy.
    """
    _require_g2(params)
    coeffs = a_coefficients(sector.b)
    return sector.eps_prime * (1 + coeffs.a1 * s_z + coeffs.a2 * s_z ** 2)


def exact_energy(sector: LandauSector, s_z: int, params: ParticleParams) -> float:
    """
    Scalar square-root form sqrt(eps'^2 - 2eB s_z).
    :param sector: Landau sector.
    :param s_z: spin projection.
    :param params: particle parameters.
    :return: energy.
    """
    radicand = sector.eps_prime ** 2 - 2 * params.e * params.B * s_z
    if radicand <= 0:
        raise SupercriticalFieldError(
            "supercritical field: radicand {!r} for (n, s_z) = ({}, {})".format(radicand, sector.n, s_z)
        )
    return math.sqrt(radicand)


def closed_form_matrix(sector: LandauSector) -> np.ndarray:
    """
    The 3x3 matrix eps'(I + a1 S_z + a2 S_z^2).
    :param sector: Landau sector.
    :return: closed-form FW block.
    """
    spins = build_spin_matrices()
    coeffs = a_coefficients(sector.b)
    return sector.eps_prime * (spins.identity3 + coeffs.a1 * spins.sz + coeffs.a2 * spins.sz2)


def square_root_matrix(sector: LandauSector, params: ParticleParams) -> np.ndarray:
    """
    The 3x3 matrix sqrt(eps'^2 I - 2eB S_z) evaluated by the matrix-function oracle.
    :param sector: Landau sector.
    :param params: particle parameters.
    :return: square-root FW block.
    """
    spins = build_spin_matrices()
    radicand = sector.eps_prime ** 2 * spins.identity3 - 2 * params.e * params.B * spins.sz
    try:
        return sqrt_psd(radicand)
    except NotPositiveDefiniteError as exc:
        raise SupercriticalFieldError(
            "supercritical field in sector n={}: minimum eigenvalue {!r}".format(sector.n, exc.min_eigenvalue)
        ) from exc


def closed_form_residual(sector: LandauSector, params: ParticleParams) -> float:
    """
    Max-norm distance between the closed form and the matrix square root.
    :param sector: Landau sector.
    :param params: particle parameters with g = 2.
    :return: residual.
    """
    _require_g2(params)
    return float(np.max(np.abs(closed_form_matrix(sector) - square_root_matrix(sector, params))))


def richardson(values: Sequence[float], steps: Sequence[float], order: int = 2) -> float:
    """
    Richardson limit of values sampled at decreasing steps, by polynomial extrapolation in step**order.
    The error is assumed to be a series in step**order, step**(2*order), ...
    :param values: samples, one per step.
    :param steps: steps, strictly decreasing.
    :param order: order of the leading error term.
    :return: extrapolated value at step 0.
    """
    if len(values) != len(steps) or len(values) < 2:
        raise ValueError("richardson needs at least two samples with one step each")
    if any(later >= earlier for earlier, later in zip(steps, steps[1:])):
        raise ValueError("steps must be strictly decreasing, got {}".format(list(steps)))
    table = [float(value) for value in values]
    for level in range(1, len(table)):
        table = [
            fine + (fine - coarse) / ((steps[i] / steps[i + level]) ** order - 1)
            for i, (coarse, fine) in enumerate(zip(table, table[1:]))
        ]
    return table[0]


@dataclass(frozen=True)
class SmallBExpansion:
    """Extrapolated coefficients of a1 = c1 b + c3 b^3 and a2 = c2 b^2 + c4 b^4."""
    c1: float
    c2: float
    c3: float
    c4: float


def small_b_expansion(bs: Sequence[float]) -> SmallBExpansion:
    """
    Extrapolate the small-b series of the closed-form coefficients to b = 0.
    Leading terms come from a1/b and a2/b^2, the next ones from what is left after
    subtracting the leading terms.
    :param bs: field parameters, decreasing towards 0.
    :return: extrapolated series coefficients.
    """
    coeffs = [a_coefficients(b) for b in bs]
    c1 = richardson([c.a1 / c.b for c in coeffs], bs)
    c2 = richardson([c.a2 / c.b ** 2 for c in coeffs], bs)
    c3 = richardson([(c.a1 + c.b / 2) / c.b ** 3 for c in coeffs], bs)
    c4 = richardson([(c.a2 + c.b ** 2 / 8) / c.b ** 4 for c in coeffs], bs)
    logger.debug("small-b series: c1 %.17g, c2 %.17g, c3 %.17g, c4 %.17g", c1, c2, c3, c4)
    return SmallBExpansion(c1=c1, c2=c2, c3=c3, c4=c4)
