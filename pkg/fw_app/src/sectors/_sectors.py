"""Module provides Landau-level bookkeeping for a spin-1 particle in a uniform magnetic field."""

import logging
import math
from dataclasses import dataclass, field
from itertools import groupby
from typing import List, Tuple

from src.errors import (
    ConfigurationError,
    GFactorError,
    NeutralParticleError,
    SectorUndefinedError,
    SupercriticalFieldError,
)

logger = logging.getLogger(__name__)

SPIN_PROJECTIONS = (1, 0, -1)


@dataclass(frozen=True)
class ParticleParams:
    """Physical configuration shared by all computations (units hbar = c = 1)."""
    m: float = 1.0
    e: float = 1.0
    g: float = 2.0
    B: float = 0.0
    pz: float = 0.0

    def __post_init__(self):
        if not self.m > 0:
            raise ConfigurationError("mass must be positive, got {!r}".format(self.m))
        if not self.B >= 0:
            raise ConfigurationError("field strength must be non-negative, got {!r}".format(self.B))
        for name in ("e", "g", "pz"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigurationError("{} must be finite".format(name))

    @property
    def charge_sign(self) -> int:
        """
        Sign of the charge.
        :return: +1, -1 or 0.
        """
        return (self.e > 0) - (self.e < 0)


@dataclass(frozen=True)
class LandauSector:
    """Orbital background of one Landau level: pi^2, eps' = sqrt(m^2 + pi^2) and b = 2eB/eps'^2."""
    n: int
    pi2: float
    eps_prime: float
    b: float
    pz_extension: bool = False


@dataclass(frozen=True)
class EnergyLevel:
    """Group of (n, s_z) pairs sharing one g=2 energy."""
    energy: float
    key: int
    members: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)
    triplet_condition: bool = False

    @property
    def multiplicity(self) -> int:
        return len(self.members)


def _require_charged_field(params: ParticleParams) -> None:
    if params.e == 0:
        raise NeutralParticleError("Landau sectors are undefined for a neutral particle")
    if params.B == 0:
        raise SectorUndefinedError("sector undefined: B = 0")


def make_sector(params: ParticleParams, n: int) -> LandauSector:
    """
    Build the Landau sector with orbital quantum number n.
    :param params: particle parameters, B > 0.
    :param n: orbital quantum number, n >= 0.
    :return: Landau sector.
    """
    _require_charged_field(params)
    if n < 0 or int(n) != n:
        raise ConfigurationError("orbital quantum number must be a non-negative integer, got {!r}".format(n))
    n = int(n)

    pi2 = abs(params.e) * params.B * (2 * n + 1) + params.pz ** 2
    eps_prime = math.sqrt(params.m ** 2 + pi2)
    b = 2 * params.e * params.B / eps_prime ** 2
    if params.pz != 0:
        logger.debug("sector n=%d includes pz^2 beyond the two-dimensional Landau formula", n)
    return LandauSector(n=n, pi2=pi2, eps_prime=eps_prime, b=b, pz_extension=params.pz != 0)


def level_key(params: ParticleParams, n: int, s_z: int) -> int:
    """
    Integer k with pi^2 - 2eB s_z = |e|B k, used to group degenerate levels exactly.
    :param params: particle parameters.
    :param n: orbital quantum number.
    :param s_z: spin projection.
    :return: grouping key.
    """
    return 2 * n + 1 - 2 * params.charge_sign * s_z


def enumerate_levels_g2(params: ParticleParams, n_max: int, complete_only: bool = True) -> List[EnergyLevel]:
    """
    Group the g=2 energies sqrt(m^2 + |e|B(2n+1) - 2eB s_z + pz^2) over n <= n_max.
    :param params: particle parameters with g = 2 and B > 0.
    :param n_max: largest orbital quantum number.
    :param complete_only: drop the top groups whose members are cut off by n_max.
    :return: energy groups sorted by ascending energy.
    """
    if params.g != 2:
        raise GFactorError("the degenerate spectrum is defined for g = 2 only, got g = {!r}".format(params.g))
    _require_charged_field(params)
    if n_max < 0:
        raise ConfigurationError("n_max must be non-negative, got {!r}".format(n_max))

    scale = abs(params.e) * params.B
    pairs = []
    for n in range(n_max + 1):
        for s_z in SPIN_PROJECTIONS:
            key = level_key(params, n, s_z)
            radicand = params.m ** 2 + params.pz ** 2 + scale * key
            if radicand <= 0:
                raise SupercriticalFieldError(
                    "supercritical field: radicand {!r} for (n, s_z) = ({}, {})".format(radicand, n, s_z)
                )
            pairs.append((key, n, s_z, math.sqrt(radicand)))

    # a group k holds n = (k+1)/2, (k-1)/2, (k-3)/2 at most, all present only if (k+1)/2 <= n_max
    largest_key = 2 * n_max - 1 if complete_only else None
    pairs.sort(key=lambda x: (x[0], x[1]))

    levels = []
    for key, group in groupby(pairs, key=lambda x: x[0]):
        if largest_key is not None and key > largest_key:
            break
        group = list(group)
        members = tuple((n, s_z) for _, n, s_z, _ in group)
        condition = all(n - params.charge_sign * s_z >= 1 for n, s_z in members)
        levels.append(EnergyLevel(energy=group[0][3], key=key, members=members, triplet_condition=condition))
    return levels
