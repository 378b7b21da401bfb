"""Module provides magnetic field configurations and the lattice they are sampled on."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.errors import ConfigurationError, GridResolutionError

FIELD_KINDS = ("uniform_z", "quadrupole", "sheared_z")

MIN_POINTS = 16
POINTS_PER_MAGNETIC_LENGTH = 4
MAGNETIC_LENGTHS_PER_DOMAIN = 6


@dataclass(frozen=True)
class FieldSpec:
    """Static magnetic field with its gauge potential fixed per kind."""
    kind: str
    B0: float = 0.0
    G: float = 0.0
    az_shift: float = 0.0

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise ConfigurationError("unknown field kind {!r}, expected one of {}".format(self.kind, FIELD_KINDS))

    def vector_potential(self, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Gauge potential: symmetric gauge for uniform_z, A_z only for quadrupole, A_y only for sheared_z.
        :param x: x coordinates.
        :param y: y coordinates.
        :return: (A_x, A_y, A_z).
        """
        zero = np.zeros(np.broadcast(x, y).shape)
        az = zero + self.az_shift
        if self.kind == "uniform_z":
            return -self.B0 * y / 2 + zero, self.B0 * x / 2 + zero, az
        if self.kind == "quadrupole":
            return zero, zero.copy(), az + self.G * (y ** 2 - x ** 2) / 2
        return zero, self.B0 * x + self.G * x ** 2 / 2 + zero, az

    def magnetic_field(self, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Field B = curl A.
        :param x: x coordinates.
        :param y: y coordinates.
        :return: (B_x, B_y, B_z).
        """
        zero = np.zeros(np.broadcast(x, y).shape)
        if self.kind == "uniform_z":
            return zero, zero.copy(), zero + self.B0
        if self.kind == "quadrupole":
            return self.G * y + zero, self.G * x + zero, zero
        return zero, zero.copy(), self.B0 + self.G * x + zero

    def current(self, x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        Curl of the field, 4 pi j for a static configuration.
        :param x: x coordinates.
        :param y: y coordinates.
        :return: (J_x, J_y, J_z).
        """
        zero = np.zeros(np.broadcast(x, y).shape)
        if self.kind == "sheared_z":
            return zero, zero - self.G, zero.copy()
        return zero, zero.copy(), zero.copy()

    @property
    def is_current_free(self) -> bool:
        return self.kind != "sheared_z" or self.G == 0

    def reference_field(self, extent: float) -> float:
        """
        Largest field magnitude inside the domain, used for the resolution rule.
        :param extent: domain half-width.
        :return: field strength.
        """
        if self.kind == "uniform_z":
            return abs(self.B0)
        if self.kind == "quadrupole":
            return abs(self.G) * extent
        return abs(self.B0) + abs(self.G) * extent


@dataclass(frozen=True)
class GridSpec:
    """Square lattice on [-extent, extent]^2 with Dirichlet walls one spacing outside the last nodes."""
    n_points: int
    extent: float

    @property
    def spacing(self) -> float:
        return 2 * self.extent / (self.n_points - 1)

    @property
    def size(self) -> int:
        return self.n_points ** 2

    def axis(self) -> np.ndarray:
        """
        Node coordinates along one axis.
        :return: coordinates.
        """
        return np.linspace(-self.extent, self.extent, self.n_points)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Node coordinates flattened with x as the slow index.
        :return: (x, y).
        """
        x, y = np.meshgrid(self.axis(), self.axis(), indexing="ij")
        return x.ravel(), y.ravel()

    def validate(self, field: FieldSpec, charge: float) -> None:
        """
        Check the lattice against the magnetic length of the field.
        :param field: field configuration.
        :param charge: particle charge.
        """
        if self.n_points < MIN_POINTS:
            raise GridResolutionError("need at least {} points per axis, got {}".format(MIN_POINTS, self.n_points))
        if not self.extent > 0:
            raise GridResolutionError("grid extent must be positive, got {!r}".format(self.extent))
        strength = abs(charge) * field.reference_field(self.extent)
        if strength == 0:
            return
        length = 1 / math.sqrt(strength)
        h = self.spacing
        if length < POINTS_PER_MAGNETIC_LENGTH * h:
            raise GridResolutionError(
                "magnetic length {:.4g} is below {} lattice spacings ({:.4g})".format(
                    length, POINTS_PER_MAGNETIC_LENGTH, POINTS_PER_MAGNETIC_LENGTH * h)
            )
        # the box runs between the two Dirichlet walls
        width = 2 * self.extent + 2 * h
        if width < MAGNETIC_LENGTHS_PER_DOMAIN * length:
            raise GridResolutionError(
                "domain width {:.4g} is below {} magnetic lengths ({:.4g})".format(
                    width, MAGNETIC_LENGTHS_PER_DOMAIN, MAGNETIC_LENGTHS_PER_DOMAIN * length)
            )
