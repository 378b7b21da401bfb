"""Module provides time evolution of spin-1 polarization under the reduced FW Hamiltonian."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
import torch

from src.algebra import exp_unitary
from src.errors import (
    ConfigurationError,
    FitConvergenceError,
    InsufficientSpanError,
    UnnormalizedStateError,
)
from src.fw import ReducedHamiltonian, polarization_expectations, stationary_states, substitution_map
from src.models import TwoCosineModel
from src.trainers import Trainer

logger = logging.getLogger(__name__)

NORM_ATOL = 1e-12
MIN_BEAT_PERIODS = 4
FLAT_SIGNAL_ATOL = 1e-12
UNIFORM_GRID_RTOL = 1e-9
FIT_RESIDUAL_RTOL = 1e-6

INITIAL_STATES = {
    "sz:+1": (1, 0, 0),
    "sz:0": (0, 1, 0),
    "sz:-1": (0, 0, 1),
    "sx:+1": (0.5, math.sqrt(2) / 2, 0.5),
}


@dataclass(frozen=True)
class SpinState:
    """Normalized spin-1 amplitudes in the S_z basis."""
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (3,):
            raise UnnormalizedStateError("spin state needs 3 amplitudes, got shape {}".format(amplitudes.shape))
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1) > NORM_ATOL:
            raise UnnormalizedStateError("state norm is {!r}, expected 1".format(norm))
        object.__setattr__(self, "amplitudes", amplitudes)


@dataclass(frozen=True)
class PolarizationRecord:
    """Vector and tensor polarization at one instant."""
    t: float
    vector: Tuple[float, float, float]
    tensor: Tuple[float, float, float, float, float, float]

    @property
    def p_perp(self) -> float:
        """
        Horizontal vector polarization sqrt(<S_x>^2 + <S_y>^2).
        :return: magnitude.
        """
        return math.hypot(self.vector[0], self.vector[1])


@dataclass(frozen=True)
class BeatResult:
    """Outcome of the two-frequency analysis of <S_x>(t)."""
    f_high: float
    f_low: float
    beat: float
    fitted: bool
    seed_gaps: Tuple[float, float] = (0.0, 0.0)
    amplitudes: Tuple[float, float] = (0.0, 0.0)
    loss: float = 0.0
    substitutions: Dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class TransferSeries:
    """Vector to tensor polarization transfer channels."""
    t: np.ndarray
    p_perp: np.ndarray
    alignment: np.ndarray
    sxsy: np.ndarray


def make_initial_state(spec: str) -> SpinState:
    """
    Parse an initial state specification.
    :param spec: one of sz:+1, sz:0, sz:-1, sx:+1 or custom:a,b,c with complex amplitudes.
    :return: normalized spin state.
    """
    spec = spec.strip()
    if spec in INITIAL_STATES:
        amplitudes = np.asarray(INITIAL_STATES[spec], dtype=complex)
        return SpinState(amplitudes / np.linalg.norm(amplitudes))
    if spec.startswith("custom:"):
        try:
            amplitudes = np.array([complex(x.strip().replace(" ", "")) for x in spec[len("custom:"):].split(",")])
        except ValueError as exc:
            raise ConfigurationError("malformed custom amplitudes in {!r}".format(spec)) from exc
        if amplitudes.shape != (3,):
            raise ConfigurationError("custom state needs 3 amplitudes, got {}".format(len(amplitudes)))
        norm = np.linalg.norm(amplitudes)
        if not np.isfinite(norm) or norm == 0:
            raise ConfigurationError("custom amplitudes {!r} cannot be normalized".format(spec))
        return SpinState(amplitudes / norm)
    raise ConfigurationError(
        "malformed init {!r}, expected one of {} or custom:a,b,c".format(spec, ", ".join(INITIAL_STATES))
    )


def _as_state(psi0: Union[SpinState, Sequence[complex]]) -> SpinState:
    return psi0 if isinstance(psi0, SpinState) else SpinState(np.asarray(psi0, dtype=complex))


def _record(t: float, psi: np.ndarray) -> PolarizationRecord:
    obs = polarization_expectations(psi)
    cross = obs.cross_means
    return PolarizationRecord(
        t=float(t),
        vector=(cross["sx"], cross["sy"], obs.sz_mean),
        tensor=(obs.s_piB2_mean, obs.s_pi2_mean, obs.sz2_mean, cross["sxsy"], cross["sysz"], cross["szsx"]),
    )


def evolve(rh: ReducedHamiltonian, psi0: Union[SpinState, Sequence[complex]], t_grid: Sequence[float]) -> List[PolarizationRecord]:
    """
    Evolve a spin state with exp(-i H t) and record its polarization.
    :param rh: reduced Hamiltonian.
    :param psi0: initial state.
    :param t_grid: finite, non-empty sample times.
    :return: polarization records in the order of t_grid.
    """
    state = _as_state(psi0)
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0 or not np.all(np.isfinite(t_grid)):
        raise ConfigurationError("time grid must be a finite, non-empty sequence")
    return [_record(t, exp_unitary(rh.matrix, t) @ state.amplitudes) for t in t_grid]


def _series(records: Sequence[PolarizationRecord], index: int) -> np.ndarray:
    return np.array([r.vector[index] for r in records])


def beat_analysis(series: Sequence[PolarizationRecord], rh: ReducedHamiltonian, max_iter: int = 50) -> BeatResult:
    """
    Extract the two frequencies of <S_x>(t) by a two-cosine fit seeded by the eigen-gaps.
    :param series: polarization records on a uniform time grid.
    :param rh: reduced Hamiltonian that generated the series.
    :param max_iter: maximum number of optimizer evaluations.
    :return: fitted frequencies and their beat.
    """
    t = np.array([r.t for r in series])
    sx = _series(series, 0)

    if sx.size == 0 or np.max(np.abs(sx - sx.mean())) <= FLAT_SIGNAL_ATOL:
        logger.info("no oscillation in <S_x>, frequency fit skipped")
        return BeatResult(f_high=0.0, f_low=0.0, beat=0.0, fitted=False)

    triplet = stationary_states(rh)
    e_plus, e_zero, e_minus = triplet.energies
    gaps = sorted((abs(e_plus - e_zero), abs(e_zero - e_minus)), reverse=True)
    beat_seed = gaps[0] - gaps[1]

    steps = np.diff(t)
    if t.size < 8 or np.any(steps <= 0) or np.ptp(steps) > UNIFORM_GRID_RTOL * abs(steps.mean()):
        raise InsufficientSpanError("frequency extraction needs a uniform increasing time grid")
    if beat_seed == 0 or np.ptp(t) < MIN_BEAT_PERIODS * 2 * math.pi / beat_seed:
        raise InsufficientSpanError(
            "time series spans {!r}, fewer than {} beat periods".format(float(np.ptp(t)), MIN_BEAT_PERIODS)
        )

    # linear amplitudes at the seed frequencies
    design = np.column_stack([f(w * t) for w in gaps for f in (np.cos, np.sin)])
    coeffs, *_ = np.linalg.lstsq(design, sx, rcond=None)

    model = TwoCosineModel(gaps, coeffs[0::2], coeffs[1::2])
    trainer = Trainer(model)
    trainer.fit(torch.as_tensor(t), torch.as_tensor(sx), max_iter=max_iter)

    with torch.no_grad():
        fitted = model.frequencies.numpy().copy()
        amplitudes = np.hypot(model.cos_amplitudes.numpy(), model.sin_amplitudes.numpy())
    rms = math.sqrt(trainer.loss)
    scale = float(np.max(np.abs(sx)))
    if not np.all(np.isfinite(fitted)) or rms > FIT_RESIDUAL_RTOL * scale:
        raise FitConvergenceError("two-cosine fit did not converge, rms residual {!r}".format(rms))

    order = np.argsort(-np.abs(fitted))
    f_high, f_low = (float(abs(fitted[i])) for i in order)
    return BeatResult(
        f_high=f_high,
        f_low=f_low,
        beat=abs(f_high - f_low),
        fitted=True,
        seed_gaps=(gaps[0], gaps[1]),
        amplitudes=tuple(float(amplitudes[i]) for i in order),
        loss=trainer.loss,
        substitutions=substitution_map(rh, triplet),
    )


def tensor_vector_transfer(
    rh: ReducedHamiltonian,
    psi0: Union[SpinState, Sequence[complex]],
    t_grid: Sequence[float]
) -> TransferSeries:
    """
    Horizontal vector polarization and the tensor channels it is exchanged with.
    :param rh: reduced Hamiltonian.
    :param psi0: initial state.
    :param t_grid: sample times.
    :return: P_perp(t), <S_x^2> - <S_y^2> and <{S_x, S_y}>.
    """
    records = evolve(rh, psi0, t_grid)
    return TransferSeries(
        t=np.array([r.t for r in records]),
        p_perp=np.array([r.p_perp for r in records]),
        alignment=np.array([r.tensor[0] - r.tensor[1] for r in records]),
        sxsy=np.array([r.tensor[3] for r in records]),
    )


def stationary_check(rh: ReducedHamiltonian, t_grid: Sequence[float]) -> float:
    """
    Largest drift of any polarization component when each closed-form stationary state is evolved.
    :param rh: reduced Hamiltonian.
    :param t_grid: sample times.
    :return: max deviation from the t = 0 record.
    """
    drift = 0.0
    for vector in stationary_states(rh).vectors:
        records = evolve(rh, vector, t_grid)
        start = np.array(records[0].vector + records[0].tensor)
        for record in records[1:]:
            drift = max(drift, float(np.max(np.abs(np.array(record.vector + record.tensor) - start))))
    return drift
