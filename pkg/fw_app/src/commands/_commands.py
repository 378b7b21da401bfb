"""Module provides the command implementations: each turns parsed options into a CSV or JSON payload."""

import copy
import logging
import math
from argparse import Namespace
from collections import OrderedDict
from datetime import datetime, timezone
from typing import Any, Dict, List, Tuple

import numpy as np

from src.dynamics import evolve
from src.errors import ConfigurationError
from src.fw import (
    polarization_expectations,
    reduced_hamiltonian,
    sector_energies_reduced,
    stationary_states,
)
from src.sectors import enumerate_levels_g2, make_sector
from src.utils import emit, format_exact, render_csv, render_json
from src.verification import run_suite

logger = logging.getLogger(__name__)

SPECTRUM_COLUMNS = ("n", "s_z", "energy", "group_id", "multiplicity")
EVOLVE_COLUMNS = ("t", "Sx", "Sy", "Sz", "Sxx", "Syy", "Szz", "AxySym", "AyzSym", "AzxSym", "P_perp")
GROUP_RTOL = 1e-12

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1


def _timestamp(opt: Namespace) -> str:
    return datetime.now(timezone.utc).isoformat() if opt.timestamp else None


def _params_echo(opt: Namespace, *extra: str) -> Dict[str, Any]:
    echo = OrderedDict((key, format_exact(getattr(opt.params, key))) for key in ("m", "e", "g", "B", "pz"))
    for key in extra:
        echo[key] = getattr(opt, key)
    return echo


def spectrum_rows(opt: Namespace) -> List[Tuple[int, int, float, int, int]]:
    """
    Rows of the spectrum table sorted by energy, then n.
    :param opt: spectrum options.
    :return: rows (n, s_z, energy, group_id, multiplicity).
    """
    params = opt.params
    if opt.mode == "exact":
        rows = []
        for group_id, level in enumerate(enumerate_levels_g2(params, opt.nmax)):
            for n, s_z in sorted(level.members):
                rows.append((n, s_z, level.energy, group_id, level.multiplicity))
        return rows

    pairs = []
    for n in range(opt.nmax + 1):
        for s, energy in sector_energies_reduced(params, n, opt.h0_policy).items():
            pairs.append((energy, n, s))
    pairs.sort(key=lambda x: (x[0], x[1], -x[2]))

    # neighbouring energies closer than the rounding level form one group
    groups, current = [], []
    for pair in pairs:
        if current and not math.isclose(pair[0], current[-1][0], rel_tol=GROUP_RTOL):
            groups.append(current)
            current = []
        current.append(pair)
    if current:
        groups.append(current)
    return [(n, s, energy, group_id, len(group)) for group_id, group in enumerate(groups) for energy, n, s in group]


def run_spectrum(opt: Namespace) -> str:
    """
    Spectrum table of the g=2 levels or of the reduced Hamiltonian.
    :param opt: spectrum options.
    :return: CSV text.
    """
    rows = spectrum_rows(opt)
    logger.info("spectrum: %d rows in %s mode", len(rows), opt.mode)
    return render_csv(SPECTRUM_COLUMNS, rows)


def _complex_pair(z: complex) -> List[str]:
    return [format_exact(z.real), format_exact(z.imag)]


def stationary_payload(opt: Namespace) -> Dict[str, Any]:
    """
    Stationary states of one Landau sector with their polarization.
    :param opt: stationary options.
    :return: ordered report.
    """
    params = opt.params
    sector = make_sector(params, opt.n)
    logger.info("h0 policy %s", opt.h0_policy)
    rh = reduced_hamiltonian(params, sector, opt.h0_policy, opt.force_kappa_zero)
    triplet = stationary_states(rh)

    states = []
    for s, energy, vector in zip((1, 0, -1), triplet.energies, triplet.vectors):
        obs = polarization_expectations(vector)
        states.append(OrderedDict([
            ("s", s),
            ("energy", format_exact(energy)),
            ("vector", [_complex_pair(z) for z in vector]),
            ("observables", OrderedDict([
                ("sz_mean", format_exact(obs.sz_mean)),
                ("sz2_mean", format_exact(obs.sz2_mean)),
                ("s_piB2_mean", format_exact(obs.s_piB2_mean)),
                ("s_pi2_mean", format_exact(obs.s_pi2_mean)),
                ("cross_means", OrderedDict((k, format_exact(v)) for k, v in obs.cross_means.items())),
            ])),
        ]))

    payload = OrderedDict([
        ("params", _params_echo(opt, "n", "h0_policy", "force_kappa_zero")),
        ("omega0", format_exact(rh.omega0)),
        ("zeta", format_exact(rh.zeta)),
        ("kappa", format_exact(rh.kappa)),
        ("beta", format_exact(triplet.beta)),
        ("Y", format_exact(triplet.bigY)),
        ("Z", format_exact(triplet.bigZ)),
        ("energies", [format_exact(e) for e in triplet.energies]),
        ("states", states),
    ])
    timestamp = _timestamp(opt)
    if timestamp is not None:
        payload["metadata"] = OrderedDict([("timestamp", timestamp)])
    return payload


def run_stationary(opt: Namespace) -> str:
    """
    Stationary-state report.
    :param opt: stationary options.
    :return: JSON text.
    """
    return render_json(stationary_payload(opt))


def evolve_rows(opt: Namespace) -> List[Tuple[float, ...]]:
    """
    Polarization time series on the uniform grid 0 .. tmax.
    :param opt: evolve options.
    :return: rows in the order of the evolve columns.
    """
    params = opt.params
    sector = make_sector(params, opt.n)
    logger.info("h0 policy %s", opt.h0_policy)
    rh = reduced_hamiltonian(params, sector, opt.h0_policy, opt.force_kappa_zero)
    t_grid = np.linspace(0.0, opt.tmax, opt.steps + 1)
    return [(r.t,) + r.vector + r.tensor + (r.p_perp,) for r in evolve(rh, opt.state, t_grid)]


def run_evolve(opt: Namespace) -> str:
    """
    Polarization time series.
    :param opt: evolve options.
    :return: CSV text.
    """
    if opt.timestamp:
        logger.info("timestamps are only written to JSON reports")
    return render_csv(EVOLVE_COLUMNS, evolve_rows(opt))


def run_verify(opt: Namespace, config: dict) -> Tuple[str, int]:
    """
    Run a verification suite.
    :param opt: verify options.
    :param config: application config with the verify section.
    :return: JSON report and exit code.
    """
    if "verify" not in config:
        raise ConfigurationError("config has no verify section")
    settings = copy.deepcopy(config["verify"])
    if opt.grids:
        settings["grid"]["grids"] = list(opt.grids)

    report = run_suite(opt.suite, settings, params=settings, timestamp=_timestamp(opt))
    failed = report.failures
    if failed:
        logger.error("%d of %d checks failed", len(failed), len(report.checks))
    else:
        logger.info("all %d checks passed", len(report.checks))
    return render_json(report.to_dict()), EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def execute(opt: Namespace, config: dict) -> int:
    """
    Run the parsed command and write its output.
    :param opt: parsed options of any command.
    :param config: application config.
    :return: exit code.
    """
    if opt.command == "spectrum":
        emit(run_spectrum(opt), opt.output)
    elif opt.command == "stationary":
        emit(run_stationary(opt), opt.output)
    elif opt.command == "evolve":
        emit(run_evolve(opt), opt.output)
    elif opt.command == "verify":
        text, code = run_verify(opt, config)
        emit(text, opt.output)
        return code
    else:
        raise ConfigurationError("unknown command {!r}".format(opt.command))
    return EXIT_OK
