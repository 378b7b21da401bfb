"""
Module provides the verification suites. Every suite is a function of the `verify` config
section returning check rows in declaration order.
"""

import logging
import math
from collections import OrderedDict
from multiprocessing.pool import ThreadPool
from typing import Callable, Dict, List

import numpy as np

from src.algebra import (
    build_spin_matrices,
    commutator,
    eig_hermitian,
    exp_unitary,
    is_hermitian,
    polarization_operator,
    rho_matrices,
)
from src.dynamics import beat_analysis, evolve, make_initial_state, stationary_check
from src.errors import ConfigurationError
from src.fw import (
    amm_scaling_exponent,
    beta_parameters,
    closed_form_residual,
    energy_g2,
    exact_energy,
    frequencies,
    hamiltonian_full_sector,
    particle_at_rest,
    polarizability_identity_residual_scalar,
    polarization_expectations,
    reduced_hamiltonian,
    small_b_expansion,
    square_root_matrix,
    stationary_states,
)
from src.grid import (
    FieldSpec,
    GridSpec,
    block_structure_residuals,
    build_operators,
    commutator_mo_residual,
    conserved_projection_residuals,
    convergence_order,
    exact_fw_identity_residual,
    gauge_shift_residual,
    landau_level_estimates,
    landau_multiplicities,
    landau_spectrum_grid,
    pseudo_hermiticity_residual,
    refinement_study,
)
from src.sectors import ParticleParams, enumerate_levels_g2, make_sector
from ._report import Check, VerificationReport, above, at_least, at_most, equals

logger = logging.getLogger(__name__)


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a)))


def _params(section: dict, **overrides) -> ParticleParams:
    values = {key: section[key] for key in ("m", "e", "g", "B", "pz") if key in section}
    values.update(overrides)
    return ParticleParams(**values)


def algebra_suite(settings: dict) -> List[Check]:
    """
    Spin-1 identities: commutation relations, S_z^3 = S_z, the Casimir and the quadratic matrices.
    :param settings: verify config section.
    :return: checks.
    """
    atol = settings["algebra"]["atol"]
    spins = build_spin_matrices()
    sx, sy, sz = spins.vector
    eye = spins.identity3

    checks = [
        at_most("commutator_xy", _max_abs(commutator(sx, sy) - 1j * sz), atol),
        at_most("commutator_yz", _max_abs(commutator(sy, sz) - 1j * sx), atol),
        at_most("commutator_zx", _max_abs(commutator(sz, sx) - 1j * sy), atol),
        at_most("sz_cubed", _max_abs(sz @ sz @ sz - sz), atol),
        at_most("casimir", _max_abs(sx @ sx + sy @ sy + sz @ sz - 2 * eye), atol),
        at_most("sz_squared_matrix", _max_abs(sz @ sz - spins.sz2), atol),
        at_most("sxx_minus_syy_matrix", _max_abs(sx @ sx - sy @ sy - spins.sxx_minus_syy), atol),
        equals("hermitian", float(all(is_hermitian(s) for s in spins.vector)), 1.0),
    ]

    # rho3 squares to one, so [Pi_x, Pi_y] is i S_z on both rho blocks
    pi_x, pi_y, pi_z = polarization_operator(spins)
    rho3 = rho_matrices()[2]
    checks.append(at_most("polarization_commutator", _max_abs(commutator(pi_x, pi_y) - 1j * np.kron(np.eye(2), sz)), atol))
    checks.append(at_most("polarization_rho_block", _max_abs(pi_z - np.kron(rho3, sz)), atol))
    return checks


def _random_sectors(settings: dict, rng: np.random.Generator):
    section = settings["closed_form"]
    accepted = []
    while len(accepted) < section["samples"]:
        m = rng.uniform(0.5, 2.0)
        e = rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 1.0)
        n = int(rng.integers(0, 11))
        B = rng.uniform(1e-3, 1.0) * m ** 2 / abs(e)
        params = ParticleParams(m=m, e=e, g=2.0, B=B)
        sector = make_sector(params, n)
        if abs(sector.b) < section["max_b"]:
            accepted.append((params, sector))
    return accepted


def closed_form_suite(settings: dict) -> List[Check]:
    """
    Closed-form g=2 energies against the matrix square root, charge conjugation, small-b expansion
    and the degeneracy structure of the spectrum.
    :param settings: verify config section.
    :return: checks.
    """
    section = settings["closed_form"]
    rng = np.random.default_rng(settings["seed"])
    samples = _random_sectors(settings, rng)

    residual = max(closed_form_residual(sector, params) / sector.eps_prime for params, sector in samples)
    matching = max(
        abs(energy_g2(sector, s_z, params) - exact_energy(sector, s_z, params)) / exact_energy(sector, s_z, params)
        for params, sector in samples for s_z in (1, 0, -1)
    )
    conjugation = 0.0
    for params, sector in samples:
        mirror = ParticleParams(m=params.m, e=-params.e, g=2.0, B=params.B)
        mirror_sector = make_sector(mirror, sector.n)
        for s_z in (1, 0, -1):
            conjugation = max(conjugation, abs(energy_g2(sector, s_z, params) - energy_g2(mirror_sector, -s_z, mirror)))

    series = small_b_expansion(section["small_b"])

    degeneracy = section["degeneracy"]
    levels = enumerate_levels_g2(ParticleParams(e=1.0, g=2.0, B=degeneracy["B"]), degeneracy["n_max"])
    multiplicities = [level.multiplicity for level in levels]
    triplets = [level for level in levels if level.multiplicity == 3]

    return [
        at_most("closed_form_residual", residual, section["rtol"]),
        at_most("energy_matching", matching, section["energy_rtol"]),
        equals("charge_conjugation", conjugation, 0.0),
        at_most("small_b_linear", abs(series.c1 + 1 / 2), section["series_atol"]),
        at_most("small_b_quadratic", abs(series.c2 + 1 / 8), section["series_atol"]),
        at_most("small_b_cubic", abs(series.c3 + 1 / 16), section["remainder_atol"]),
        at_most("small_b_quartic", abs(series.c4 + 5 / 128), section["remainder_atol"]),
        equals("singlets", multiplicities.count(1), 1),
        equals("doublets", multiplicities.count(2), 1),
        equals("non_triplets", len(levels) - len(triplets), 2),
        equals("triplet_condition", float(all(level.triplet_condition for level in triplets)), 1.0),
    ]


def stationary_suite(settings: dict) -> List[Check]:
    """
    Closed-form stationary states against the eigendecomposition, their polarization and the beta sweep.
    :param settings: verify config section.
    :return: checks.
    """
    section = settings["stationary"]
    params = _params(section)
    sector = make_sector(params, section["n"])
    rh = reduced_hamiltonian(params, sector)
    triplet = stationary_states(rh)

    values, vectors = eig_hermitian(rh.matrix)
    energies = np.array(triplet.energies)
    energy_error = _max_abs(np.sort(energies) - values) / _max_abs(values)
    overlap = min(max(abs(np.vdot(v, vectors[:, j])) for j in range(3)) for v in triplet.vectors)
    gram = np.array([[np.vdot(a, b) for b in triplet.vectors] for a in triplet.vectors])

    beta, bigY, _ = beta_parameters(params, sector)
    expected = (
        (bigY, 1.0, (1 + beta * bigY) / 2, (1 - beta * bigY) / 2),
        (0.0, 0.0, 1.0, 1.0),
        (-bigY, 1.0, (1 - beta * bigY) / 2, (1 + beta * bigY) / 2),
    )
    observables = [polarization_expectations(v) for v in triplet.vectors]
    observable_error = max(
        _max_abs(np.array([o.sz_mean, o.sz2_mean, o.s_piB2_mean, o.s_pi2_mean]) - np.array(e))
        for o, e in zip(observables, expected)
    )
    cross = max(abs(x) for o in observables for x in o.cross_means.values())
    sum_rule = max(abs(o.sum_rule - 2) for o in observables)

    rng = np.random.default_rng(settings["seed"])
    beta_error = 0.0
    for _ in range(section["samples"]):
        p = ParticleParams(
            m=rng.uniform(0.5, 2.0),
            e=rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 1.0),
            g=rng.uniform(0.5, 3.5),
            B=rng.uniform(1e-3, 0.2),
        )
        s = make_sector(p, int(rng.integers(0, 11)))
        omega0, _, kappa = frequencies(p, s)
        b, _, _ = beta_parameters(p, s)
        beta_error = max(beta_error, abs(b * omega0 - kappa) / max(abs(kappa), np.finfo(float).tiny))

    rest = particle_at_rest(params)
    _, rest_zeta, rest_kappa = frequencies(params, rest)
    plus = observables[0]

    return [
        at_most("energies_vs_eigh", energy_error, section["energy_rtol"]),
        at_most("overlap_deficit", 1 - overlap, section["overlap_atol"]),
        at_most("orthonormality", _max_abs(gram - np.eye(3)), section["observable_atol"]),
        at_most("stationary_polarization", observable_error, section["observable_atol"]),
        at_most("stationary_cross_terms", cross, section["observable_atol"]),
        at_most("sum_rule", sum_rule, section["observable_atol"]),
        at_most("beta_consistency", beta_error, section["beta_rtol"]),
        above("non_integer_projection", 1 - abs(plus.sz_mean), 0.0),
        above("horizontal_asymmetry", abs(plus.s_piB2_mean - plus.s_pi2_mean), 0.0),
        at_most("asymmetry_vs_formula", abs(plus.s_piB2_mean - plus.s_pi2_mean - beta * bigY), 1e-12),
        equals("at_rest_kappa", rest_kappa, 0.0),
        above("at_rest_zeta", abs(rest_zeta), 0.0),
    ]


def _beat_grid(params: ParticleParams, sector, section: dict) -> np.ndarray:
    _, zeta, _ = frequencies(params, sector)
    # slightly beyond the required number of beat periods of frequency 2 zeta
    tmax = 1.01 * section["beat_periods"] * math.pi / abs(zeta)
    return np.linspace(0.0, tmax, section["steps"])


def dynamics_suite(settings: dict) -> List[Check]:
    """
    Analytic precession with kappa forced to zero, fitted beat frequencies with kappa, unitarity and the g=2 limit.
    :param settings: verify config section.
    :return: checks.
    """
    section = settings["dynamics"]
    atol = section["atol"]
    params = _params(section)
    sector = make_sector(params, section["n"])
    t = _beat_grid(params, sector, section)
    psi0 = make_initial_state("sx:+1")

    rh0 = reduced_hamiltonian(params, sector, h0_policy="zero", force_kappa_zero=True)
    records = evolve(rh0, psi0, t)
    sx = np.array([r.vector[0] for r in records])
    sy = np.array([r.vector[1] for r in records])
    p_perp = np.array([r.p_perp for r in records])
    sz = np.array([r.vector[2] for r in records])
    trace = np.array([sum(r.tensor[:3]) for r in records])
    envelope = np.cos(rh0.zeta * t)
    node = evolve(rh0, psi0, [math.pi / (2 * abs(rh0.zeta))])[0]

    rh = reduced_hamiltonian(params, sector, h0_policy="zero")
    beat = beat_analysis(evolve(rh, psi0, t), rh)
    e_plus, e_zero, e_minus = stationary_states(rh).energies
    gaps = sorted((abs(e_plus - e_zero), abs(e_zero - e_minus)), reverse=True)
    frequency_error = max(abs(beat.f_high - gaps[0]) / gaps[0], abs(beat.f_low - gaps[1]) / gaps[1])

    norm_error, energy_drift, reversal = 0.0, 0.0, 0.0
    energy0 = np.real(np.vdot(psi0.amplitudes, rh.matrix @ psi0.amplitudes))
    for time in t[::max(1, t.size // 50)]:
        psi = exp_unitary(rh.matrix, time) @ psi0.amplitudes
        norm_error = max(norm_error, abs(np.linalg.norm(psi) - 1))
        energy_drift = max(energy_drift, abs(np.real(np.vdot(psi, rh.matrix @ psi)) - energy0))
        reversal = max(reversal, _max_abs(exp_unitary(rh.matrix, -time) @ psi - psi0.amplitudes))

    free = reduced_hamiltonian(_params(section, g=2.0), sector, h0_policy="zero")
    free_beat = beat_analysis(evolve(free, psi0, t[:64]), free)

    return [
        at_most("sx_precession", _max_abs(sx - np.cos(rh0.omega0 * t) * envelope), atol),
        at_most("sy_precession", _max_abs(sy - np.sin(rh0.omega0 * t) * envelope), atol),
        at_most("p_perp_envelope", _max_abs(p_perp - np.abs(envelope)), atol),
        at_most("p_perp_node", node.p_perp, 1e-9),
        at_most("sz_constant", _max_abs(sz - sz[0]), section["norm_atol"]),
        at_most("sum_rule", _max_abs(trace - 2), section["norm_atol"]),
        equals("beat_fitted", float(beat.fitted), 1.0),
        at_most("beat_frequencies", frequency_error, section["frequency_rtol"]),
        at_most("beat_equals_two_zeta", abs(abs(gaps[0] - gaps[1]) - 2 * abs(rh.zeta)), 1e-12),
        at_most("unitarity", norm_error, section["norm_atol"]),
        at_most("energy_conservation", energy_drift, section["norm_atol"]),
        at_most("time_reversal", reversal, 1e-11),
        at_most("stationary_states_constant", stationary_check(rh, t[::max(1, t.size // 200)]), section["norm_atol"]),
        equals("g2_not_fitted", float(free_beat.fitted), 0.0),
    ]


def amm_consistency_suite(settings: dict) -> List[Check]:
    """
    Full-sector Hamiltonian against the reduced one, the polarizability identity and the g -> 2 limit.
    :param settings: verify config section.
    :return: checks.
    """
    section = settings["amm"]
    params = _params(section, B=section["fields"][-1])
    n = section["n"]
    sector = make_sector(params, n)

    exponent = amm_scaling_exponent(params, n, section["fields"])

    normal = _params(section, g=2.0, B=section["fields"][-1])
    normal_gap = _max_abs(hamiltonian_full_sector(normal, sector) - square_root_matrix(sector, normal))

    identity = polarizability_identity_residual_scalar(sector, params.B)
    scale = sector.pi2 * params.B ** 2

    # first-order vanishing in g - 2: halving the offset halves each coefficient
    first, second = (frequencies(_params(section, g=2.0 + d, B=params.B), sector) for d in section["g_offsets"])
    ratio = section["g_offsets"][0] / section["g_offsets"][1]
    linearity = max(abs(a / b - ratio) / ratio for a, b in zip(first, second))

    return [
        at_most("b_cubed_exponent", abs(exponent - section["exponent"]), section["exponent_tolerance"]),
        at_most("g2_full_equals_square_root", normal_gap, 1e-14 * sector.eps_prime),
        at_most("polarizability_identity", identity, section["identity_rtol"] * scale),
        at_most("g2_linear_vanishing", linearity, 1e-3),
        equals("g2_beta", beta_parameters(normal, sector)[0], 0.0),
    ]


def _grids(settings: dict, key: str = "grids") -> List[GridSpec]:
    section = settings["grid"]
    return [GridSpec(int(n), section["extent"]) for n in section[key]]


def _structure_checks(field: FieldSpec, grid: GridSpec, section: dict) -> List[Check]:
    checks = []
    for g in (2.0, 1.714):
        ops = build_operators(field, grid, _params(section, g=g))
        label = "g2" if g == 2 else "amm"
        residuals = block_structure_residuals(ops)
        checks.append(at_most("block_structure_{}".format(label), max(residuals.values()), 0.0))
        checks.append(at_most("pseudo_hermiticity_{}".format(label), pseudo_hermiticity_residual(ops),
                              section["hermiticity_rtol"]))
    return checks


def _exactness_checks(field: FieldSpec, settings: dict) -> List[Check]:
    section = settings["grid"]
    grids = _grids(settings)
    params = _params(section, g=2.0)
    k = section["interior_modes"]
    floor = section["roundoff_atol"]

    commutator_study = refinement_study(
        lambda grid: commutator_mo_residual(field, grid, params, k).direct_norm, grids, floor)
    identities = [exact_fw_identity_residual(field, grid, params, k) for grid in grids]
    residuals = [r.residual for r in identities]
    identity_order = convergence_order([grid.spacing for grid in grids], residuals, floor)
    finest = identities[-1]
    return [
        at_least("commutator_order", commutator_study.order, section["order"], commutator_study.residuals),
        at_least("identity_order", identity_order, section["order"], residuals),
        at_most("identity_relative", finest.residual / finest.scale, section["identity_rtol"]),
    ]


def _landau_checks(section: dict) -> List[Check]:
    landau = section["landau"]
    strength = landau["eB"]
    field = FieldSpec("uniform_z", B0=strength / abs(section["e"]))
    params = _params(section, g=2.0)

    values = landau_spectrum_grid(field, GridSpec(landau["n_points"], landau["extent"]), params,
                                  k=landau["eigenvalues"])
    estimates = landau_level_estimates(values, strength)
    exact = strength * (2 * np.arange(estimates.size) + 1)
    counts = landau_multiplicities(values, strength, landau["rtol"])

    # the lowest level is a bulk state, so its error is the lattice error alone
    study = refinement_study(
        lambda grid: abs(landau_spectrum_grid(field, grid, params, k=1)[0] - strength) / strength,
        [GridSpec(int(n), landau["extent"]) for n in landau["refinement"]],
        section["roundoff_atol"],
    )
    return [
        at_most("landau_levels", _max_abs((estimates - exact) / exact), landau["rtol"], estimates),
        at_least("landau_multiplicity", min(counts.values(), default=0), 2, [counts[n] for n in sorted(counts)]),
        at_least("landau_refinement_order", study.order, landau["refinement_order"], study.residuals),
    ]


def grid_uniform_suite(settings: dict) -> List[Check]:
    """
    Uniform field: exactness conditions, Landau levels, gauge shift and conserved projections.
    :param settings: verify config section.
    :return: checks.
    """
    section = settings["grid"]
    field = FieldSpec("uniform_z", B0=section["uniform"]["B0"])
    grids = _grids(settings)
    params = _params(section, g=2.0)
    checks = _structure_checks(field, grids[0], section) + _exactness_checks(field, settings)

    free = [exact_fw_identity_residual(FieldSpec("uniform_z"), grid, params, section["interior_modes"])
            for grid in grids]
    checks.append(at_most("identity_field_free", max(r.residual / r.scale for r in free),
                          section["field_free_rtol"], [r.residual for r in free]))

    checks += _landau_checks(section)
    checks.append(at_most(
        "gauge_shift",
        gauge_shift_residual(grids[0], params, field.B0, section["gauge_shift"]),
        section["gauge_atol"],
    ))

    moving = _params(section, g=2.0, pz=section["binormal_pz"])
    k = section["interior_modes"]
    dense = _grids(settings, "projection_grids")
    projections = [conserved_projection_residuals(field, grid, moving, k) for grid in dense]
    spacings = [grid.spacing for grid in dense]
    for name in projections[0].residuals:
        series = [p.residuals[name] for p in projections]
        if name == "pi_z":
            worst = max(r / p.scale for r, p in zip(series, projections))
            checks.append(at_most("projection_pi_z", worst, 1e-10, series))
            continue
        steps = sum(1 for a, b in zip(series, series[1:]) if not b < a)
        checks.append(equals("projection_{}_monotone".format(name), steps, 0))
        checks.append(at_least("projection_{}_order".format(name),
                               convergence_order(spacings, series, section["roundoff_atol"]),
                               section["projection_order"], series))
    return checks


def grid_quadrupole_suite(settings: dict) -> List[Check]:
    """
    Current-free quadrupole field: [M, O] and the squared-Hamiltonian identity converge to zero.
    :param settings: verify config section.
    :return: checks.
    """
    section = settings["grid"]
    field = FieldSpec("quadrupole", G=section["quadrupole"]["G"])
    return _structure_checks(field, _grids(settings)[0], section) + _exactness_checks(field, settings)


def grid_sheared_suite(settings: dict) -> List[Check]:
    """
    Current-carrying sheared field: [M, O] stays finite and matches the curl-B formula under refinement.
    :param settings: verify config section.
    :return: checks.
    """
    section = settings["grid"]
    field = FieldSpec("sheared_z", B0=section["sheared"]["B0"], G=section["sheared"]["G"])
    grids = _grids(settings)
    params = _params(section, g=2.0)
    k = section["interior_modes"]

    results = [commutator_mo_residual(field, grid, params, k) for grid in grids]
    direct = [r.direct_norm for r in results]
    gaps = [r.relative_gap for r in results]
    order = convergence_order([g.spacing for g in grids], gaps, section["roundoff_atol"])
    return _structure_checks(field, grids[0], section) + [
        at_least("commutator_persists", direct[-1] / direct[0], 0.5, direct),
        at_least("formula_gap_order", order, section["order"], gaps),
    ]


SUITES: Dict[str, Callable[[dict], List[Check]]] = OrderedDict([
    ("algebra", algebra_suite),
    ("closed-form", closed_form_suite),
    ("stationary", stationary_suite),
    ("dynamics", dynamics_suite),
    ("amm-consistency", amm_consistency_suite),
    ("grid-uniform", grid_uniform_suite),
    ("grid-quadrupole", grid_quadrupole_suite),
    ("grid-sheared", grid_sheared_suite),
])


def _run_one(name: str, settings: dict) -> List[Check]:
    logger.info("Running suite %s", name)
    checks = SUITES[name](settings)
    return [
        Check("{}.{}".format(name, c.check_id), c.value, c.threshold, c.relation, c.samples) for c in checks
    ]


def run_suite(name: str, settings: dict, params: dict = None, timestamp: str = None) -> VerificationReport:
    """
    Run a named suite, or every suite for "all", and collect the report.
    :param name: suite name.
    :param settings: verify config section.
    :param params: parameters echoed in the report.
    :param timestamp: optional timestamp for the report metadata.
    :return: verification report.
    """
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ConfigurationError("unknown suite {!r}, expected one of {}".format(name, ", ".join(list(SUITES) + ["all"])))

    workers = min(len(names), int(settings.get("workers", 1)))
    if workers > 1:
        # map keeps the declaration order of the suites
        with ThreadPool(workers) as pool:
            results = pool.starmap(_run_one, ((n, settings) for n in names))
    else:
        results = [_run_one(n, settings) for n in names]

    checks = [check for result in results for check in result]
    for check in checks:
        if not check.passed:
            logger.warning("check %s failed: %r %s %r", check.check_id, check.value, check.relation, check.threshold)
    return VerificationReport(suite=name, checks=checks, params=params or {}, timestamp=timestamp)
