"""Check suites behind the CLI subcommands.

Each suite builds its inputs from the experiment config and a dedicated
seeded stream, evaluates its checks, writes CSV tables, and returns a Report.
`all` is literally the concatenation of the individual suites; per-suite
streams make the reports independent of execution order.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import fock, gauge, hermite, operators, seminorms
from .config import ExperimentConfig
from .grid import Field, WeightField, build_grid, field_to_csv, norm
from .report import Report, check, digest_of, refusal, write_csv
from .sampling import (random_algebra_field, random_covector_testset,
                       random_gauge_field, random_one_form, rho_field,
                       suite_rng)

SUITE_STREAMS = {
    "spectrum": 1,
    "ladders": 2,
    "seminorms": 3,
    "gauge": 4,
    "fock": 5,
    "conformal": 6,
}


def _domain_grid(cfg: ExperimentConfig):
    shape = cfg.domain_shape
    if shape in ("circle", "torus"):
        return build_grid(shape, cfg.domain_nodes, radius=cfg.domain_radius)
    return build_grid(shape, cfg.domain_nodes, halfwidth=cfg.domain_halfwidth)


def _domain_weight(cfg: ExperimentConfig, grid, rho=None) -> WeightField:
    if cfg.potential_kind == "constant":
        return WeightField.constant(grid, cfg.potential_value, rho)
    return WeightField.quadratic(grid, cfg.potential_value, rho)


def _domain_rho(cfg: ExperimentConfig, grid, rng) -> np.ndarray:
    return rho_field(grid, cfg.rho_profile, cfg.rho_amplitude, cfg.rho_mode,
                     rng)


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def _circle_modes(n: int) -> np.ndarray:
    """Fourier mode multiplicities on n nodes: 0, +-1, ..., (+-n/2 if even)."""
    if n % 2 == 0:
        return np.concatenate([[0], np.repeat(np.arange(1, n // 2), 2),
                               [n // 2]])
    return np.concatenate([[0], np.repeat(np.arange(1, (n + 1) // 2), 2)])


def suite_spectrum(cfg: ExperimentConfig, outdir: Path) -> Report:
    rng = suite_rng(cfg.seed, SUITE_STREAMS["spectrum"])
    rep = Report("spectrum", cfg.seed, cfg.digest())
    dig = lambda *p: digest_of("spectrum", cfg.seed, cfg.digest(), *p)

    grid = _domain_grid(cfg)
    rho = _domain_rho(cfg, grid, rng)
    weight = _domain_weight(cfg, grid)
    h_op = operators.assemble_h(grid, weight)
    rep.add(check("h_symmetry", dig("sym"), h_op.symmetry_residual(), 1e-12))

    dec = h_op.eigendecomposition()
    rep.add(check("eigen_residual", dig("eig"), dec.eigen_residual(h_op), 1e-8))
    rep.add(check("gram_identity", dig("gram"), dec.gram_residual(), 1e-10))
    rep.add(check("lambda1_exceeds_1", dig("hyp"),
                  float(dec.eigenvalues[0]) - 1.0, 1e-9, comparator=">="))
    write_csv(outdir, "spectrum_domain",
              ["index", "eigenvalue"],
              [(i + 1, float(v)) for i, v in enumerate(dec.eigenvalues)])

    # reference: periodic dispersion is exact for the link-built Laplacian
    nc = cfg.spectrum_circle_nodes
    circle = build_grid("circle", nc, radius=1.0)
    h_circle = operators.assemble_h(circle, WeightField.constant(circle, 2.0))
    lam = np.sort(h_circle.eigendecomposition().eigenvalues)
    h = 2.0 * np.pi / nc
    ks = _circle_modes(nc)
    formula = np.sort((2.0 / h ** 2) * (1.0 - np.cos(ks * h)) + 2.0)
    rep.add(check("circle_dispersion_formula", dig("disp"),
                  float(np.max(np.abs(lam - formula))), 1e-9))
    # second-order stencil: continuum deficit is k^4 h^2 / 12 + O(h^4)
    kmax = nc // 8
    worst = 0.0
    for k in range(1, kmax + 1):
        lam_k = (2.0 / h ** 2) * (1.0 - np.cos(k * h)) + 2.0
        taylor = k ** 4 * h ** 2 / 12.0
        worst = max(worst, abs(lam_k - (k ** 2 + 2.0)) / taylor)
    rep.add(check("circle_continuum_taylor_bound", dig("taylor"), worst, 1.05,
                  detail="deficit vs k^2+2 within the k^4 h^2/12 envelope"))

    n_osc = cfg.spectrum_oscillator_nodes
    osc_grid = build_grid("interval", n_osc,
                          halfwidth=cfg.spectrum_oscillator_halfwidth)
    h_osc = operators.assemble_h(osc_grid, WeightField.quadratic(osc_grid, 1.0))
    lam_osc = np.sort(h_osc.eigendecomposition().eigenvalues)[:11]
    target = 2.0 * np.arange(11) + 2.0
    rep.add(check("oscillator_spectrum", dig("osc"),
                  float(np.max(np.abs(lam_osc - target) / target)), 5e-3))
    write_csv(outdir, "spectrum_oscillator", ["index", "eigenvalue", "target"],
              [(i, float(v), float(t)) for i, (v, t) in
               enumerate(zip(lam_osc, target))])

    hs = operators.hilbert_schmidt_test(dec, cfg.hs_p)
    rep.extras["hilbert_schmidt"] = hs.to_dict()
    hs_dir = Path(outdir)
    hs_dir.mkdir(parents=True, exist_ok=True)
    (hs_dir / "hilbert_schmidt.json").write_text(
        json.dumps(hs.to_dict(), indent=2, sort_keys=True) + "\n")
    rep.add(check("hs_verdict_converging", dig("hs"),
                  1.0 if hs.verdict == "converging" else 0.0, 1.0,
                  comparator=">=", detail=f"verdict={hs.verdict}"))

    h_rho, conj = operators.conjugated_operator(h_op, rho)
    rep.add(check("conjugated_adjoint_identity", dig("eq-adj"),
                  conj["adjoint_identity_residual"], 1e-12))
    rep.add(check("conjugated_symmetry", dig("rsym"),
                  h_rho.symmetry_residual(), 1e-12))
    dec_rho = h_rho.eigendecomposition()
    rep.add(check("conjugated_spectrum_match", dig("spec"),
                  float(np.max(np.abs(np.sort(dec_rho.eigenvalues)
                                      - np.sort(dec.eigenvalues)))), 1e-8))
    rep.add(check("conjugated_eigenpair_map", dig("map"),
                  conj["eigenpair_residual"], 1e-8))

    # multiplicative chain for the twisted derivative norms, m <= 3
    wfield = _domain_weight(cfg, grid, rho)
    worst_chain = 0.0
    for _ in range(5):
        f = random_one_form(grid, rng, modes=3, amplitude=1.0)
        for m in range(4):
            for n in range(m + 1):
                worst_chain = max(worst_chain,
                                  seminorms.weighted_chain_residual(f, m, n, wfield))
    rep.add(check("twisted_chain_identity", dig("chain"), worst_chain, 1e-12))

    rep.write_json(outdir)
    return rep


# ---------------------------------------------------------------------------
# ladders
# ---------------------------------------------------------------------------

def _guarded_sample(ladder, rng, margin: int) -> np.ndarray:
    mask = ladder.guard_mask(margin)
    v = np.zeros(ladder.size)
    v[mask] = rng.standard_normal(int(np.sum(mask)))
    nrm = np.linalg.norm(v)
    return v / nrm if nrm > 0 else v


def suite_ladders(cfg: ExperimentConfig, outdir: Path) -> Report:
    rng = suite_rng(cfg.seed, SUITE_STREAMS["ladders"])
    rep = Report("ladders", cfg.seed, cfg.digest())
    dig = lambda *p: digest_of("ladders", cfg.seed, cfg.digest(), *p)

    ladder = hermite.build_ladders(2, cfg.ladders_cutoff)
    rep.add(check("ccr_below_guard", dig("ccr"), hermite.ccr_residual(ladder),
                  1e-14))
    rep.add(check("oscillator_identity", dig("osc-id"),
                  hermite.oscillator_identity_residual(ladder), 1e-13))
    vac = ladder.vacuum()
    lowered = ladder.lowering[0] @ vac
    rep.add(check("vacuum_annihilated", dig("vac"),
                  float(np.linalg.norm(lowered)), 0.0))

    violations = 0
    worst_ratio = 0.0
    for _ in range(cfg.ladders_samples):
        f = _guarded_sample(ladder, rng, 4)
        res = hermite.canonical_chain_check(ladder, f)
        worst_ratio = max(worst_ratio, res.ratio)
        if res.lhs > res.rhs * (1.0 + 1e-13):
            violations += 1
    rep.add(check("worked_chain_violations", dig("chain"), float(violations),
                  0.0, detail=f"max ratio {worst_ratio:.6f} over "
                              f"{cfg.ladders_samples} samples"))

    words = [
        ((0, True),),
        ((0, False), (1, True)),
        ((0, True), (0, False), (1, True)),
        ((1, False), (0, True), (1, True), (0, False)),
    ]
    rows = []
    worst_word = 0.0
    expansion_resid = 0.0
    for word in words:
        m = len(word)
        c = hermite.word_bound_constant(word, 2)
        word_max = 0.0
        for _ in range(50):
            f = _guarded_sample(ladder, rng, m)
            res = hermite.commutation_bound_check(ladder, word, f)
            word_max = max(word_max, res.ratio)
        worst_word = max(worst_word, word_max)
        rows.append(["".join(("R" if r else "L") + str(j) for j, r in word),
                     m, c, word_max])
        expansion = hermite.normal_order(
            hermite.word_dagger(word) + word, 2)
        brute = hermite.word_matrix(ladder, hermite.word_dagger(word) + word)
        ordered = hermite.expansion_matrix(ladder, expansion)
        mask = ladder.guard_mask(2 * m)
        scale = max(float(np.max(np.abs(brute))), 1.0)
        expansion_resid = max(expansion_resid, float(
            np.max(np.abs((brute - ordered)[:, mask]))) / scale)
    rep.add(check("word_bounds_hold", dig("words"), worst_word, 1.0))
    rep.add(check("normal_order_vs_brute_force", dig("no"), expansion_resid,
                  1e-12))
    write_csv(outdir, "ladder_words", ["word", "m", "constant", "last_ratio"],
              rows)

    rep.write_json(outdir)
    return rep


# ---------------------------------------------------------------------------
# seminorms
# ---------------------------------------------------------------------------

def _probe_data(domain: str, cfg: ExperimentConfig, seed_stream):
    from .profiles import BumpProfile

    data = []
    for n_size in cfg.seminorms_nodes:
        rng = suite_rng(cfg.seed, seed_stream)  # same functions per N
        if domain == "circle":
            grid = build_grid("circle", n_size, radius=1.0)
            weight = WeightField.constant(grid, 2.0)
            bump = BumpProfile((np.pi,), 2.5, 1.0)
        else:
            grid = build_grid("interval", n_size,
                              halfwidth=cfg.seminorms_interval_halfwidth)
            weight = WeightField.quadratic(grid, 1.0)
            bump = BumpProfile((0.0,), cfg.seminorms_interval_halfwidth / 2, 1.0)
        dec = operators.assemble_h(grid, weight).eigendecomposition()
        fields = random_covector_testset(grid, rng, cfg.seminorms_functions)
        # fixed bump and low eigenvectors round out the random members
        bvals = np.zeros((grid.node_count, 1), dtype=complex)
        bvals[:, 0] = bump.value(grid.nodes)
        fields.append(Field.covector(grid, bvals))
        for k in range(3):
            vals = np.zeros((grid.node_count, 1), dtype=complex)
            vals[:, 0] = dec.eigenvectors[:, k]
            fields.append(Field.covector(grid, vals))
        data.append((n_size, weight, dec, fields))
    return data


def suite_seminorms(cfg: ExperimentConfig, outdir: Path) -> Report:
    rep = Report("seminorms", cfg.seed, cfg.digest())
    dig = lambda *p: digest_of("seminorms", cfg.seed, cfg.digest(), *p)
    rng = suite_rng(cfg.seed, SUITE_STREAMS["seminorms"] + 100)

    rows = []
    for domain, stream in (("circle", 21), ("interval", 22)):
        data = _probe_data(domain, cfg, stream)
        report = seminorms.equivalence_probe(domain, data, cfg.seminorms_m_list,
                                             cfg.seminorms_p_grid)
        rep.extras[f"probe_{domain}"] = report.to_dict()
        for m in cfg.seminorms_m_list:
            if m > 2:
                continue
            best = min(report.stability_ratio(m, p) for p in cfg.seminorms_p_grid)
            rep.add(check(f"{domain}_constants_stable_m{m}",
                          dig(domain, m), best, 2.0,
                          detail=f"selected p={report.selected[m]}"))
        for (m, p, n_size), (fwd, bwd) in sorted(report.constants.items()):
            rows.append([domain, m, p, n_size, fwd, bwd])
    write_csv(outdir, "seminorm_constants",
              ["domain", "m", "p", "N", "C_prime_to_spec", "C_spec_to_prime"],
              rows)

    # spectral-seminorm structure on the largest circle grid
    n_size = max(cfg.seminorms_nodes)
    grid = build_grid("circle", n_size, radius=1.0)
    weight = WeightField.constant(grid, 2.0)
    dec = operators.assemble_h(grid, weight).eigendecomposition()
    mono_defect = 0.0
    eig_defect = 0.0
    for _ in range(10):
        f = random_one_form(grid, rng, modes=3)
        v0 = seminorms.seminorm_p(f, 0.0, dec)
        v1 = seminorms.seminorm_p(f, 0.5, dec)
        v2 = seminorms.seminorm_p(f, 1.5, dec)
        mono_defect = max(mono_defect, v0 - v1, v1 - v2)
    for k in (0, 3, 7):
        vals = np.zeros((grid.node_count, 1), dtype=complex)
        vals[:, 0] = dec.eigenvectors[:, k]
        ef = Field.covector(grid, vals)
        got = seminorms.seminorm_p(ef, 1.25, dec)
        want = float(dec.eigenvalues[k] ** 1.25)
        eig_defect = max(eig_defect, abs(got - want) / want)
    rep.add(check("p_scale_monotone", dig("mono"), mono_defect, 1e-12))
    rep.add(check("eigenvector_p_norm", dig("eig"), eig_defect, 1e-10))

    # weighted scale equals the conjugated spectral scale
    rho = rho_field(grid, "cosine", 0.4, 1)
    h_rho, _ = operators.conjugated_operator(
        operators.assemble_h(grid, weight), rho)
    dec_rho = h_rho.eigendecomposition()
    intertwine = 0.0
    for _ in range(5):
        f = random_one_form(grid, rng, modes=3)
        lhs = seminorms.seminorm_p(f, 1.0, dec_rho)
        rhs = seminorms.seminorm_p(f.scale_by_nodes(np.exp(rho / 2.0)), 1.0, dec)
        intertwine = max(intertwine, abs(lhs - rhs) / max(lhs, rhs))
    rep.add(check("weighted_scale_intertwines", dig("twine"), intertwine, 1e-10))

    rep.write_json(outdir)
    return rep


# ---------------------------------------------------------------------------
# gauge
# ---------------------------------------------------------------------------

def suite_gauge(cfg: ExperimentConfig, outdir: Path) -> Report:
    rng = suite_rng(cfg.seed, SUITE_STREAMS["gauge"])
    rep = Report("gauge", cfg.seed, cfg.digest())
    dig = lambda *p: digest_of("gauge", cfg.seed, cfg.digest(), *p)

    domain = _domain_grid(cfg)
    if not domain.condition_c_ok:
        rep.add(refusal("suite_refused_condition_c", dig("refuse"),
                        "domain violates condition (c); cutoff machinery is "
                        "unavailable, see the punctured growth table"))
        _punctured_checks(cfg, rep, dig, outdir)
        rep.write_json(outdir)
        return rep

    grid = build_grid("circle", cfg.gauge_nodes, radius=1.0)
    rho = rho_field(grid, "cosine", cfg.rho_amplitude, cfg.rho_mode)

    worst_cocycle = 0.0
    worst_real = 0.0
    worst_iso = 0.0
    worst_homo = 0.0
    beta_sample = None
    for _ in range(cfg.gauge_pairs):
        psi = random_gauge_field(grid, rng, cfg.gauge_modes, cfg.gauge_amplitude)
        phi = random_gauge_field(grid, rng, cfg.gauge_modes, cfg.gauge_amplitude)
        worst_cocycle = max(worst_cocycle, gauge.cocycle_residual(psi, phi, rho))
        beta = gauge.log_derivative(psi)
        if beta_sample is None:
            beta_sample = beta
        worst_real = max(worst_real, gauge.reality_defect(beta))
        f = random_one_form(grid, rng, modes=3, normalized=True)
        nf = norm(f, rho)
        worst_iso = max(worst_iso,
                        abs(norm(gauge.v_action(psi, f), rho) - nf) / nf)
        both = gauge.v_action(gauge.gauge_product(psi, phi), f)
        nested = gauge.v_action(psi, gauge.v_action(phi, f))
        worst_homo = max(worst_homo, norm(both - nested, rho))
    rep.add(check("cocycle_identity", dig("cocycle"), worst_cocycle, 1e-10))
    rep.add(check("cocycle_real_valued", dig("real"), worst_real, 1e-10))
    rep.add(check("v_isometry", dig("iso"), worst_iso, 1e-12))
    rep.add(check("v_homomorphism", dig("homo"), worst_homo, 1e-12))
    field_to_csv(beta_sample, Path(outdir) / "gauge_beta_sample.csv")

    psi_field = random_algebra_field(grid, rng, cfg.gauge_modes, 1.0)
    f = random_one_form(grid, rng, modes=3, normalized=True)
    series = gauge.exp_series_action(psi_field, 1.0, f)
    direct = gauge.v_action_of_exp(psi_field, 1.0, f)
    rep.add(check("exp_series_matches_action", dig("series"),
                  norm(series - direct, rho), 1e-10))

    weight = WeightField.constant(grid, 2.0, rho)
    dec = operators.conjugated_operator(
        operators.assemble_h(grid, weight), rho)[0].eigendecomposition()
    test_set = [random_one_form(grid, rng, modes=3, normalized=True)
                for _ in range(cfg.regularity_functions)]
    reg = gauge.regularity_check(psi_field, test_set, cfg.regularity_t_list,
                                 cfg.regularity_p, cfg.regularity_q,
                                 cfg.regularity_m, weight, dec)
    rep.extras["regularity"] = {
        "t": list(reg.t_list), "error": list(reg.errors),
        "slope": reg.slope, "constant": reg.bound_constant,
        "bound_margins": list(reg.bound_margins),
    }
    rep.add(check("regularity_slope", dig("slope"), abs(reg.slope - 1.0), 0.05,
                  detail=f"slope={reg.slope:.4f}"))
    rep.add(check("regularity_series_bound", dig("bound"),
                  float(max(reg.bound_margins)), 1.0))
    write_csv(outdir, "gauge_regularity", ["t", "sup_error"],
              list(zip(reg.t_list, reg.errors)))

    _cutoff_checks(cfg, rep, dig, outdir)
    _punctured_checks(cfg, rep, dig, outdir)

    rep.write_json(outdir)
    return rep


def _cutoff_checks(cfg: ExperimentConfig, rep: Report, dig, outdir: Path) -> None:
    grid = build_grid("interval", cfg.cutoff_nodes, halfwidth=cfg.cutoff_halfwidth)
    weight = WeightField.quadratic(grid, 1.0)
    dec = operators.assemble_h(grid, weight).eigendecomposition()
    psi = gauge.AlgebraValuedField.constant(grid, (0.8, -0.5, 0.3))
    stages = gauge.cutoff_sequence(grid, cfg.cutoff_count, cfg.cutoff_step,
                                   cfg.cutoff_collar)

    n = grid.node_count
    gauss = np.zeros((n, 1, 3), dtype=complex)
    gauss[:, 0, 0] = np.exp(-grid.nodes[:, 0] ** 2 / 4.0)
    gauss[:, 0, 1] = 0.5 * np.exp(-grid.nodes[:, 0] ** 2 / 4.5)
    from .profiles import BumpProfile
    bump = np.zeros((n, 1, 3), dtype=complex)
    bump[:, 0, 1] = BumpProfile((0.0,), 2.0, 1.0).value(grid.nodes)
    f_set = [Field(grid, 1, gauss, algebra=True),
             Field(grid, 1, bump, algebra=True)]

    try:
        decay = gauge.cutoff_approximation(psi, stages, f_set, cfg.cutoff_p, dec)
    except gauge.ConditionCViolation as exc:
        rep.add(refusal("cutoff_decay", dig("cut"), str(exc)))
        return
    worst_tail = 0.0
    worst_monotone = 0.0
    worst_covered = 0.0
    for row, covered in zip(decay.values, decay.covered_from):
        first = row[0]
        worst_tail = max(worst_tail, row[-1] / first)
        for a, b in zip(row, row[1:]):
            worst_monotone = max(worst_monotone, (b - a) / max(first, 1e-300))
        if covered > 0:
            idx = decay.n_list.index(covered)
            worst_covered = max(worst_covered, max(row[idx:]))
    rep.add(check("cutoff_decay_tail", dig("tail"), worst_tail, 1e-3))
    rep.add(check("cutoff_decay_monotone", dig("monotone"), worst_monotone,
                  1e-12))
    rep.add(check("cutoff_exact_zero_when_covered", dig("zero"), worst_covered,
                  0.0))
    rep.extras["cutoff_sup_gradients"] = [s.gradient_sup for s in stages]
    write_csv(outdir, "gauge_cutoff_decay",
              ["n"] + [f"f{i}" for i in range(len(decay.values))],
              [(nn,) + tuple(decay.values[i][j] for i in range(len(decay.values)))
               for j, nn in enumerate(decay.n_list)])


def _punctured_checks(cfg: ExperimentConfig, rep: Report, dig, outdir: Path) -> None:
    eps_list = [cfg.punctured_eps0 * 0.5 ** i
                for i in range(cfg.punctured_halvings + 1)]
    growth = gauge.punctured_plane_demo(eps_list)
    rep.add(check("punctured_gradient_growth", dig("grow"),
                  float(min(growth.ratios)), 1.9, comparator=">=",
                  detail=f"sup at eps0: {growth.gradient_sups[0]:.6f}"))
    rep.add(check("punctured_profile_plateaus", dig("plateau"),
                  0.0 if (growth.inner_zero_ok and growth.outer_one_ok) else 1.0,
                  0.0))
    write_csv(outdir, "gauge_punctured_growth", ["eps", "sup_gradient"],
              list(zip(growth.eps_list, growth.gradient_sups)))


# ---------------------------------------------------------------------------
# fock
# ---------------------------------------------------------------------------

def suite_fock(cfg: ExperimentConfig, outdir: Path) -> Report:
    rng = suite_rng(cfg.seed, SUITE_STREAMS["fock"])
    rep = Report("fock", cfg.seed, cfg.digest())
    dig = lambda *p: digest_of("fock", cfg.seed, cfg.digest(), *p)

    grid = build_grid("circle", cfg.fock_nodes, radius=1.0)

    worst_unitary = 0.0
    for _ in range(cfg.fock_tuples):
        rho = rho_field(grid, "random", 0.4, rng=rng)
        psi = random_gauge_field(grid, rng, cfg.gauge_modes, 1.0)
        f = random_one_form(grid, rng, modes=3, normalized=True)
        g = random_one_form(grid, rng, modes=3, normalized=True)
        worst_unitary = max(worst_unitary,
                            fock.kernel_discrepancy(psi, f, g, rho))
    rep.add(check("u_unitary_kernel", dig("uni"), worst_unitary, 1e-10))

    worst_coeff = 0.0
    worst_param = 0.0
    for _ in range(cfg.fock_pairs):
        rho = rho_field(grid, "random", 0.4, rng=rng)
        psi = random_gauge_field(grid, rng, cfg.gauge_modes, 1.0)
        phi = random_gauge_field(grid, rng, cfg.gauge_modes, 1.0)
        f_set = [random_one_form(grid, rng, modes=3, normalized=True)]
        res = fock.homomorphism_check(psi, phi, f_set, rho)
        worst_coeff = max(worst_coeff, abs(res.coeff_ratio - 1.0))
        worst_param = max(worst_param, res.param_residual)
    rep.add(check("u_homomorphism_coefficient", dig("coeff"), worst_coeff, 1e-9))
    rep.add(check("u_homomorphism_parameter", dig("param"), worst_param, 1e-10))

    vac = fock.CoherentVector(1.0, Field.zero(grid, 1, algebra=True))
    rep.add(check("vacuum_kernel", dig("vac"),
                  abs(fock.coherent_inner(vac, vac) - 1.0), 0.0))
    psi = random_gauge_field(grid, rng, cfg.gauge_modes, 1.0)
    moved = fock.apply_u(psi, vac, None)
    rep.add(check("translated_vacuum_norm", dig("tvac"),
                  abs(moved.norm() - 1.0), 1e-12))

    worst_trunc = 0.0
    for _ in range(10):
        base = random_one_form(grid, rng, modes=3, normalized=True)
        other = random_one_form(grid, rng, modes=3, normalized=True)
        f = base * 0.9
        g = base * 0.6 + other * 0.4  # sizable overlap, so the tail binds
        coords = fock.orthonormal_coordinates([f, g])
        tf = fock.TruncatedFockVector.from_coherent(coords[0], 1.0, cfg.fock_cutoff)
        tg = fock.TruncatedFockVector.from_coherent(coords[1], 1.0, cfg.fock_cutoff)
        exact = fock.coherent_inner(fock.CoherentVector(1.0, f),
                                    fock.CoherentVector(1.0, g))
        bound = fock.truncation_tail_bound(norm(f), norm(g), cfg.fock_cutoff)
        worst_trunc = max(worst_trunc, abs(exact - tf.inner(tg)) / bound)
    rep.add(check("kernel_vs_truncated_expansion", dig("trunc"), worst_trunc,
                  1.0, detail="difference over the factorial tail bound"))

    rep.write_json(outdir)
    return rep


# ---------------------------------------------------------------------------
# conformal
# ---------------------------------------------------------------------------

def suite_conformal(cfg: ExperimentConfig, outdir: Path) -> Report:
    rng = suite_rng(cfg.seed, SUITE_STREAMS["conformal"])
    rep = Report("conformal", cfg.seed, cfg.digest())
    dig = lambda *p: digest_of("conformal", cfg.seed, cfg.digest(), *p)

    torus = build_grid("torus", cfg.conformal_torus_nodes, radius=1.0)
    psi2 = random_gauge_field(torus, rng, 2, 0.8)
    f_set = [random_one_form(torus, rng, modes=2, normalized=True)
             for _ in range(cfg.conformal_elements)]
    g_set = [random_one_form(torus, rng, modes=2, normalized=True)
             for _ in range(cfg.conformal_elements)]
    rho2 = rho_field(torus, "random", cfg.conformal_rho_amplitude, rng=rng)
    res2 = fock.conformal_check(psi2, rho2, f_set, g_set)
    rep.add(check("dimension2_invariance", dig("d2"),
                  res2.max_relative_change, 1e-10))

    zero = fock.conformal_check(psi2, np.zeros(torus.node_count), f_set[:2],
                                g_set[:2])
    rep.add(check("zero_rescale_identity", dig("zero"),
                  zero.max_relative_change, 0.0))

    circle = build_grid("circle", cfg.conformal_circle_nodes, radius=1.0)
    psi1 = random_gauge_field(circle, rng, 2, 0.8)
    f1 = [random_one_form(circle, rng, modes=2, normalized=True)
          for _ in range(cfg.conformal_elements)]
    g1 = [random_one_form(circle, rng, modes=2, normalized=True)
          for _ in range(cfg.conformal_elements)]
    rho1 = np.full(circle.node_count, 1.0)
    res1 = fock.conformal_check(psi1, rho1, f1, g1)
    rep.add(check("dimension1_matches_factor", dig("d1"),
                  res1.max_prediction_residual, 1e-8,
                  detail=f"one-particle scale {res1.one_particle_scale:.6f}"))
    rep.extras["dimension1_max_change"] = res1.max_relative_change

    rep.write_json(outdir)
    return rep


SUITES = {
    "spectrum": suite_spectrum,
    "ladders": suite_ladders,
    "seminorms": suite_seminorms,
    "gauge": suite_gauge,
    "fock": suite_fock,
    "conformal": suite_conformal,
}


def run_suite(name: str, cfg: ExperimentConfig, outdir: Path) -> list:
    if name == "all":
        return [SUITES[s](cfg, outdir) for s in SUITES]
    return [SUITES[name](cfg, outdir)]
