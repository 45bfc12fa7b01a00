"""Gauge fields, the Maurer-Cartan cocycle, the actions V and V', cutoffs.

Gauge fields carry exact per-node derivative data (built from analytic
profiles through the block-exponential differential), so the cocycle identity
beta(psi phi) = V(psi) beta(phi) + beta(psi) is a machine-precision statement,
uncontaminated by grid differencing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import su2
from .grid import Field, GridManifold, GridError, norm
from .profiles import AnnulusStepProfile, PlateauProfile, Profile, derivative_sup_estimate


class ConditionCViolation(RuntimeError):
    """The domain admits no uniformly-derivative-bounded cutoff sequence."""


@dataclass(frozen=True, eq=False)
class GaugeField:
    """A map into SU(2) with exact differentials at the nodes.

    u has shape (n, 2, 2); du has shape (n, d, 2, 2) and holds the exact
    coordinate derivatives of u.
    """

    grid: GridManifold
    u: np.ndarray
    du: np.ndarray

    @property
    def support_mask(self) -> np.ndarray:
        dev = np.max(np.abs(self.u - su2.IDENTITY2), axis=(1, 2))
        return dev > 1e-14

    def unitarity_defect(self) -> float:
        return su2.group_defect(self.u)


@dataclass(frozen=True, eq=False)
class AlgebraValuedField:
    """su(2)-valued function with exact derivatives and a boundedness tag.

    bounded=True marks the C_b case (all derivative sups finite, e.g. constant
    functions); compactly supported fields are the special case where the
    support mask is interior.
    """

    grid: GridManifold
    values: np.ndarray  # (n, 3) real
    derivs: np.ndarray  # (n, d, 3) real
    bounded: bool = True

    @classmethod
    def from_profiles(cls, grid: GridManifold, profiles, bounded: bool = True):
        vals = np.stack([p.value(grid.nodes) for p in profiles], axis=1)
        ders = np.stack([p.gradient(grid.nodes) for p in profiles], axis=2)
        return cls(grid, vals, ders, bounded)

    @classmethod
    def constant(cls, grid: GridManifold, coeff) -> "AlgebraValuedField":
        vals = np.tile(np.asarray(coeff, float), (grid.node_count, 1))
        ders = np.zeros((grid.node_count, grid.dimension, 3))
        return cls(grid, vals, ders, bounded=True)


def gauge_identity(grid: GridManifold) -> GaugeField:
    n, d = grid.node_count, grid.dimension
    u = np.tile(su2.IDENTITY2, (n, 1, 1))
    du = np.zeros((n, d, 2, 2), dtype=complex)
    return GaugeField(grid, u, du)


def gauge_constant(grid: GridManifold, coeff) -> GaugeField:
    n, d = grid.node_count, grid.dimension
    g = su2.exp_map(np.asarray(coeff, float))
    u = np.tile(g, (n, 1, 1))
    du = np.zeros((n, d, 2, 2), dtype=complex)
    return GaugeField(grid, u, du)


def gauge_from_algebra(field: AlgebraValuedField, t: float = 1.0) -> GaugeField:
    """Pointwise exp(t Psi) with derivatives from the block exponential."""
    grid = field.grid
    a = su2.to_matrix(t * field.values)               # (n, 2, 2)
    u = su2.exp_map(t * field.values)
    n, d = grid.node_count, grid.dimension
    du = np.empty((n, d, 2, 2), dtype=complex)
    for j in range(d):
        aprime = su2.to_matrix(t * field.derivs[:, j, :])
        du[:, j] = su2.dexp_batch(a, aprime)
    return GaugeField(grid, u, du)


def gauge_from_profiles(grid: GridManifold, profiles) -> GaugeField:
    """psi(x) = exp(sum_k b_k(x) X_k) from three analytic profiles."""
    return gauge_from_algebra(AlgebraValuedField.from_profiles(grid, profiles))


def gauge_product(a: GaugeField, b: GaugeField) -> GaugeField:
    """Pointwise product with exact product-rule derivatives."""
    if not a.grid.compatible_with(b.grid):
        raise GridError("gauge fields live on different grids")
    u = a.u @ b.u
    du = (np.einsum("xjab,xbc->xjac", a.du, b.u)
          + np.einsum("xab,xjbc->xjac", a.u, b.du))
    return GaugeField(a.grid, u, du)


def gauge_inverse(a: GaugeField) -> GaugeField:
    ui = np.conj(np.swapaxes(a.u, -1, -2))
    du = -np.einsum("xab,xjbc,xcd->xjad", ui, a.du, ui)
    return GaugeField(a.grid, ui, du)


# ---------------------------------------------------------------------------
# The cocycle beta and the actions V, V'
# ---------------------------------------------------------------------------

def log_derivative(psi: GaugeField) -> Field:
    """beta(psi)(x) = dpsi_x psi(x)^{-1}, expressed on the algebra basis.

    The result is a g-valued one-form; an anti-Hermitian projection residual
    above 1e-10 indicates inconsistent derivative data and raises.
    """
    ui = np.conj(np.swapaxes(psi.u, -1, -2))
    m = np.einsum("xjab,xbc->xjac", psi.du, ui)
    resid = su2.basis_projection_residual(m)
    if resid > 1e-10:
        raise ValueError(
            f"derivative data inconsistent with a group-valued map "
            f"(projection residual {resid:.3e})")
    coeffs = su2.from_matrix(m)  # (n, d, 3), complex with tiny imaginary part
    return Field(psi.grid, 1, coeffs, algebra=True)


def v_action(psi: GaugeField, f: Field) -> Field:
    """V(psi) f: pointwise Ad(psi(x)) on the algebra leg."""
    if not psi.grid.compatible_with(f.grid):
        raise GridError("gauge field and one-form live on different grids")
    r = su2.rotation_of(psi.u)  # (n, 3, 3)
    if f.rank == 0:
        vals = np.einsum("xab,xb->xa", r, f.values)
    else:
        vals = np.einsum("xab,xjb->xja", r, f.values)
    return f.copy_with(vals)


def v_action_of_exp(field: AlgebraValuedField, t: float, f: Field) -> Field:
    """V(exp(t Psi)) f without derivative data (values only)."""
    r = su2.rotation_of(su2.exp_map(t * field.values))
    vals = np.einsum("xab,xjb->xja", r, f.values)
    return f.copy_with(vals)


def v_prime(field: AlgebraValuedField, f: Field) -> Field:
    """V'(Psi) f: pointwise ad(Psi(x)) = bracket with Psi on the algebra leg."""
    psi = field.values
    if f.rank == 0:
        vals = np.cross(psi, f.values)
    else:
        vals = np.cross(psi[:, None, :], f.values)
    return f.copy_with(vals)


def cocycle_residual(psi: GaugeField, phi: GaugeField,
                     rho: np.ndarray | None = None) -> float:
    """|beta(psi phi) - V(psi) beta(phi) - beta(psi)|_{rho,0}."""
    lhs = log_derivative(gauge_product(psi, phi))
    rhs = v_action(psi, log_derivative(phi)) + log_derivative(psi)
    return norm(lhs - rhs, rho)


def reality_defect(beta: Field) -> float:
    """Norm of the imaginary part; the cocycle is g-valued, hence real."""
    return float(np.max(np.abs(beta.values.imag))) if beta.values.size else 0.0


def exp_series_action(field: AlgebraValuedField, t: float, f: Field,
                      tol: float = 1e-16, max_terms: int = 60) -> Field:
    """sum_k (t V'(Psi))^k f / k!, the series form of V(exp(t Psi)) f."""
    acc = f
    term = f
    for k in range(1, max_terms):
        term = v_prime(field, term) * (t / k)
        acc = acc + term
        if np.max(np.abs(term.values)) < tol:
            break
    return acc


# ---------------------------------------------------------------------------
# Derived-action bound and the regularity check
# ---------------------------------------------------------------------------

def v_prime_bound_constant(field: AlgebraValuedField, test_set, m: int,
                           weight, iterations: int = 4) -> float:
    """Empirical constant C with |V'(Psi) f|'_m <= C |f|'_m over the test set.

    The max runs over the given fields and a few V' iterates of each, so the
    constant also controls the series terms used by the regularity bound.
    """
    from .seminorms import seminorm_prime

    best = 0.0
    for f in test_set:
        g = f
        for _ in range(iterations):
            num = seminorm_prime(v_prime(field, g), m, weight)
            den = seminorm_prime(g, m, weight)
            if den > 0:
                best = max(best, num / den)
            g = v_prime(field, g)
    return best


@dataclass(frozen=True)
class RegularityReport:
    t_list: tuple
    errors: tuple          # sup_f |(V(psi_t)f - f)/t - V'(Psi)f|_{rho,p} / |f|_{rho,q}
    slope: float
    bound_constant: float  # measured C(Psi, m)
    bound_margins: tuple   # per t: max_f error'_m / (t e^C |f|'_m); <= 1 expected


def regularity_check(field: AlgebraValuedField, test_set, t_list, p: float,
                     q: float, m: int, weight, decomposition) -> RegularityReport:
    """Difference-quotient convergence of V(exp(t Psi)) toward V'(Psi).

    The sup over the unit |.|_{rho,q} ball is rendered as a max over the
    fixed seeded test set (an under-approximation of the true sup).  Reports
    that sup error per t with a log-log slope fit, plus the series bound
    margin in the weighted-derivative seminorm.
    """
    from .seminorms import seminorm_p, seminorm_prime

    rho = weight.rho
    c_hat = v_prime_bound_constant(field, test_set, m, weight)
    errors = []
    margins = []
    for t in t_list:
        worst = 0.0
        worst_m = 0.0
        for f in test_set:
            vt = v_action_of_exp(field, t, f)
            quotient = (vt - f) * (1.0 / t) - v_prime(field, f)
            err = seminorm_p(quotient, p, decomposition)
            den = seminorm_p(f, q, decomposition)
            if den > 0:
                worst = max(worst, err / den)
            err_m = seminorm_prime(quotient, m, weight)
            den_m = seminorm_prime(f, m, weight)
            if den_m > 0:
                worst_m = max(worst_m, err_m / (t * np.exp(c_hat) * den_m))
        errors.append(worst)
        margins.append(worst_m)
    if min(errors) > 0.0:
        slope = float(np.polyfit(np.log(np.asarray(t_list)),
                                 np.log(np.asarray(errors)), 1)[0])
    else:
        slope = float("nan")  # identically zero error, e.g. Psi = 0
    return RegularityReport(tuple(t_list), tuple(errors), slope, c_hat,
                            tuple(margins))


# ---------------------------------------------------------------------------
# Cutoff sequences, condition (c), and the punctured-plane counterexample
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CutoffStage:
    index: int
    profile: Profile
    values: np.ndarray        # per node
    grad_values: np.ndarray   # (n, d), exact
    gradient_sup: float       # analytic sup over the collar
    derivative_bounds: dict   # order -> sup estimate, n-independent by design


def cutoff_sequence(grid: GridManifold, count: int, step: float,
                    collar: float) -> list:
    """Nested plateau cutoffs psi_n == 1 on |x| <= n*step, collar of fixed width.

    The fixed collar keeps every derivative bound independent of n, which is
    exactly what condition (c) requires; psi_n -> 1 pointwise as n grows.
    """
    stages = []
    for n in range(1, count + 1):
        prof = PlateauProfile(inner=n * step, collar=collar)
        vals = prof.value(grid.nodes)
        grads = prof.gradient(grid.nodes)
        bounds = {
            1: prof.gradient_sup(),
            2: derivative_sup_estimate(prof, 2, n * step, n * step + collar),
        }
        stages.append(CutoffStage(n, prof, vals, grads, prof.gradient_sup(),
                                  bounds))
    return stages


@dataclass(frozen=True)
class CutoffDecayReport:
    n_list: tuple
    values: tuple            # per f: tuple over n of |V'(Psi - Psi_n) f|_{rho,p}
    covered_from: tuple      # per f: first stage with psi_n == 1 on supp f (or -1)


def cutoff_approximation(field: AlgebraValuedField, stages, f_set, p: float,
                         decomposition) -> CutoffDecayReport:
    """Decay of |V'(Psi - Psi_n) f|_{rho,p} along the cutoff family.

    Psi_n := psi_n Psi.  Refuses on domains flagged as violating condition (c)
    (see punctured_plane_demo for why such domains admit no usable family).
    """
    from .seminorms import seminorm_p

    grid = field.grid
    if not grid.condition_c_ok:
        raise ConditionCViolation(
            "domain violates condition (c); no uniformly bounded cutoff "
            "sequence exists (see punctured_plane_demo)")
    if not field.bounded:
        raise ValueError("cutoff approximation needs a uniformly bounded field")
    rows = []
    covered = []
    for f in f_set:
        supp = np.max(np.abs(f.values.reshape(grid.node_count, -1)), axis=1) > 0
        row = []
        first_covered = -1
        for stage in stages:
            remainder = 1.0 - stage.values
            diff = AlgebraValuedField(grid, remainder[:, None] * field.values,
                                      np.zeros_like(field.derivs), field.bounded)
            row.append(seminorm_p(v_prime(diff, f), p, decomposition))
            if first_covered < 0 and np.all(stage.values[supp] == 1.0):
                first_covered = stage.index
        rows.append(tuple(row))
        covered.append(first_covered)
    return CutoffDecayReport(tuple(s.index for s in stages), tuple(rows),
                             tuple(covered))


@dataclass(frozen=True)
class PuncturedGrowthReport:
    eps_list: tuple
    gradient_sups: tuple
    ratios: tuple  # successive sup ratios under eps halving
    inner_zero_ok: bool
    outer_one_ok: bool


def punctured_plane_demo(eps_list) -> PuncturedGrowthReport:
    """Cutoffs on the punctured plane: vanish on the eps-disk, 1 outside 2 eps.

    Forcing pointwise convergence to 1 pushes the transition annulus into the
    puncture and the gradient sup grows like 1/eps, so condition (c) fails.
    """
    sups = []
    for eps in eps_list:
        prof = AnnulusStepProfile(float(eps))
        sups.append(prof.gradient_sup_dense())
    ratios = tuple(sups[i] / sups[i + 1] if eps_list[i] < eps_list[i + 1]
                   else sups[i + 1] / sups[i] for i in range(len(sups) - 1))
    # structural checks on the first profile at a dense radial sample
    prof = AnnulusStepProfile(float(eps_list[0]))
    r_in = np.linspace(0.0, prof.eps, 101)[:, None] * np.array([[1.0, 0.0]])
    r_out = np.linspace(2.0 * prof.eps, 4.0 * prof.eps, 101)[:, None] * np.array([[1.0, 0.0]])
    inner_ok = bool(np.all(prof.value(r_in) == 0.0))
    outer_ok = bool(np.all(prof.value(r_out) == 1.0))
    return PuncturedGrowthReport(tuple(float(e) for e in eps_list), tuple(sups),
                                 ratios, inner_ok, outer_ok)
