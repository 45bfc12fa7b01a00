"""The two seminorm families: spectral |.|_p and weighted-derivative |.|'_m.

|f|_{rho,p} = |H_rho^p f|_{rho,0} runs through spectral calculus of the
matching decomposition; |f|'_{rho,m} = sum_{n<=m} |W^m grad_rho^n f|_{rho,0}
uses the centered covariant derivative with the multiplicative rho twist
grad_rho = e^{-rho/2} grad e^{rho/2}.  Their empirical comparability across
grid refinements is the finite-truncation rendering of the topology
equivalence condition; it is a probe, never a proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .grid import (ALGEBRA_METRIC_FACTOR, Field, WeightField, covariant_derivative,
                   norm)
from .operators import SpectralDecomposition


def seminorm_p(f: Field, p: float, dec: SpectralDecomposition) -> float:
    """|f|_{rho,p} via eigen-expansion: sqrt(sum lambda^{2p} |c|^2).

    The decomposition fixes rho through its weights; p = 0 reproduces the
    base norm.
    """
    coeffs = dec.expand(f)
    weights = dec.eigenvalues[:, None] ** (2.0 * p)
    total = float(np.sum(weights * np.abs(coeffs) ** 2))
    if f.algebra:
        total *= ALGEBRA_METRIC_FACTOR
    return float(np.sqrt(max(total, 0.0)))


def twisted_derivative(f: Field, rho: np.ndarray, order: int) -> Field:
    """grad_rho^n f = e^{-rho/2} grad^n (e^{rho/2} f), exact as a chain."""
    half = np.exp(np.asarray(rho, float) / 2.0)
    out = f.scale_by_nodes(half)
    for _ in range(order):
        out = covariant_derivative(out)
    return out.scale_by_nodes(1.0 / half)


def seminorm_prime(f: Field, m: int, weight: WeightField) -> float:
    """|f|'_{rho,m} = sum_{n=0}^m |W^m grad_rho^n f|_{rho,0}."""
    if m < 0:
        raise ValueError("order m must be nonnegative")
    rho = weight.rho
    wm = weight.w ** m
    total = 0.0
    for n in range(m + 1):
        g = twisted_derivative(f, rho, n).scale_by_nodes(wm)
        total += norm(g, rho)
    return total


def weighted_chain_residual(f: Field, m: int, n: int, weight: WeightField) -> float:
    """Relative residual of |W^m grad_rho^n f|_{rho,0} = |W^m grad^n (e^{rho/2} f)|_0."""
    rho = weight.rho
    wm = weight.w ** m
    lhs = norm(twisted_derivative(f, rho, n).scale_by_nodes(wm), rho)
    g = f.scale_by_nodes(np.exp(rho / 2.0))
    for _ in range(n):
        g = covariant_derivative(g)
    rhs = norm(g.scale_by_nodes(wm), None)
    return abs(lhs - rhs) / max(lhs, rhs, 1.0)


# ---------------------------------------------------------------------------
# Equivalence probe
# ---------------------------------------------------------------------------

@dataclass
class SeminormReport:
    """Empirical comparability constants between |.|'_m and |.|_p.

    prime_values[(m, N)] and spec_values[(p, N)] hold the per-test-function
    seminorm values; constants[(m, p, N)] = (C_m_to_p, C_p_to_m), each the
    max ratio over the test set at grid size N.  selected[m] is the smallest
    grid p whose constants stay within a factor-2 band across refinements.
    """

    domain: str
    m_list: tuple
    p_grid: tuple
    n_list: tuple
    constants: dict = dc_field(default_factory=dict)
    prime_values: dict = dc_field(default_factory=dict)
    spec_values: dict = dc_field(default_factory=dict)
    selected: dict = dc_field(default_factory=dict)
    stable: dict = dc_field(default_factory=dict)
    sanity_rows: list = dc_field(default_factory=list)

    def stability_ratio(self, m: int, p: float) -> float:
        fwd = [self.constants[(m, p, n)][0] for n in self.n_list]
        bwd = [self.constants[(m, p, n)][1] for n in self.n_list]
        return max(max(fwd) / min(fwd), max(bwd) / min(bwd))

    def to_dict(self) -> dict:
        return {
            "domain": self.domain,
            "m_list": list(self.m_list),
            "p_grid": list(self.p_grid),
            "N_list": list(self.n_list),
            "constants": {
                f"m={m},p={p},N={n}": list(v)
                for (m, p, n), v in sorted(self.constants.items())
            },
            "prime_values": {f"m={m},N={n}": v for (m, n), v
                             in sorted(self.prime_values.items())},
            "spec_values": {f"p={p},N={n}": v for (p, n), v
                            in sorted(self.spec_values.items())},
            "selected_p": {str(m): self.selected[m] for m in self.selected},
            "stable_within_factor_2": {str(m): self.stable[m] for m in self.stable},
            "sanity_rows": self.sanity_rows,
        }


def equivalence_probe(domain: str, grids_and_data, m_list, p_grid) -> SeminormReport:
    """Probe |f|'_m <= C |f|_p and conversely over a fixed test set.

    grids_and_data: list of (N, weight, decomposition, test_fields) built by
    the caller with the same continuum test functions per grid size.
    """
    report = SeminormReport(domain, tuple(m_list), tuple(p_grid),
                            tuple(n for n, *_ in grids_and_data))
    for n_size, weight, dec, fields in grids_and_data:
        if not fields:
            raise ValueError("equivalence probe needs a nonempty test set")
        prime_vals = {}
        spec_vals = {}
        for m in m_list:
            prime_vals[m] = np.array([seminorm_prime(f, m, weight) for f in fields])
            report.prime_values[(m, n_size)] = [float(v) for v in prime_vals[m]]
        for p in p_grid:
            spec_vals[p] = np.array([seminorm_p(f, p, dec) for f in fields])
            report.spec_values[(p, n_size)] = [float(v) for v in spec_vals[p]]
        for m in m_list:
            for p in p_grid:
                with np.errstate(divide="ignore", invalid="ignore"):
                    fwd = float(np.max(prime_vals[m] / spec_vals[p]))
                    bwd = float(np.max(spec_vals[p] / prime_vals[m]))
                report.constants[(m, p, n_size)] = (fwd, bwd)
        # sanity row: the ground mode has comparable small values in both families
        gvals = np.zeros((weight.grid.node_count, weight.grid.dimension),
                         dtype=complex)
        gvals[:, 0] = dec.eigenvectors[:, 0]
        ground = Field.covector(weight.grid, gvals)
        report.sanity_rows.append({
            "N": n_size,
            "prime_m1": seminorm_prime(ground, 1, weight),
            "spec_p1": seminorm_p(ground, 1.0, dec),
        })
    for m in m_list:
        chosen = None
        for p in p_grid:
            if report.stability_ratio(m, p) <= 2.0:
                chosen = p
                break
        report.selected[m] = chosen
        report.stable[m] = chosen is not None
    return report
