"""Grids, quadrature, covariant derivatives, conformal rescaling."""
import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from energyrep.grid import (Field, GridError, WeightField, build_grid,
                            conformal_rescale, covariant_derivative,
                            covariant_derivative_adjoint, field_to_csv,
                            inner_product, norm, rebind)


def random_field(grid, rng, rank=1, algebra=False):
    shape = (grid.node_count,) + (grid.dimension,) * rank
    if algebra:
        shape = shape + (3,)
    vals = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return Field(grid, rank, vals, algebra)


class TestBuildGrid:
    def test_circle_8_nodes(self):
        g = build_grid("circle", 8, radius=1.0)
        assert g.node_count == 8
        # angles 2 pi k / 8 and uniform weight 2 pi / 8
        assert np.allclose(g.nodes[:, 0], 2 * np.pi * np.arange(8) / 8)
        assert np.allclose(g.measure_weights(), 2 * np.pi / 8)

    def test_interval_spacing(self):
        g = build_grid("interval", 100, halfwidth=5.0)
        assert g.topology == "truncated"
        assert np.allclose(g.spacing, 0.1)

    def test_torus_node_count(self):
        g = build_grid("torus", 16, radius=1.0)
        assert g.node_count == 256
        assert g.topology == "periodic"
        assert g.dimension == 2

    def test_rejects_bad_inputs(self):
        with pytest.raises(GridError):
            build_grid("mobius", 8)
        with pytest.raises(GridError):
            build_grid("interval", 8, halfwidth=-2.0)
        with pytest.raises(GridError):
            build_grid("circle", 3)

    def test_punctured_square_flagged(self):
        g = build_grid("punctured_square", 8, halfwidth=4.0)
        assert not g.condition_c_ok
        # cell-centered nodes with even count never hit the origin
        assert np.min(np.linalg.norm(g.nodes, axis=1)) > 0


class TestInnerProduct:
    def test_unit_covector_on_circle(self):
        # oracle: sum over 8 uniform nodes of 1 * (2 pi / 8)
        g = build_grid("circle", 8, radius=1.0)
        f = Field.covector(g, np.ones((8, 1), dtype=complex))
        expected = sum(1.0 * 2 * np.pi / 8 for _ in range(8))
        assert inner_product(f, f) == pytest.approx(expected, rel=1e-14)

    def test_pointwise_orthogonal_vanishes(self):
        g = build_grid("torus", 4, radius=1.0)
        a = np.zeros((16, 2), dtype=complex)
        b = np.zeros((16, 2), dtype=complex)
        a[:, 0] = 1.0
        b[:, 1] = 1.0
        assert inner_product(Field.covector(g, a), Field.covector(g, b)) == 0

    def test_antilinear_in_left_argument(self):
        g = build_grid("circle", 8, radius=1.0)
        rng = np.random.default_rng(9)
        f, h = random_field(g, rng), random_field(g, rng)
        z = 0.7 - 1.3j
        assert inner_product(f * z, h) == pytest.approx(
            np.conj(z) * inner_product(f, h), abs=1e-12)
        assert inner_product(f, h * z) == pytest.approx(
            z * inner_product(f, h), abs=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_conjugate_symmetry(self, seed):
        g = build_grid("circle", 8, radius=1.0)
        rng = np.random.default_rng(seed)
        f, h = random_field(g, rng), random_field(g, rng)
        assert inner_product(f, h) == pytest.approx(
            np.conj(inner_product(h, f)), abs=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1), st.integers(0, 2),
           st.booleans())
    def test_positive_definite_every_rank(self, seed, rank, algebra):
        g = build_grid("interval", 12, halfwidth=2.0)
        rng = np.random.default_rng(seed)
        f = random_field(g, rng, rank=rank, algebra=algebra)
        assert inner_product(f, f).real > 0

    def test_mismatch_errors(self):
        g1 = build_grid("circle", 8, radius=1.0)
        g2 = build_grid("circle", 16, radius=1.0)
        f1 = Field.covector(g1, np.ones((8, 1), dtype=complex))
        f2 = Field.covector(g2, np.ones((16, 1), dtype=complex))
        s1 = Field.scalar(g1, np.ones(8, dtype=complex))
        with pytest.raises(GridError):
            inner_product(f1, f2)
        with pytest.raises(GridError):
            inner_product(f1, s1)


class TestCovariantDerivative:
    def test_constant_field_has_zero_gradient(self):
        g = build_grid("circle", 16, radius=1.0)
        f = Field.scalar(g, np.full(16, 2.5))
        assert np.all(covariant_derivative(f).values == 0.0)

    def test_sine_on_circle(self):
        # oracle: centered-difference Taylor remainder <= h^2 (|f'''| <= 1)
        g = build_grid("circle", 64, radius=1.0)
        theta = g.nodes[:, 0]
        f = Field.scalar(g, np.sin(theta))
        df = covariant_derivative(f)
        err = np.max(np.abs(df.values[:, 0] - np.cos(theta)))
        assert err <= (2 * np.pi / 64) ** 2

    @pytest.mark.parametrize("shape,kw", [
        ("circle", {"radius": 1.0}),
        ("interval", {"halfwidth": 3.0}),
        ("torus", {"radius": 1.0}),
    ])
    def test_adjoint_identity_exact(self, shape, kw):
        g = build_grid(shape, 12, **kw)
        rng = np.random.default_rng(42)
        for rank in (0, 1):
            f = random_field(g, rng, rank=rank)
            t = random_field(g, rng, rank=rank + 1)
            lhs = inner_product(covariant_derivative(f), t)
            rhs = inner_product(f, covariant_derivative_adjoint(t))
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_second_order_convergence(self):
        # halving h cuts the max error by 4 +- 10 percent
        errs = []
        for n in (32, 64):
            g = build_grid("circle", n, radius=1.0)
            theta = g.nodes[:, 0]
            f = Field.scalar(g, np.sin(theta))
            err = np.max(np.abs(covariant_derivative(f).values[:, 0]
                                - np.cos(theta)))
            errs.append(err)
        ratio = errs[0] / errs[1]
        assert 3.6 <= ratio <= 4.4

    def test_second_order_on_truncated_domain(self):
        # the bump's third derivative peaks sharply, so the asymptotic
        # error-quartering needs the finer pair of grids
        from energyrep.profiles import BumpProfile
        prof = BumpProfile((0.0,), 2.5, 1.0)
        errs = []
        for n in (256, 512):
            g = build_grid("interval", n, halfwidth=3.0)
            f = Field.scalar(g, prof.value(g.nodes))
            err = np.max(np.abs(covariant_derivative(f).values[:, 0]
                                - prof.gradient(g.nodes)[:, 0]))
            errs.append(err)
        assert 3.6 <= errs[0] / errs[1] <= 4.4

    def test_requires_constant_scale(self):
        g = build_grid("circle", 8, radius=1.0)
        g2, _ = conformal_rescale(g, np.linspace(0, 1, 8))
        f = Field.scalar(g2, np.ones(8))
        with pytest.raises(GridError):
            covariant_derivative(f)

    def test_adjoint_exact_under_constant_rescale(self):
        # constant conformal factor: connection still flat, adjoint picks up 1/c
        g, _ = conformal_rescale(build_grid("circle", 12, radius=1.0),
                                 np.full(12, 0.8))
        rng = np.random.default_rng(17)
        f = random_field(g, rng, rank=0)
        t = random_field(g, rng, rank=1)
        lhs = inner_product(covariant_derivative(f), t)
        rhs = inner_product(f, covariant_derivative_adjoint(t))
        assert lhs == pytest.approx(rhs, abs=1e-12)


class TestConformalRescale:
    def test_d2_leaves_covector_products_invariant(self):
        g = build_grid("torus", 6, radius=1.0)
        rng = np.random.default_rng(1)
        rho = rng.uniform(-1, 1, g.node_count)
        g2, factor = conformal_rescale(g, rho)
        assert np.allclose(factor, 1.0)
        f, h = random_field(g, rng), random_field(g, rng)
        before = inner_product(f, h)
        after = inner_product(rebind(f, g2), rebind(h, g2))
        assert abs(after - before) <= 1e-12 * abs(before)

    def test_zero_rho_is_identity(self):
        g = build_grid("circle", 8, radius=1.0)
        g2, factor = conformal_rescale(g, np.zeros(8))
        assert np.all(g2.metric_scale == g.metric_scale)
        assert np.all(factor == 1.0)

    def test_d1_constant_rho_scales_by_analytic_factor(self):
        # oracle: combined factor e^{(1/2 - 1) * 2} = e^{-1}
        g = build_grid("circle", 8, radius=1.0)
        rng = np.random.default_rng(2)
        f = random_field(g, rng)
        g2, _ = conformal_rescale(g, np.full(8, 2.0))
        before = inner_product(f, f).real
        after = inner_product(rebind(f, g2), rebind(f, g2)).real
        assert after == pytest.approx(before * np.exp(-1.0), rel=1e-12)


class TestWeightField:
    def test_rejects_w_below_one(self):
        g = build_grid("circle", 8, radius=1.0)
        with pytest.raises(GridError):
            WeightField(g, np.full(8, 0.5), np.zeros(8))

    def test_quadratic_potential_values(self):
        g = build_grid("interval", 10, halfwidth=2.0)
        w = WeightField.quadratic(g, 1.0)
        assert np.allclose(w.w, g.nodes[:, 0] ** 2 + 1.0)


def test_field_csv_roundtrip(tmp_path):
    import csv
    g = build_grid("circle", 8, radius=1.0)
    f = random_field(g, np.random.default_rng(3))
    path = tmp_path / "field.csv"
    field_to_csv(f, path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0][0] == "x0"
    assert len(rows) == 1 + 8
    got = complex(float(rows[1][1]), float(rows[1][2]))
    assert got == pytest.approx(complex(f.values[0, 0]))
