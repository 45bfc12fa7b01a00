"""Coherent vectors, the representation U, and its structural properties."""
import math

import numpy as np
import pytest

from energyrep import fock, gauge
from energyrep.grid import Field, build_grid, inner_product, norm
from energyrep.sampling import random_gauge_field, random_one_form, rho_field


@pytest.fixture(scope="module")
def circle():
    return build_grid("circle", 24, radius=1.0)


@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(555)


class TestCoherentKernel:
    def test_vacuum_normalized(self, circle):
        vac = fock.CoherentVector(1.0, Field.zero(circle, 1, algebra=True))
        assert fock.coherent_inner(vac, vac) == 1.0

    def test_diagonal_kernel(self, circle, rng):
        f = random_one_form(circle, rng, normalized=True)
        v = fock.CoherentVector(1.0, f)
        expected = np.exp(inner_product(f, f).real)
        assert fock.coherent_inner(v, v) == pytest.approx(expected, rel=1e-14)

    def test_weighted_kernel_uses_rho(self, circle, rng):
        rho = rho_field(circle, "cosine", 0.5, 1)
        f = random_one_form(circle, rng, normalized=True)
        g = random_one_form(circle, rng, normalized=True)
        a, b = fock.CoherentVector(1.0, f), fock.CoherentVector(1.0, g)
        expected = np.exp(inner_product(f, g, rho))
        assert fock.coherent_inner(a, b, rho) == pytest.approx(expected,
                                                               rel=1e-14)


class TestTruncatedExpansion:
    def test_matches_kernel_within_tail_bound(self, circle, rng):
        # make the overlap sizable so the factorial tail is the binding term
        base = random_one_form(circle, rng, normalized=True)
        other = random_one_form(circle, rng, normalized=True)
        f = base * 0.95
        g = base * 0.7 + other * 0.4
        coords = fock.orthonormal_coordinates([f, g])
        exact = fock.coherent_inner(fock.CoherentVector(1.0, f),
                                    fock.CoherentVector(1.0, g))
        for cutoff in (6, 9, 12):
            tf = fock.TruncatedFockVector.from_coherent(coords[0], 1.0, cutoff)
            tg = fock.TruncatedFockVector.from_coherent(coords[1], 1.0, cutoff)
            diff = abs(exact - tf.inner(tg))
            bound = fock.truncation_tail_bound(norm(f), norm(g), cutoff)
            assert diff <= bound

    def test_factorial_convergence_rate(self, circle, rng):
        base = random_one_form(circle, rng, normalized=True)
        f, g = base * 0.9, base * 0.8
        coords = fock.orthonormal_coordinates([f, g])
        exact = fock.coherent_inner(fock.CoherentVector(1.0, f),
                                    fock.CoherentVector(1.0, g))
        diffs = []
        for cutoff in (4, 6, 8):
            tf = fock.TruncatedFockVector.from_coherent(coords[0], 1.0, cutoff)
            tg = fock.TruncatedFockVector.from_coherent(coords[1], 1.0, cutoff)
            diffs.append(abs(exact - tf.inner(tg)))
        assert diffs[0] > diffs[1] > diffs[2] > 0

    def test_gram_schmidt_preserves_inner_products(self, circle, rng):
        fields = [random_one_form(circle, rng) for _ in range(3)]
        coords = fock.orthonormal_coordinates(fields)
        for i in range(3):
            for j in range(3):
                want = inner_product(fields[i], fields[j])
                got = np.vdot(coords[i], coords[j])
                assert got == pytest.approx(want, abs=1e-10)

    def test_occupation_normalization(self):
        # single mode: exp(z) has amplitude z^n / sqrt(n!) on |n>
        v = fock.TruncatedFockVector.from_coherent(np.array([0.5 + 0.2j]),
                                                   1.0, 6)
        for n in range(7):
            amp = v.blocks[n][(n,)]
            want = (0.5 + 0.2j) ** n / math.sqrt(math.factorial(n))
            assert amp == pytest.approx(want, rel=1e-13)


class TestEnergyRepresentation:
    def test_identity_gauge_field_acts_trivially(self, circle, rng):
        f = random_one_form(circle, rng, normalized=True)
        v = fock.CoherentVector(1.3 - 0.4j, f)
        out = fock.apply_u(gauge.gauge_identity(circle), v)
        assert out.coeff == pytest.approx(v.coeff, rel=1e-14)
        assert np.max(np.abs(out.param.values - f.values)) == 0.0

    def test_unitary_on_kernel(self, circle, rng):
        for _ in range(20):
            rho = rho_field(circle, "random", 0.4, rng=rng)
            psi = random_gauge_field(circle, rng)
            f = random_one_form(circle, rng, normalized=True)
            g = random_one_form(circle, rng, normalized=True)
            assert fock.kernel_discrepancy(psi, f, g, rho) <= 1e-10

    def test_vacuum_image_has_unit_norm(self, circle, rng):
        # U psi exp(0) = e^{-|beta|^2/2} exp(beta), norm exactly 1
        psi = random_gauge_field(circle, rng)
        vac = fock.CoherentVector(1.0, Field.zero(circle, 1, algebra=True))
        out = fock.apply_u(psi, vac)
        beta = gauge.log_derivative(psi)
        assert out.coeff == pytest.approx(
            np.exp(-0.5 * inner_product(beta, beta).real), rel=1e-13)
        # beta is real up to dust, so the exponent's imaginary part is dust squared
        assert abs(out.coeff.imag) <= 1e-15 * abs(out.coeff)
        assert out.norm() == pytest.approx(1.0, abs=1e-12)

    def test_homomorphism_identity_right_factor(self, circle, rng):
        psi = random_gauge_field(circle, rng)
        fs = [random_one_form(circle, rng, normalized=True)]
        res = fock.homomorphism_check(psi, gauge.gauge_identity(circle), fs)
        assert abs(res.coeff_ratio - 1.0) <= 1e-13
        assert res.param_residual <= 1e-13

    def test_homomorphism_on_coherent_vectors(self, circle, rng):
        for _ in range(10):
            rho = rho_field(circle, "random", 0.4, rng=rng)
            psi = random_gauge_field(circle, rng)
            phi = random_gauge_field(circle, rng)
            fs = [random_one_form(circle, rng, normalized=True)]
            res = fock.homomorphism_check(psi, phi, fs, rho)
            assert abs(res.coeff_ratio - 1.0) <= 1e-9
            assert res.param_residual <= 1e-10

    def test_inverse_pair_returns_argument(self, circle, rng):
        psi = random_gauge_field(circle, rng)
        inv = gauge.gauge_inverse(psi)
        f = random_one_form(circle, rng, normalized=True)
        v = fock.CoherentVector(1.0, f)
        out = fock.apply_u(psi, fock.apply_u(inv, v))
        assert abs(out.coeff - 1.0) <= 1e-10
        assert norm(out.param - f) <= 1e-10


class TestConformal:
    def test_dimension2_invariant(self, rng):
        torus = build_grid("torus", 8, radius=1.0)
        psi = random_gauge_field(torus, rng, modes=2, amplitude=0.8)
        fs = [random_one_form(torus, rng, modes=2, normalized=True)
              for _ in range(2)]
        gs = [random_one_form(torus, rng, modes=2, normalized=True)
              for _ in range(2)]
        rho = rho_field(torus, "random", 0.5, rng=rng)
        rep = fock.conformal_check(psi, rho, fs, gs)
        assert rep.max_relative_change <= 1e-10

    def test_zero_rho_exactly_invariant(self, circle, rng):
        psi = random_gauge_field(circle, rng)
        fs = [random_one_form(circle, rng, normalized=True)]
        rep = fock.conformal_check(psi, np.zeros(circle.node_count), fs, fs)
        assert rep.max_relative_change == 0.0

    def test_dimension1_constant_rho_factor(self, circle, rng):
        # one-particle products scale by e^{(1/2-1) rho}; matrix elements follow
        psi = random_gauge_field(circle, rng)
        fs = [random_one_form(circle, rng, normalized=True) for _ in range(2)]
        gs = [random_one_form(circle, rng, normalized=True) for _ in range(2)]
        rep = fock.conformal_check(psi, np.full(circle.node_count, 1.0), fs, gs)
        assert rep.one_particle_scale == pytest.approx(np.exp(-0.5), rel=1e-14)
        assert rep.max_prediction_residual <= 1e-8
        assert rep.max_relative_change > 0.01  # genuinely not invariant in d=1

    def test_one_particle_products_scale(self, circle, rng):
        from energyrep.grid import conformal_rescale, rebind
        f = random_one_form(circle, rng, normalized=True)
        g2, _ = conformal_rescale(circle, np.full(circle.node_count, 1.0))
        before = inner_product(f, f).real
        after = inner_product(rebind(f, g2), rebind(f, g2)).real
        assert after == pytest.approx(before * np.exp(-0.5), rel=1e-12)
