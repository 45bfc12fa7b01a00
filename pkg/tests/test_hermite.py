"""Ladder-operator algebra on the truncated Hermite basis."""
import numpy as np
import pytest

from energyrep import hermite


@pytest.fixture(scope="module")
def ladder2():
    return hermite.build_ladders(2, 16)


@pytest.fixture(scope="module")
def ladder1():
    return hermite.build_ladders(1, 12)


def guarded_random(ladder, rng, margin):
    mask = ladder.guard_mask(margin)
    v = np.zeros(ladder.size)
    v[mask] = rng.standard_normal(int(np.sum(mask)))
    return v / np.linalg.norm(v)


class TestStructure:
    def test_ccr(self, ladder2):
        assert hermite.ccr_residual(ladder2) <= 1e-14

    def test_lowering_commute(self, ladder2):
        a1, a2 = ladder2.lowering
        assert np.max(np.abs(a1 @ a2 - a2 @ a1)) == 0.0

    def test_raising_is_adjoint(self, ladder2):
        for a, ad in zip(ladder2.lowering, ladder2.raising):
            assert np.array_equal(ad, a.T)

    def test_number_diagonal(self, ladder2):
        n_tot = ladder2.number_total
        assert np.allclose(n_tot, np.diag(ladder2.degrees()), atol=1e-13)

    def test_bound_operator_on_state(self, ladder2):
        # (2N + d + 1) |n> = (2n + d + 1) |n>
        for deg in [(0, 0), (3, 2), (7, 1)]:
            v = ladder2.state(deg)
            out = ladder2.bound_operator(1.0) @ v
            assert np.allclose(out, (2 * sum(deg) + 3) * v)

    def test_vacuum_annihilated(self, ladder2):
        for a in ladder2.lowering:
            assert np.linalg.norm(a @ ladder2.vacuum()) == 0.0

    def test_raising_factors(self, ladder1):
        v = ladder1.state((4,))
        out = ladder1.raising[0] @ v
        assert out[ladder1.states.index((5,))] == pytest.approx(np.sqrt(5.0))

    def test_oscillator_identity(self, ladder2):
        assert hermite.oscillator_identity_residual(ladder2) <= 1e-13


class TestNormalOrdering:
    def test_single_swap(self):
        # A A† = A†A + 1 in one mode
        word = ((0, False), (0, True))
        terms = dict(hermite.normal_order(word, 1))
        assert terms == {((1,), (1,)): 1, ((0,), (0,)): 1}

    def test_cross_mode_commute(self):
        word = ((0, False), (1, True))
        terms = dict(hermite.normal_order(word, 2))
        assert terms == {((0, 1), (1, 0)): 1}

    @pytest.mark.parametrize("word", [
        ((0, False), (0, True), (1, False), (1, False)),
        ((0, True), (0, False), (0, True)),
        ((1, False), (0, True), (1, True), (0, False)),
        ((0, False), (0, False), (0, True), (0, True)),
    ])
    def test_expansion_matches_brute_force(self, ladder2, word):
        full = hermite.word_dagger(word) + word
        expansion = hermite.normal_order(full, 2)
        brute = hermite.word_matrix(ladder2, full)
        ordered = hermite.expansion_matrix(ladder2, expansion)
        mask = ladder2.guard_mask(len(full))
        resid = np.max(np.abs((brute - ordered)[:, mask]))
        assert resid <= 1e-12 * max(np.max(np.abs(brute)), 1.0)

    def test_coefficients_nonnegative(self):
        word = ((0, False), (0, True), (1, False), (1, False))
        full = hermite.word_dagger(word) + word
        for (_, coeff) in hermite.normal_order(full, 2):
            assert coeff >= 0

    def test_worked_chain_constant_below_one(self):
        assert hermite.word_bound_constant(hermite.CANONICAL_WORD, 2) <= 1.0


class TestBoundChecks:
    def test_worked_chain_never_violated(self, ladder2):
        rng = np.random.default_rng(12)
        for _ in range(300):
            f = guarded_random(ladder2, rng, 4)
            res = hermite.canonical_chain_check(ladder2, f)
            assert res.lhs <= res.rhs * (1 + 1e-13)

    def test_lowering_word_on_vacuum(self, ladder2):
        word = ((0, False), (1, False))
        res = hermite.commutation_bound_check(ladder2, word, ladder2.vacuum())
        assert res.lhs == 0.0

    def test_single_raise_on_vacuum(self, ladder2):
        # lhs = 1, rhs = |(2N+3)^{1/2} vacuum| = sqrt(3), ratio 1/sqrt(3)
        res = hermite.commutation_bound_check(ladder2, ((0, True),),
                                              ladder2.vacuum(), constant=1.0)
        assert res.lhs == pytest.approx(1.0)
        assert res.rhs == pytest.approx(np.sqrt(3.0))
        assert res.ratio == pytest.approx(1.0 / np.sqrt(3.0))

    def test_general_words_respect_derived_constant(self, ladder2):
        rng = np.random.default_rng(13)
        words = [((0, True),),
                 ((0, False), (1, True)),
                 ((0, True), (1, False), (1, True)),
                 ((1, True), (1, False), (0, True), (0, False))]
        for word in words:
            for _ in range(50):
                f = guarded_random(ladder2, rng, len(word))
                res = hermite.commutation_bound_check(ladder2, word, f)
                assert res.lhs <= res.rhs * (1 + 1e-12)

    def test_guard_rejects_boundary_support(self, ladder2):
        v = ladder2.state((ladder2.n_cut - 1, 0))
        with pytest.raises(ValueError):
            hermite.commutation_bound_check(ladder2, hermite.CANONICAL_WORD, v)

    def test_dimension_guard(self, ladder1):
        with pytest.raises(ValueError):
            hermite.canonical_chain_check(ladder1, ladder1.vacuum())


def test_build_rejects_bad_dimensions():
    with pytest.raises(ValueError):
        hermite.build_ladders(3, 10)
    with pytest.raises(ValueError):
        hermite.build_ladders(1, 2)
