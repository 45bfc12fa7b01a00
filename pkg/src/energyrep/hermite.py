"""Euclidean ladder operators on a truncated tensor-Hermite basis.

A_j = (x_j + d/dx_j)/sqrt(2) lowers the Hermite degree in mode j with factor
sqrt(n_j); its adjoint raises with sqrt(n_j + 1).  On the basis truncated at
total degree n_cut the canonical commutation relations are exact away from
the truncation boundary, hence the degree guard on every word operation.

Words of ladder operators are bounded through the normal-ordering procedure:
normal-order word†word (all coefficients nonnegative), dominate each balanced
monomial prod_j (A_j†)^k A_j^k = prod_j N_j(N_j-1)...(N_j-k+1) by
((2N+d+1)/2)^K, and read off a constant for
|word f|_0 <= C |(2N+d+1)^{m/2} f|_0.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True, eq=False)
class HermiteLadder:
    dimension: int
    n_cut: int
    states: tuple               # degree tuples, sorted by (total, tuple)
    lowering: tuple              # A_j matrices
    raising: tuple               # A_j† matrices
    number_ops: tuple            # N_j = A_j† A_j
    number_total: np.ndarray     # N = sum_j N_j

    @property
    def size(self) -> int:
        return len(self.states)

    def degrees(self) -> np.ndarray:
        return np.array([sum(s) for s in self.states])

    def guard_mask(self, margin: int) -> np.ndarray:
        """States safely below the truncation boundary for words of length margin."""
        return self.degrees() <= self.n_cut - margin

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.size)
        v[self.states.index((0,) * self.dimension)] = 1.0
        return v

    def state(self, degrees) -> np.ndarray:
        v = np.zeros(self.size)
        v[self.states.index(tuple(degrees))] = 1.0
        return v

    def bound_operator(self, power: float) -> np.ndarray:
        """(2N + d + 1)^power, diagonal on the retained basis."""
        diag = (2.0 * self.degrees() + self.dimension + 1.0) ** power
        return np.diag(diag)


def build_ladders(d: int, n_cut: int) -> HermiteLadder:
    if d not in (1, 2):
        raise ValueError("ladder calculus shipped for d in {1, 2}")
    if n_cut < 4:
        raise ValueError("need n_cut >= 4")
    if d == 1:
        states = [(n,) for n in range(n_cut + 1)]
    else:
        states = [(i, j) for total in range(n_cut + 1)
                  for i in range(total + 1) for j in [total - i]]
        states.sort(key=lambda s: (sum(s), s))
    states = tuple(states)
    index = {s: i for i, s in enumerate(states)}
    dim = len(states)

    lowering = []
    for j in range(d):
        a = np.zeros((dim, dim))
        for s, i in index.items():
            if s[j] > 0:
                t = list(s)
                t[j] -= 1
                a[index[tuple(t)], i] = np.sqrt(s[j])
        lowering.append(a)
    raising = tuple(a.T.copy() for a in lowering)
    number_ops = tuple(raising[j] @ lowering[j] for j in range(d))
    total = sum(number_ops)
    return HermiteLadder(d, n_cut, states, tuple(lowering), raising,
                         number_ops, total)


# ---------------------------------------------------------------------------
# Words and normal ordering
# ---------------------------------------------------------------------------
# A word is a tuple of (mode, is_raising) read left to right as an operator
# product, e.g. A_1 A_1† A_2 A_2 = ((0,False),(0,True),(1,False),(1,False)).

def word_dagger(word) -> tuple:
    return tuple((j, not r) for (j, r) in reversed(word))


def word_matrix(ladder: HermiteLadder, word) -> np.ndarray:
    out = np.eye(ladder.size)
    for (j, raising) in reversed(word):
        m = ladder.raising[j] if raising else ladder.lowering[j]
        out = m @ out
    return out


def word_apply(ladder: HermiteLadder, word, vec: np.ndarray) -> np.ndarray:
    out = np.asarray(vec, float)
    for (j, raising) in reversed(word):
        m = ladder.raising[j] if raising else ladder.lowering[j]
        out = m @ out
    return out


@lru_cache(maxsize=None)
def normal_order(word: tuple, d: int) -> tuple:
    """Normal-order a ladder word using [A_j, A_k†] = delta_jk.

    Returns a sorted tuple of ((raise_counts, lower_counts), coeff) with
    counts per mode; every generated coefficient is nonnegative.
    """
    for i in range(len(word) - 1):
        (j, rj), (k, rk) = word[i], word[i + 1]
        if (not rj) and rk:
            swapped = word[:i] + ((k, rk), (j, rj)) + word[i + 2:]
            terms = dict(normal_order(swapped, d))
            if j == k:
                for key, c in normal_order(word[:i] + word[i + 2:], d):
                    terms[key] = terms.get(key, 0) + c
            return tuple(sorted(terms.items()))
    raises = [0] * d
    lowers = [0] * d
    for (j, r) in word:
        if r:
            raises[j] += 1
        else:
            lowers[j] += 1
    return (((tuple(raises), tuple(lowers)), 1),)


def word_bound_constant(word, d: int) -> float:
    """C(m) with |word f|_0 <= C(m) |(2N+d+1)^{m/2} f|_0, m = len(word).

    From the normal-ordered form of word†word: every balanced monomial is a
    product of falling factorials in the N_j, bounded on the spectrum by
    ((2N+d+1)/2)^K with K raises, and (2N+d+1) >= 1 pads K up to m.
    """
    expansion = normal_order(word_dagger(tuple(word)) + tuple(word), d)
    c_sq = 0.0
    for (raises, lowers), coeff in expansion:
        if raises != lowers:
            raise AssertionError("word†word must normal-order to balanced terms")
        k = sum(raises)
        c_sq += coeff * 0.5 ** k
    return float(np.sqrt(c_sq))


def expansion_matrix(ladder: HermiteLadder, expansion) -> np.ndarray:
    """Realize a normal-ordered expansion as a matrix on the retained basis."""
    out = np.zeros((ladder.size, ladder.size))
    for (raises, lowers), coeff in expansion:
        term = np.eye(ladder.size)
        for j in range(ladder.dimension):
            for _ in range(lowers[j]):
                term = ladder.lowering[j] @ term
        for j in range(ladder.dimension):
            for _ in range(raises[j]):
                term = ladder.raising[j] @ term
        out += coeff * term
    return out


# ---------------------------------------------------------------------------
# Bound checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WordBoundResult:
    word: tuple
    lhs: float
    rhs: float
    ratio: float
    constant: float


def commutation_bound_check(ladder: HermiteLadder, word, f: np.ndarray,
                            constant: float | None = None) -> WordBoundResult:
    """Evaluate |word f|_0 against C |(2N+d+1)^{m/2} f|_0.

    Rejects vectors touching the truncation boundary, where the commutator
    algebra would be corrupted.
    """
    word = tuple(word)
    m = len(word)
    f = np.asarray(f, float)
    support = np.abs(f) > 0
    if np.any(~ladder.guard_mask(m) & support):
        raise ValueError(
            f"input touches the truncation guard (need degree <= "
            f"{ladder.n_cut - m} for a word of length {m})")
    if constant is None:
        constant = word_bound_constant(word, ladder.dimension)
    lhs = float(np.linalg.norm(word_apply(ladder, word, f)))
    half_power = ladder.bound_operator(m / 2.0)
    rhs = constant * float(np.linalg.norm(half_power @ f))
    ratio = lhs / rhs if rhs > 0 else 0.0
    return WordBoundResult(word, lhs, rhs, ratio, float(constant))


CANONICAL_WORD = ((0, False), (0, True), (1, False), (1, False))
# A_1 A_1† A_2 A_2, the worked chain whose normal ordering yields C = 1.


def canonical_chain_check(ladder: HermiteLadder, f: np.ndarray) -> WordBoundResult:
    """The worked four-letter chain with C = 1 on the d = 2 ladder."""
    if ladder.dimension != 2:
        raise ValueError("the worked chain lives in d = 2")
    return commutation_bound_check(ladder, CANONICAL_WORD, f, constant=1.0)


def oscillator_identity_residual(ladder: HermiteLadder) -> float:
    """Residual of -Laplacian + |x|^2 + 1 = 2N + d + 1 below the guard.

    Both sides built from ladder combinations: x_j = (A_j + A_j†)/sqrt(2),
    d/dx_j = (A_j - A_j†)/sqrt(2); compared on guarded input states.
    """
    d = ladder.dimension
    lhs = np.zeros((ladder.size, ladder.size))
    for j in range(d):
        x = (ladder.lowering[j] + ladder.raising[j]) / np.sqrt(2.0)
        dx = (ladder.lowering[j] - ladder.raising[j]) / np.sqrt(2.0)
        lhs += -(dx @ dx) + x @ x
    lhs += np.eye(ladder.size)
    rhs = 2.0 * ladder.number_total + (d + 1.0) * np.eye(ladder.size)
    mask = ladder.guard_mask(2)
    return float(np.max(np.abs((lhs - rhs)[:, mask])))


def ccr_residual(ladder: HermiteLadder) -> float:
    """Max residual of [A_j, A_k†] = delta_jk on guarded input states."""
    mask = ladder.guard_mask(2)
    worst = 0.0
    for j in range(ladder.dimension):
        for k in range(ladder.dimension):
            comm = (ladder.lowering[j] @ ladder.raising[k]
                    - ladder.raising[k] @ ladder.lowering[j])
            if j == k:
                comm = comm - np.eye(ladder.size)
            worst = max(worst, float(np.max(np.abs(comm[:, mask]))))
    return worst
