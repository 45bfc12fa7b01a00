"""SU(2) and su(2): Killing form, adjoint actions and exact exponential differentials.

Basis convention: X_k = -(i/2) sigma_k, anti-Hermitian and traceless, with
[X_a, X_b] = eps_abc X_c, so the bracket in coefficients is the cross product.
The Killing form on this basis is B = -2 * identity.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

PAULI = np.array([
    [[0.0, 1.0], [1.0, 0.0]],
    [[0.0, -1.0j], [1.0j, 0.0]],
    [[1.0, 0.0], [0.0, -1.0]],
], dtype=complex)

BASIS = -0.5j * PAULI  # X_1, X_2, X_3

IDENTITY2 = np.eye(2, dtype=complex)


def to_matrix(coeff: np.ndarray) -> np.ndarray:
    """Coefficients (..., 3) -> 2x2 realization sum_k c_k X_k."""
    return np.einsum("...k,kij->...ij", np.asarray(coeff), BASIS)


def from_matrix(m: np.ndarray) -> np.ndarray:
    """Inverse of to_matrix; m_k = i tr(sigma_k m) for m in the basis span."""
    return 1.0j * np.einsum("kij,...ji->...k", PAULI, np.asarray(m))


def basis_projection_residual(m: np.ndarray) -> float:
    """How far m is from anti-Hermitian traceless (a broken derivative signal)."""
    m = np.asarray(m)
    anti = m + np.conj(np.swapaxes(m, -1, -2))
    tr = np.trace(m, axis1=-2, axis2=-1)
    return float(max(np.max(np.abs(anti)), np.max(np.abs(tr))))


# ---------------------------------------------------------------------------
# Brackets, Killing form, adjoint actions
# ---------------------------------------------------------------------------

def bracket(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """[X, Y] in coefficients: the cross product for this basis."""
    return np.cross(np.asarray(x), np.asarray(y))


def ad_matrix(x: np.ndarray) -> np.ndarray:
    """3x3 matrix of ad(X) acting on coefficients."""
    x = np.asarray(x)
    z = np.zeros(x.shape[:-1])
    return np.stack([
        np.stack([z, -x[..., 2], x[..., 1]], axis=-1),
        np.stack([x[..., 2], z, -x[..., 0]], axis=-1),
        np.stack([-x[..., 1], x[..., 0], z], axis=-1),
    ], axis=-2)


def killing_form(x: np.ndarray, y: np.ndarray) -> float:
    """B(X, Y) = trace(ad X ad Y) on the 3-dimensional adjoint realization."""
    prod = ad_matrix(x) @ ad_matrix(y)
    return float(np.trace(prod, axis1=-2, axis2=-1).real)


def killing_matrix() -> np.ndarray:
    """The Killing form as a 3x3 array on the basis; -B is positive definite."""
    return np.array([[killing_form(np.eye(3)[a], np.eye(3)[b])
                      for b in range(3)] for a in range(3)])


def algebra_inner(x: np.ndarray, y: np.ndarray) -> float:
    """<X, Y> := -B(X, Y), the invariant inner product (positive definite)."""
    return -killing_form(x, y)


def adjoint(g: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Ad(g) X in coefficients, computed as g x g^{-1} in the 2x2 realization."""
    m = to_matrix(x)
    gi = np.conj(np.swapaxes(np.asarray(g), -1, -2))
    return from_matrix(np.asarray(g) @ m @ gi)


def rotation_of(g: np.ndarray) -> np.ndarray:
    """Ad(g) as a real 3x3 matrix on coefficients: R_ab = tr(sigma_a g sigma_b g†)/2."""
    g = np.asarray(g)
    gd = np.conj(np.swapaxes(g, -1, -2))
    r = 0.5 * np.einsum("aij,...jk,bkl,...li->...ab", PAULI, g, PAULI, gd)
    return r.real


# ---------------------------------------------------------------------------
# Exponentials
# ---------------------------------------------------------------------------

def exp_map(coeff: np.ndarray) -> np.ndarray:
    """Closed-form su(2) exponential (Rodrigues type), batched over leading axes.

    exp(sum c_k X_k) = cos(t/2) I + sinc(t/2) * (sum c_k X_k), t = |c|.
    """
    c = np.asarray(coeff, dtype=float)
    theta = np.linalg.norm(c, axis=-1)
    half = theta / 2.0
    # np.sinc(z) = sin(pi z)/(pi z), so sin(half)/half = sinc(half/pi)
    s = np.sinc(half / np.pi)
    m = to_matrix(c)
    return (np.cos(half)[..., None, None] * IDENTITY2
            + s[..., None, None] * m)


def dexp(a: np.ndarray, aprime: np.ndarray) -> np.ndarray:
    """Frechet derivative of the 2x2 exponential at a along aprime.

    Uses the block upper-triangular identity: expm([[a, a'], [0, a]]) carries
    the derivative in its upper-right 2x2 block.  Exact up to expm accuracy.
    """
    block = np.zeros((4, 4), dtype=complex)
    block[:2, :2] = a
    block[2:, 2:] = a
    block[:2, 2:] = aprime
    return scipy.linalg.expm(block)[:2, 2:]


def dexp_batch(a: np.ndarray, aprime: np.ndarray) -> np.ndarray:
    """dexp over a batch: a (..., 2, 2), aprime (..., 2, 2)."""
    a = np.asarray(a)
    ap = np.asarray(aprime)
    flat_a = a.reshape(-1, 2, 2)
    flat_p = ap.reshape(-1, 2, 2)
    out = np.empty_like(flat_a)
    for i in range(flat_a.shape[0]):
        out[i] = dexp(flat_a[i], flat_p[i])
    return out.reshape(a.shape)


def group_defect(g: np.ndarray) -> float:
    """Max deviation from u†u = I and det u = 1 over a batch."""
    g = np.asarray(g)
    gd = np.conj(np.swapaxes(g, -1, -2))
    uni = np.max(np.abs(gd @ g - IDENTITY2))
    det = np.max(np.abs(np.linalg.det(g) - 1.0))
    return float(max(uni, det))
