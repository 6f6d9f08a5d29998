"""Four-qubit SLOCC invariants, the four-determinant and the four-tangle.

The 16 amplitudes are split into four column vectors ``A, B, C, D`` in C^4
(rows of the 4x4 matrix ``Upsilon[(x4 x3), (x2 x1)]``). Raw amplitudes carry
upper indices; indices are lowered and raised with ``g = J (x) J`` where
``J = [[0, 1], [-1, 0]]``. Since ``g @ g == 1`` the inverse metric equals
``g``. The Levi-Civita symbol uses ``eps[0, 1, 2, 3] = +1`` for both index
positions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .states import as_amps

J = np.array([[0.0, 1.0], [-1.0, 0.0]])
METRIC = np.kron(J, J)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SIGMA_Y4 = np.kron(np.kron(SIGMA_Y, SIGMA_Y), np.kron(SIGMA_Y, SIGMA_Y))


def _levi_civita(n: int) -> np.ndarray:
    eps = np.zeros((n,) * n)
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j]
        )
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


EPS4 = _levi_civita(4)


@dataclass(frozen=True)
class BlockDecomposition:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def as_matrix(self) -> np.ndarray:
        return np.stack([self.A, self.B, self.C, self.D])

    def concatenate(self) -> np.ndarray:
        return np.concatenate([self.A, self.B, self.C, self.D])


@dataclass(frozen=True)
class CovectorQuad:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray


@dataclass(frozen=True)
class InvariantSet:
    I1: complex
    I2: complex
    I3: complex
    I4: complex
    S: complex
    T: complex
    D4: complex
    tau4: float

    def as_dict(self) -> dict:
        return {
            "I1": self.I1, "I2": self.I2, "I3": self.I3, "I4": self.I4,
            "S": self.S, "T": self.T, "D4": self.D4, "tau4": self.tau4,
        }


def blocks(state) -> BlockDecomposition:
    m = as_amps(state).reshape(4, 4)
    return BlockDecomposition(*(m[i].copy() for i in range(4)))


def lower(v) -> np.ndarray:
    """Lower (or raise, the metric is an involution) a C^4 index."""
    return METRIC @ np.asarray(v)


def dot_g(u, v) -> complex:
    """Bilinear pairing ``g_ab u^a v^b = u0 v3 - u1 v2 - u2 v1 + u3 v0``."""
    return complex(np.asarray(u) @ METRIC @ np.asarray(v))


def wedge(u, v) -> np.ndarray:
    u = np.asarray(u)
    v = np.asarray(v)
    return np.outer(u, v) - np.outer(v, u)


def wedge_dot(w1: np.ndarray, w2: np.ndarray) -> complex:
    """Full contraction of two antisymmetric tensors through the metric on
    both indices: ``(w1)_{ab} (w2)^{ab}`` with ``w1`` given upper-indexed."""
    return complex(np.einsum("ab,ac,bd,cd->", w1, METRIC, METRIC, w2))


def invariant_I1(state) -> complex:
    b = blocks(state)
    return 0.5 * (dot_g(b.A, b.D) - dot_g(b.B, b.C))


def invariant_I2_wedge(state) -> complex:
    b = blocks(state)
    ab, cd = wedge(b.A, b.B), wedge(b.C, b.D)
    ac, bd = wedge(b.A, b.C), wedge(b.B, b.D)
    ad, bc = wedge(b.A, b.D), wedge(b.B, b.C)
    return (
        wedge_dot(ab, cd)
        + wedge_dot(ac, bd)
        - 0.5 * wedge_dot(ad, ad)
        - 0.5 * wedge_dot(bc, bc)
    ) / 6.0


def plucker(state) -> np.ndarray:
    """``P[mu, nu, a, b] = Y[mu, a] Y[nu, b] - Y[mu, b] Y[nu, a]``."""
    y = as_amps(state).reshape(4, 4)
    p = np.einsum("ma,nb->mnab", y, y)
    return p - p.transpose(0, 1, 3, 2)


def invariant_I2_plucker(state) -> complex:
    """I2 from the independent Plucker coordinates (mu < nu, a < b).

    Every index is raised with the metric before pairing. Summing over
    ordered pairs instead would count each coordinate four times.
    """
    p = plucker(state)
    p_up = np.einsum("mnab,mi,nj,ak,bl->ijkl", p, METRIC, METRIC, METRIC, METRIC,
                     optimize=True)
    upper = np.triu(np.ones((4, 4), dtype=bool), k=1)
    mask = upper[:, :, None, None] & upper[None, None, :, :]
    return complex(np.sum((p * p_up)[mask])) / 6.0


def covectors(b: BlockDecomposition) -> CovectorQuad:
    A, B, C, D = b.A, b.B, b.C, b.D
    return CovectorQuad(
        a=-np.einsum("abcd,b,c,d->a", EPS4, B, C, D),
        b=np.einsum("abcd,a,c,d->b", EPS4, A, C, D),
        c=np.einsum("abcd,a,b,d->c", EPS4, A, B, D),
        d=-np.einsum("abcd,a,b,c->d", EPS4, A, B, C),
    )


def invariant_I3(state) -> complex:
    cv = covectors(blocks(state))
    # covectors are lower-indexed; pair with the inverse metric (== METRIC)
    return 0.5 * (dot_g(cv.a, cv.d) - dot_g(cv.b, cv.c))


def invariant_I4(state) -> complex:
    b = blocks(state)
    return complex(
        np.einsum("abcd,a,b,c,d->", EPS4, lower(b.A), lower(b.B), lower(b.C), lower(b.D))
    )


def four_determinant(I1: complex, I2: complex, I3: complex, I4: complex):
    """Return ``(S, T, D4)`` built from the four invariants."""
    S = (I4**2 - I2**2) + 4 * (I2**2 - I1 * I3)
    T = (I4**2 - I2**2) * (I1**2 - I2) + (I3 - I1 * I2) ** 2
    D4 = (S**3 - 27 * T**2) / 256
    return S, T, D4


def spin_flip(state) -> np.ndarray:
    """``(sigma_y)^{(x)4} |psi*>``."""
    return SIGMA_Y4 @ np.conj(as_amps(state))


def four_tangle(state) -> float:
    """``|<psi|psi~>|^2`` with ``psi~`` the spin-flipped conjugate state."""
    psi = as_amps(state)
    return float(abs(np.vdot(psi, spin_flip(psi))) ** 2)


def d4_tolerance(S: complex, scale: float = 1e-10) -> float:
    """Absolute tolerance for D4 comparisons.

    ``S**3`` and ``27 T**2`` can cancel almost completely, so a relative
    criterion on D4 itself is meaningless.
    """
    return scale * max(1.0, abs(S) ** 3)


def compute_invariants(state) -> InvariantSet:
    I1 = invariant_I1(state)
    I2 = invariant_I2_plucker(state)
    I3 = invariant_I3(state)
    I4 = invariant_I4(state)
    S, T, D4 = four_determinant(I1, I2, I3, I4)
    return InvariantSet(I1, I2, I3, I4, S, T, D4, four_tangle(state))
