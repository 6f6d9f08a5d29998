"""Four-qubit pure states.

Amplitudes are stored in a flat length-16 complex array indexed by
``k = 8*x4 + 4*x3 + 2*x2 + x1`` where ``x4`` is atom A, ``x3`` atom B,
``x2`` the photon number of cavity a and ``x1`` the photon number of
cavity b. Atomic levels map as ``down -> 0`` and ``up -> 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

NORM_TOL = 1e-12
UNITARY_TOL = 1e-12
ZERO_CUTOFF = 1e-30


class ZeroVector(ValueError):
    """Raised when asked to normalize a (numerically) zero vector."""


class NonUnitaryFactor(ValueError):
    """Raised when a local factor fails the unitarity check."""


def pack_index(x4: int, x3: int, x2: int, x1: int) -> int:
    return 8 * x4 + 4 * x3 + 2 * x2 + x1


def unpack_index(k: int) -> tuple[int, int, int, int]:
    if not 0 <= k < 16:
        raise IndexError(f"four-qubit index out of range: {k}")
    return (k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1


@dataclass(frozen=True, eq=False)
class FourQubitState:
    """Immutable wrapper around 16 complex amplitudes."""

    amps: np.ndarray

    def __post_init__(self):
        a = np.array(self.amps, dtype=complex).reshape(-1)
        if a.shape != (16,):
            raise ValueError(f"expected 16 amplitudes, got {a.size}")
        if not np.all(np.isfinite(a)):
            raise ValueError("amplitudes must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def __getitem__(self, k):
        return self.amps[k]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amps, dtype=dtype)

    def __mul__(self, c) -> "FourQubitState":
        return FourQubitState(c * self.amps)

    __rmul__ = __mul__

    def __repr__(self):
        return f"FourQubitState({np.array2string(self.amps, precision=4)})"

    @property
    def is_normalized(self) -> bool:
        return abs(np.vdot(self.amps, self.amps).real - 1.0) < NORM_TOL

    def amplitude(self, x4: int, x3: int, x2: int, x1: int) -> complex:
        return complex(self.amps[pack_index(x4, x3, x2, x1)])


def as_amps(state) -> np.ndarray:
    """Return the flat amplitude array of a state or array-like."""
    if isinstance(state, FourQubitState):
        return state.amps
    a = np.asarray(state, dtype=complex).reshape(-1)
    if a.shape != (16,):
        raise ValueError(f"expected 16 amplitudes, got {a.size}")
    return a


def make_state(amps: Sequence[complex], normalize: bool = False) -> FourQubitState:
    a = np.array(amps, dtype=complex).reshape(-1)
    if normalize:
        if np.max(np.abs(a), initial=0.0) < ZERO_CUTOFF:
            raise ZeroVector("cannot normalize an all-zero amplitude vector")
        a = a / np.linalg.norm(a)
    return FourQubitState(a)


def basis_state(k: int) -> FourQubitState:
    a = np.zeros(16, dtype=complex)
    a[k] = 1.0
    return FourQubitState(a)


def ghz_state(alpha: float = np.pi / 4, beta: float = 0.0) -> FourQubitState:
    """cos(alpha)|0000> + exp(i beta) sin(alpha)|1111>."""
    a = np.zeros(16, dtype=complex)
    a[0] = np.cos(alpha)
    a[15] = np.exp(1j * beta) * np.sin(alpha)
    return FourQubitState(a)


def w_state() -> FourQubitState:
    a = np.zeros(16, dtype=complex)
    a[[1, 2, 4, 8]] = 0.5
    return FourQubitState(a)


def norm(state) -> float:
    return float(np.linalg.norm(as_amps(state)))


def _check_unitary(u: np.ndarray, slot: int):
    if u.shape != (2, 2):
        raise NonUnitaryFactor(f"factor {slot} has shape {u.shape}, expected (2, 2)")
    err = np.max(np.abs(u.conj().T @ u - np.eye(2)))
    if err > UNITARY_TOL:
        raise NonUnitaryFactor(f"factor {slot} deviates from unitarity by {err:.3e}")


def apply_local_unitaries(state, factors) -> FourQubitState:
    """Apply ``U4 (x) U3 (x) U2 (x) U1`` to a four-qubit state.

    Parameters
    ----------
    state : FourQubitState or array_like
        Input state.
    factors : sequence of four 2x2 arrays
        Ordered as ``(U4, U3, U2, U1)``, i.e. the same order as the tensor
        slots (atom A first).
    """
    factors = [np.asarray(u, dtype=complex) for u in factors]
    if len(factors) != 4:
        raise ValueError("need exactly four local factors")
    for slot, u in zip((4, 3, 2, 1), factors):
        _check_unitary(u, slot)
    psi = as_amps(state).reshape(2, 2, 2, 2)
    out = np.einsum("ai,bj,ck,dl,ijkl->abcd", *factors, psi)
    return FourQubitState(out.reshape(16))


def random_state(seed: int) -> FourQubitState:
    """Haar-random normalized state from 16 complex Gaussian draws."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    return FourQubitState(z / np.linalg.norm(z))


def random_su2(seed: int) -> np.ndarray:
    """Haar-distributed element of SU(2).

    A uniformly random point ``(a, b)`` on the unit 3-sphere in C^2 gives
    ``[[a, -conj(b)], [b, conj(a)]]``.
    """
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(4)
    x /= np.linalg.norm(x)
    a = x[0] + 1j * x[1]
    b = x[2] + 1j * x[3]
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])
