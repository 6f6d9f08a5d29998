"""Truncated Fock-space evolution used as an independent check on the
closed-form double Jaynes-Cummings states.

Each atom-cavity pair lives on ``C^2 (x) C^nmax`` with basis ``|s, n>``
ordered atom-major (``index = s*nmax + n``, ``s = 0`` is the lower level).
Propagators are built from a Hermitian eigendecomposition, so they are
exact to rounding for any ``t``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dynamics import InitialStateSpec, ModelParams
from .states import FourQubitState, pack_index


class DimensionMismatch(ValueError):
    pass


class NotNormalized(ValueError):
    pass


@dataclass(frozen=True)
class FockTruncation:
    nmax: int = 2

    def __post_init__(self):
        if self.nmax < 2:
            raise ValueError("nmax must be at least 2 to hold photon numbers 0 and 1")

    @property
    def local_dim(self) -> int:
        return 2 * self.nmax


def annihilation(nmax: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, nmax)), k=1).astype(complex)


def _atom_ops():
    # basis (down, up)
    sz = np.diag([-1.0, 1.0]).astype(complex)
    sp = np.array([[0, 0], [1, 0]], dtype=complex)  # |up><down|
    return sz, sp, sp.conj().T


def excitation_number(trunc: FockTruncation) -> np.ndarray:
    """``a^dag a + (sigma_z + 1)/2`` on one atom-cavity pair."""
    sz, _, _ = _atom_ops()
    a = annihilation(trunc.nmax)
    return (np.kron(np.eye(2), a.conj().T @ a)
            + np.kron(0.5 * (sz + np.eye(2)), np.eye(trunc.nmax)))


def build_hamiltonian(params: ModelParams, subsystem: str, trunc: FockTruncation) -> np.ndarray:
    """Jaynes-Cummings Hamiltonian of one atom-cavity pair.

    ``nu (a^dag a + 1/2) + (omega/2) sigma_z + g (a^dag sigma_- + a sigma_+)``
    """
    nu, omega, g = params.subsystem(subsystem)
    sz, sp, sm = _atom_ops()
    a = annihilation(trunc.nmax)
    n_op = a.conj().T @ a
    eye_f = np.eye(trunc.nmax)
    h = (nu * np.kron(np.eye(2), n_op + 0.5 * eye_f)
         + 0.5 * omega * np.kron(sz, eye_f)
         + g * (np.kron(sm, a.conj().T) + np.kron(sp, a)))
    return 0.5 * (h + h.conj().T)


def block_rabi(params: ModelParams, subsystem: str, n: int) -> float:
    """Dressed-doublet frequency of the n-excitation block."""
    if n < 1:
        raise ValueError("excitation number must be >= 1")
    nu, omega, g = params.subsystem(subsystem)
    delta = omega - nu
    return float(np.sqrt(g**2 * n + delta**2 / 4))


class Propagator:
    """``exp(-i H t)`` for a fixed Hermitian ``H`` via its eigenbasis."""

    def __init__(self, h: np.ndarray):
        h = np.asarray(h, dtype=complex)
        self.dim = h.shape[0]
        self.energies, self.vectors = np.linalg.eigh(h)

    def matrix(self, t: float) -> np.ndarray:
        phases = np.exp(-1j * self.energies * t)
        return (self.vectors * phases) @ self.vectors.conj().T

    def apply(self, t: float, state) -> np.ndarray:
        state = np.asarray(state, dtype=complex)
        if state.shape[0] != self.dim:
            raise DimensionMismatch(
                f"state has dimension {state.shape[0]}, Hamiltonian {self.dim}")
        coeffs = self.vectors.conj().T @ state
        return self.vectors @ (np.exp(-1j * self.energies * t) * coeffs)


def evolve(h: np.ndarray, t: float, state) -> np.ndarray:
    return Propagator(h).apply(t, state)


@lru_cache(maxsize=256)
def _propagators(params: ModelParams, trunc: FockTruncation):
    return (Propagator(build_hamiltonian(params, "A", trunc)),
            Propagator(build_hamiltonian(params, "B", trunc)))


def local_index(s: int, n: int, trunc: FockTruncation) -> int:
    return s * trunc.nmax + n


def embed_initial(initial: InitialStateSpec, trunc: FockTruncation) -> np.ndarray:
    """Atomic two-qubit state (x) cavity vacuum, in (A,a) (x) (B,b) order."""
    d = trunc.local_dim
    psi = np.zeros(d * d, dtype=complex)
    for (sa, sb), amp in initial.atomic_amplitudes().items():
        psi[local_index(sa, 0, trunc) * d + local_index(sb, 0, trunc)] += amp
    return psi


def evolve_joint(params: ModelParams, trunc: FockTruncation,
                 initial: InitialStateSpec, t: float) -> np.ndarray:
    ua, ub = _propagators(params, trunc)
    d = trunc.local_dim
    psi = embed_initial(initial, trunc).reshape(d, d)
    # (U_A (x) U_B) psi == U_A psi U_B^T in matrix form
    return (ua.matrix(t) @ psi @ ub.matrix(t).T).reshape(d * d)


def extract_four_qubit(joint, trunc: FockTruncation):
    """Project onto photon numbers {0, 1} per cavity.

    Returns the renormalized four-qubit state and the population that was
    discarded (leakage).
    """
    d = trunc.local_dim
    joint = np.asarray(joint, dtype=complex)
    if joint.shape != (d * d,):
        raise DimensionMismatch(f"joint state must have dimension {d * d}")
    amps = np.zeros(16, dtype=complex)
    inside = np.zeros(d * d, dtype=bool)
    for sa in (0, 1):
        for na in (0, 1):
            for sb in (0, 1):
                for nb in (0, 1):
                    j = local_index(sa, na, trunc) * d + local_index(sb, nb, trunc)
                    amps[pack_index(sa, sb, na, nb)] = joint[j]
                    inside[j] = True
    total = float(np.vdot(joint, joint).real)
    kept = float(np.vdot(amps, amps).real)
    leakage = float(np.sum(np.abs(joint[~inside]) ** 2))
    if kept > 0:
        amps = amps * np.sqrt(total / kept)
    return FourQubitState(amps), leakage


def oracle_state(params: ModelParams, initial: InitialStateSpec, t: float,
                 trunc: FockTruncation = FockTruncation()):
    return extract_four_qubit(evolve_joint(params, trunc, initial, t), trunc)


def total_energy(params: ModelParams, trunc: FockTruncation, joint) -> float:
    d = trunc.local_dim
    h = (np.kron(build_hamiltonian(params, "A", trunc), np.eye(d))
         + np.kron(np.eye(d), build_hamiltonian(params, "B", trunc)))
    joint = np.asarray(joint)
    return float(np.vdot(joint, h @ joint).real)


def fidelity_up_to_phase(s1, s2, tol: float = 1e-8) -> float:
    """``|<s1|s2>|``; equals 1 iff the states differ only by a global phase."""
    a = np.asarray(s1, dtype=complex).reshape(-1)
    b = np.asarray(s2, dtype=complex).reshape(-1)
    for name, v in (("s1", a), ("s2", b)):
        n = np.linalg.norm(v)
        if abs(n - 1.0) > tol:
            raise NotNormalized(f"{name} has norm {n:.12g}")
    return float(min(abs(np.vdot(a, b)), 1.0))


def align_phase(reference, state) -> np.ndarray:
    """Rotate ``state`` by the global phase that best matches ``reference``."""
    a = np.asarray(reference, dtype=complex).reshape(-1)
    b = np.asarray(state, dtype=complex).reshape(-1)
    ov = np.vdot(b, a)
    if abs(ov) == 0:
        return b
    return b * (ov / abs(ov))
