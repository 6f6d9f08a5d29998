"""Closed-form evolution of the double Jaynes-Cummings model.

Two independent atom-cavity pairs (A, a) and (B, b) start with the cavities
in vacuum and the atoms in one of two entangled families:

* ``phi``: cos(alpha)|up up> + exp(i beta) sin(alpha)|down down>
* ``psi``: cos(alpha)|up down> + exp(i beta) sin(alpha)|down up>

Each pair only ever explores ``{|down,0>}`` and the one-excitation doublet
``{|up,0>, |down,1>}``, so the evolved state is exactly a four-qubit state.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .invariants import InvariantSet, four_determinant
from .states import FourQubitState, pack_index

PHI_SUPPORT = (0, 3, 6, 9, 12)
PSI_SUPPORT = (1, 2, 4, 8)
ANGLE_SLACK = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Field frequencies ``nu``, atomic frequencies ``omega`` and couplings
    ``g`` for both subsystems (angular units)."""

    nu_A: float = 1.0
    nu_B: float = 1.0
    omega_A: float = 1.0
    omega_B: float = 1.0
    g_A: float = 1.0
    g_B: float = 1.0

    def __post_init__(self):
        if not (self.g_A > 0 and self.g_B > 0):
            raise ValueError("coupling constants must be positive")

    @classmethod
    def from_detuning(cls, g_A=1.0, g_B=1.0, delta_A=0.0, delta_B=0.0,
                      nu_A=1.0, nu_B=1.0) -> "ModelParams":
        return cls(nu_A=nu_A, nu_B=nu_B, omega_A=nu_A + delta_A,
                   omega_B=nu_B + delta_B, g_A=g_A, g_B=g_B)

    def subsystem(self, name: str) -> tuple[float, float, float]:
        if name == "A":
            return self.nu_A, self.omega_A, self.g_A
        if name == "B":
            return self.nu_B, self.omega_B, self.g_B
        raise ValueError(f"unknown subsystem {name!r}")

    def detuning(self, name: str) -> float:
        nu, omega, _ = self.subsystem(name)
        return omega - nu

    def rabi(self, name: str) -> float:
        _, _, g = self.subsystem(name)
        return float(np.sqrt(g**2 + self.detuning(name) ** 2 / 4))


@dataclass(frozen=True)
class InitialStateSpec:
    family: str = "phi"
    alpha: float = np.pi / 4
    beta: float = 0.0

    def __post_init__(self):
        if self.family not in ("phi", "psi"):
            raise ValueError(f"family must be 'phi' or 'psi', got {self.family!r}")
        check_angles(self.alpha, self.beta)

    def atomic_amplitudes(self) -> dict[tuple[int, int], complex]:
        """Map ``(s_A, s_B) -> amplitude`` with ``s = 1`` the upper level."""
        c = np.cos(self.alpha)
        s = np.exp(1j * self.beta) * np.sin(self.alpha)
        if self.family == "phi":
            return {(1, 1): c, (0, 0): s}
        return {(1, 0): c, (0, 1): s}


def check_angles(alpha: float, beta: float):
    if not -ANGLE_SLACK <= alpha <= np.pi / 2 + ANGLE_SLACK:
        raise ValueError(f"alpha={alpha} outside [0, pi/2]")
    if not -ANGLE_SLACK <= beta <= np.pi + ANGLE_SLACK:
        raise ValueError(f"beta={beta} outside [0, pi]")


@dataclass(frozen=True)
class JCCoefficients:
    """Single-pair amplitudes at time t.

    ``f``: |up,0> -> |up,0>, ``g``: |up,0> -> |down,1>, ``h``: |down,0> -> |down,0>.
    """

    f: complex
    g: complex
    h: complex


def sin_over(omega: float, t: float) -> float:
    """``sin(omega t) / omega``, finite as ``omega -> 0``."""
    return t * np.sinc(omega * t / np.pi)


def coefficients(params: ModelParams, subsystem: str, t: float) -> JCCoefficients:
    nu, omega, g = params.subsystem(subsystem)
    delta = omega - nu
    rabi = params.rabi(subsystem)
    carrier = np.exp(-1j * nu * t)
    so = sin_over(rabi, t)
    f = carrier * (np.cos(rabi * t) - 0.5j * delta * so)
    gc = -1j * g * so * carrier
    # |down,0> has energy (nu - omega)/2 = -delta/2 under exp(-iHt)
    h = np.exp(0.5j * delta * t)
    return JCCoefficients(complex(f), complex(gc), complex(h))


def phi_amplitudes(params: ModelParams, alpha: float, beta: float, t: float) -> dict[int, complex]:
    ca = coefficients(params, "A", t)
    cb = coefficients(params, "B", t)
    c = np.cos(alpha)
    s = np.exp(1j * beta) * np.sin(alpha)
    return {
        pack_index(0, 0, 0, 0): ca.h * cb.h * s,
        pack_index(0, 0, 1, 1): ca.g * cb.g * c,
        # atom A emitted into cavity a, atom B still excited
        pack_index(0, 1, 1, 0): ca.g * cb.f * c,
        pack_index(1, 0, 0, 1): ca.f * cb.g * c,
        pack_index(1, 1, 0, 0): ca.f * cb.f * c,
    }


def psi_amplitudes(params: ModelParams, alpha: float, beta: float, t: float) -> dict[int, complex]:
    ca = coefficients(params, "A", t)
    cb = coefficients(params, "B", t)
    c = np.cos(alpha)
    s = np.exp(1j * beta) * np.sin(alpha)
    return {
        pack_index(0, 0, 0, 1): ca.h * cb.g * s,
        pack_index(0, 0, 1, 0): ca.g * cb.h * c,
        pack_index(0, 1, 0, 0): ca.h * cb.f * s,
        pack_index(1, 0, 0, 0): ca.f * cb.h * c,
    }


def _to_state(amps: dict[int, complex]) -> FourQubitState:
    a = np.zeros(16, dtype=complex)
    for k, v in amps.items():
        a[k] = v
    return FourQubitState(a)


def phi_state(params: ModelParams, alpha: float, beta: float, t: float) -> FourQubitState:
    check_angles(alpha, beta)
    return _to_state(phi_amplitudes(params, alpha, beta, t))


def psi_state(params: ModelParams, alpha: float, beta: float, t: float) -> FourQubitState:
    check_angles(alpha, beta)
    return _to_state(psi_amplitudes(params, alpha, beta, t))


def family_state(family: str, params: ModelParams, alpha: float, beta: float,
                 t: float) -> FourQubitState:
    if family == "phi":
        return phi_state(params, alpha, beta, t)
    if family == "psi":
        return psi_state(params, alpha, beta, t)
    raise ValueError(f"unknown family {family!r}")


def _phi_products(params: ModelParams, alpha: float, t: float) -> tuple[complex, complex]:
    """``(a, b) = (Y1001 Y0110, Y1100 Y0011)`` for the phi family.

    Neither product involves the beta-dependent amplitude, so beta is fixed
    to zero here.
    """
    y = phi_amplitudes(params, alpha, 0.0, t)
    a = y[0b1001] * y[0b0110]
    b = y[0b1100] * y[0b0011]
    return a, b


def closed_form_I1_phi(params: ModelParams, alpha: float, t: float) -> complex:
    a, b = _phi_products(params, alpha, t)
    return 0.5 * (a + b)


def closed_form_I2_phi(params: ModelParams, alpha: float, t: float) -> complex:
    a, b = _phi_products(params, alpha, t)
    return (a * a + 4 * a * b + b * b) / 6


def closed_form_I3_phi(params: ModelParams, alpha: float, t: float) -> complex:
    a, b = _phi_products(params, alpha, t)
    return 0.5 * a * b * (a + b)


def closed_form_I4_phi(params: ModelParams, alpha: float, t: float) -> complex:
    a, b = _phi_products(params, alpha, t)
    return a * b


def resonance_I1_phi(params: ModelParams, alpha: float, t: float) -> complex:
    """Exact-resonance reduction of I1; valid only when both detunings vanish."""
    return (-0.25 * np.exp(-2j * t * (params.nu_A + params.nu_B)) * np.cos(alpha) ** 2
            * np.sin(2 * params.g_A * t) * np.sin(2 * params.g_B * t))


def ghz_family_reference(alpha: float, beta: float) -> InvariantSet:
    """Invariants of cos(alpha)|0000> + exp(i beta) sin(alpha)|1111>.

    I1 and I2 carry the phase ``exp(i beta)`` and its square.
    """
    check_angles(alpha, beta)
    phase = np.exp(1j * beta)
    I1 = 0.5 * np.cos(alpha) * np.sin(alpha) * phase
    I2 = np.sin(2 * alpha) ** 2 / 24 * phase**2
    I3 = 0j
    I4 = 0j
    S, T, D4 = four_determinant(I1, I2, I3, I4)
    return InvariantSet(complex(I1), complex(I2), I3, I4, S, T, D4,
                        float(np.sin(2 * alpha) ** 2))
