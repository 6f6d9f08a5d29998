"""Frozen table of commonly printed closed forms for the phi family, kept
verbatim next to the amplitude-level ground truth they are meant to equal.

The printed forms are never used as truth anywhere in the package. They are
evaluated on a parameter grid and the deviation is reported, so a reader can
see where (and by how much) the printed expressions disagree with the exact
evolution.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import dynamics as dyn
from .dynamics import ModelParams
from .invariants import invariant_I1
from .states import FourQubitState

DEVIATION_TOL = 1e-10


def _phase(params: ModelParams, t: float, k: int) -> complex:
    return np.exp(-1j * k * t * (params.nu_A + params.nu_B))


def _general_factor(delta: float, g: float, t: float) -> complex:
    # printed: sqrt(D^2/4 + g) where exact evolution has sqrt(D^2/4 + g^2)
    w = np.sqrt(delta**2 / 4 + g)
    return np.sin(t * w) * (np.sqrt(delta**2 + 4 * g) * np.cos(t * w)
                            - 1j * delta * np.sin(t * w))


def printed_I1_general(p: ModelParams, alpha: float, t: float) -> complex:
    dA, dB = p.detuning("A"), p.detuning("B")
    pref = 4 * p.g_A * p.g_B * (1j**2) / ((dA**2 + 4 * p.g_A) * (dB**2 + 4 * p.g_B))
    return (pref * _phase(p, t, 2) * np.cos(alpha) ** 2
            * _general_factor(dA, p.g_A, t) * _general_factor(dB, p.g_B, t))


def printed_I2_general(p: ModelParams, alpha: float, t: float) -> complex:
    dA, dB = p.detuning("A"), p.detuning("B")
    pref = (16 * p.g_A**2 * p.g_B**2 * (1j**4)
            / ((dA**2 + 4 * p.g_A) ** 2 * (dB**2 + 4 * p.g_B) ** 2))
    return (pref * _phase(p, t, 4) * np.cos(alpha) ** 4
            * _general_factor(dA, p.g_A, t) ** 2 * _general_factor(dB, p.g_B, t) ** 2)


def printed_I1_resonance(p: ModelParams, alpha: float, t: float) -> complex:
    return (-0.25 * np.sqrt(p.g_A * p.g_B) * _phase(p, t, 2) * np.cos(alpha) ** 2
            * np.sin(2 * t * np.sqrt(p.g_A)) * np.sin(2 * t * np.sqrt(p.g_B)))


def printed_I1_ratio2(p: ModelParams, alpha: float, t: float) -> complex:
    gb = p.g_B
    return (-np.sqrt(2) / 4 * gb * _phase(p, t, 2) * np.cos(alpha) ** 2
            * np.sin(2 * t * np.sqrt(2 * gb)) * np.sin(2 * t * np.sqrt(gb)))


def printed_I1_equal(p: ModelParams, alpha: float, t: float) -> complex:
    gb = p.g_B
    return (-0.25 * gb * _phase(p, t, 2) * np.cos(alpha) ** 2
            * np.sin(2 * t * np.sqrt(gb)) ** 2)


def printed_I2_resonance(p: ModelParams, alpha: float, t: float) -> complex:
    return (-1 / 16 * np.sqrt(p.g_A * p.g_B) * _phase(p, t, 4) * np.cos(alpha) ** 2
            * np.sin(2 * t * np.sqrt(p.g_A)) * np.sin(2 * t * np.sqrt(p.g_B)))


def printed_I3_resonance(p: ModelParams, alpha: float, t: float) -> complex:
    return (-1 / 64 * (p.g_A * p.g_B) ** 1.5 * _phase(p, t, 6) * np.cos(alpha) ** 6
            * np.sin(2 * t * np.sqrt(p.g_A)) ** 3 * np.sin(2 * t * np.sqrt(p.g_B)) ** 3)


def printed_phi_state(p: ModelParams, alpha: float, beta: float, t: float) -> FourQubitState:
    """Phi-family state with the printed phase of the |down,0> amplitude and
    the printed f/g assignment on |down up 10> and |up down 01>."""
    ca = dyn.coefficients(p, "A", t)
    cb = dyn.coefficients(p, "B", t)
    hA = np.exp(-0.5j * p.detuning("A") * t)
    hB = np.exp(-0.5j * p.detuning("B") * t)
    c = np.cos(alpha)
    s = np.exp(1j * beta) * np.sin(alpha)
    a = np.zeros(16, dtype=complex)
    a[0b0000] = hA * hB * s
    a[0b0011] = ca.g * cb.g * c
    a[0b0110] = ca.f * cb.g * c
    a[0b1001] = ca.g * cb.f * c
    a[0b1100] = ca.f * cb.f * c
    return FourQubitState(a)


def _state_infidelity(p: ModelParams, alpha: float, t: float, beta: float = 1.0) -> float:
    truth = dyn.phi_state(p, alpha, beta, t).amps
    printed = printed_phi_state(p, alpha, beta, t).amps
    return 1.0 - abs(np.vdot(truth, printed))


def _printed_I1_state(p: ModelParams, alpha: float, t: float) -> complex:
    return invariant_I1(printed_phi_state(p, alpha, 0.0, t))


def _is_resonant(p: ModelParams) -> bool:
    return p.detuning("A") == 0 and p.detuning("B") == 0


@dataclass(frozen=True)
class ErratumEntry:
    name: str
    description: str
    printed: Callable[[ModelParams, float, float], complex]
    truth: Callable[[ModelParams, float, float], complex]
    applies: Callable[[ModelParams], bool]


ERRATA: tuple[ErratumEntry, ...] = (
    ErratumEntry(
        "phi_state_amplitudes",
        "printed phi amplitudes (|down,0> phase exp(-i D t/2), f/g labels on "
        "Y0110 and Y1001); reported value is 1 - fidelity with the exact state",
        lambda p, a, t: _state_infidelity(p, a, t),
        lambda p, a, t: 0.0,
        lambda p: True,
    ),
    ErratumEntry(
        "I1_from_printed_state",
        "I1 of the printed phi amplitudes (insensitive to the label swap)",
        _printed_I1_state, dyn.closed_form_I1_phi, lambda p: True,
    ),
    ErratumEntry(
        "I1_general", "general detuned I1 (g in place of g^2 under the roots)",
        printed_I1_general, dyn.closed_form_I1_phi, lambda p: True,
    ),
    ErratumEntry(
        "I2_general", "general detuned I2 (g in place of g^2 under the roots)",
        printed_I2_general, dyn.closed_form_I2_phi, lambda p: True,
    ),
    ErratumEntry(
        "I1_resonance", "resonant I1 with sqrt(gA gB) prefactor and sqrt(g) arguments",
        printed_I1_resonance, dyn.closed_form_I1_phi, _is_resonant,
    ),
    ErratumEntry(
        "I1_resonance_gA_2gB", "resonant I1 for gA = 2 gB",
        printed_I1_ratio2, dyn.closed_form_I1_phi,
        lambda p: _is_resonant(p) and np.isclose(p.g_A, 2 * p.g_B, rtol=0, atol=1e-14),
    ),
    ErratumEntry(
        "I1_resonance_gA_eq_gB", "resonant I1 for gA = gB",
        printed_I1_equal, dyn.closed_form_I1_phi,
        lambda p: _is_resonant(p) and p.g_A == p.g_B,
    ),
    ErratumEntry(
        "I2_resonance", "resonant I2 (cos^2, single sine powers, sqrt(g) arguments)",
        printed_I2_resonance, dyn.closed_form_I2_phi, _is_resonant,
    ),
    ErratumEntry(
        "I3_resonance", "resonant I3 ((gA gB)^(3/2) prefactor, sqrt(g) arguments)",
        printed_I3_resonance, dyn.closed_form_I3_phi, _is_resonant,
    ),
)


def default_errata_params() -> list[ModelParams]:
    fd = ModelParams.from_detuning
    return [
        fd(1.0, 1.0), fd(2.0, 1.0), fd(0.5, 0.5), fd(1.3, 0.7),
        fd(1.0, 1.0, 0.5, 1.0), fd(2.0, 1.0, 0.5, 1.0),
    ]


@dataclass
class ErratumResult:
    name: str
    description: str
    points: int
    max_abs_dev: float
    max_abs_dev_unit_coupling: float

    @property
    def deviates(self) -> bool:
        return self.max_abs_dev > DEVIATION_TOL


def evaluate_errata(params_list=None, alphas=None, times=None) -> list[ErratumResult]:
    """Evaluate every erratum entry on the applicable part of a grid.

    ``max_abs_dev_unit_coupling`` restricts to points with gA = gB = 1; NaN
    when no such point applies.
    """
    params_list = default_errata_params() if params_list is None else params_list
    alphas = np.linspace(0, np.pi / 2, 5) if alphas is None else alphas
    times = np.linspace(0, 2 * np.pi, 25) if times is None else times
    results = []
    for entry in ERRATA:
        dev, dev_unit, n = 0.0, float("nan"), 0
        for p in params_list:
            if not entry.applies(p):
                continue
            unit = p.g_A == 1.0 and p.g_B == 1.0
            for a in alphas:
                for t in times:
                    d = abs(entry.printed(p, a, t) - entry.truth(p, a, t))
                    dev = max(dev, d)
                    if unit:
                        dev_unit = d if np.isnan(dev_unit) else max(dev_unit, d)
                    n += 1
        results.append(ErratumResult(entry.name, entry.description, n, dev, dev_unit))
    return results
