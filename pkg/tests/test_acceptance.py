"""Exit criteria. Each test records one PASS/FAIL line shown in the pytest
terminal summary under "acceptance criteria"."""
import numpy as np
import pytest

from doublejc.cli import SweepConfig, verify_report
from doublejc.dynamics import InitialStateSpec, ModelParams, phi_state, psi_state
from doublejc.errata import evaluate_errata
from doublejc.invariants import (
    compute_invariants, d4_tolerance, four_tangle, invariant_I1,
    invariant_I2_plucker, invariant_I2_wedge, invariant_I3, invariant_I4,
)
from doublejc.oracle import FockTruncation, fidelity_up_to_phase, oracle_state
from doublejc.states import FourQubitState, apply_local_unitaries, ghz_state, random_state, random_su2

from conftest import ACCEPTANCE_LINES, acceptance_grid

GRID = acceptance_grid()


def record(n, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {n:>2}. {title}: {detail}")
    assert ok, f"criterion {n} ({title}) failed: {detail}"


def rel_err(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def test_grid_size():
    assert len(GRID) >= 200
    regimes = {name for name, *_ in GRID}
    assert {"resonant_equal", "resonant_ratio2", "detuned_equal", "detuned_ratio2"} <= regimes


def test_01_ghz_reference_values():
    inv = compute_invariants(ghz_state())
    errs = [abs(inv.tau4 - 1), abs(inv.I1 - 0.25), abs(inv.I2 - 1 / 24),
            abs(inv.I3), abs(inv.I4), abs(inv.D4)]
    record(1, "GHZ4 reference values", max(errs) <= 1e-12, f"max abs err {max(errs):.2e}")


def test_02_ghz_family_curve():
    worst = 0.0
    for a in (0, np.pi / 12, np.pi / 8, np.pi / 4, 3 * np.pi / 8, np.pi / 2):
        for b in (0, np.pi / 3, np.pi):
            s = ghz_state(a, b)
            want = np.sin(2 * a) ** 2
            worst = max(worst, abs(four_tangle(s) - want),
                        abs(abs(invariant_I2_plucker(s)) - want / 24))
    record(2, "GHZ-family tau4 and |I2| curves", worst <= 1e-12, f"max abs err {worst:.2e}")


def test_03_tangle_sixteen_I1_squared():
    worst = 0.0
    for seed in range(1000):
        s = random_state(seed)
        worst = max(worst, rel_err(four_tangle(s), 16 * abs(invariant_I1(s)) ** 2))
    for _, p, a, b, t in GRID[:200]:
        s = phi_state(p, a, b, t)
        worst = max(worst, rel_err(four_tangle(s), 16 * abs(invariant_I1(s)) ** 2))
    record(3, "tau4 = 16|I1|^2 (1000 random + 200 phi points)", worst <= 1e-10,
           f"max rel err {worst:.2e}")


def test_04_dual_route_I2():
    worst = max(rel_err(invariant_I2_wedge(s), invariant_I2_plucker(s))
                for s in map(random_state, range(1000)))
    record(4, "I2 wedge route == Plucker route (1000 states)", worst <= 1e-10,
           f"max rel err {worst:.2e}")


def test_05_local_unitary_invariance():
    # each of the 50 states receives 200 independent actions
    worst = 0.0
    for si in range(50):
        s = random_state(20_000 + si)
        ref = compute_invariants(s)
        ref_v = np.array([ref.I1, ref.I2, ref.I3, ref.I4, ref.D4, ref.tau4])
        for k in range(200):
            us = [random_su2(5_000_000 + si * 10_000 + k * 4 + j) for j in range(4)]
            out = compute_invariants(apply_local_unitaries(s, us))
            v = np.array([out.I1, out.I2, out.I3, out.I4, out.D4, out.tau4])
            worst = max(worst, np.max(np.abs(v - ref_v)))
    record(5, "SU(2)^4 invariance (50 states x 200 actions)", worst <= 1e-9,
           f"max abs dev {worst:.2e}")


def test_06_oracle_cross_validation():
    min_fid, max_leak = 1.0, 0.0
    for _, p, a, b, t in GRID:
        for family, closed in (("phi", phi_state(p, a, b, t)), ("psi", psi_state(p, a, b, t))):
            for nmax in (2, 3, 4):
                o, leak = oracle_state(p, InitialStateSpec(family, a, b), t, FockTruncation(nmax))
                min_fid = min(min_fid, fidelity_up_to_phase(closed, o))
                max_leak = max(max_leak, leak)
    ok = min_fid >= 1 - 1e-10 and max_leak < 1e-12
    record(6, f"oracle fidelity and leakage ({len(GRID)} points, nmax 2-4)", ok,
           f"min fidelity 1-{1 - min_fid:.2e}, max leakage {max_leak:.2e}")


def test_07_psi_invariants_vanish():
    worst = 0.0
    for _, p, a, b, t in GRID:
        inv = compute_invariants(psi_state(p, a, b, t))
        worst = max(worst, *(abs(v) for v in (inv.I1, inv.I2, inv.I3, inv.I4, inv.tau4, inv.D4)))
    rng = np.random.default_rng(7)
    for _ in range(200):
        amps = np.zeros(16, dtype=complex)
        amps[[1, 2, 4, 8]] = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        inv = compute_invariants(FourQubitState(amps))
        worst = max(worst, *(abs(v) for v in (inv.I1, inv.I2, inv.I3, inv.I4, inv.tau4, inv.D4)))
    record(7, "psi' and psi'' invariants vanish", worst < 1e-12, f"max |value| {worst:.2e}")


def test_08_resonance_identities():
    worst = 0.0
    n = 0
    for name, p, a, b, t in GRID:
        if not name.startswith("resonant"):
            continue
        s = phi_state(p, a, b, t)
        tau = four_tangle(s)
        worst = max(worst, abs(16 * abs(invariant_I2_plucker(s)) - tau),
                    abs(16 * abs(invariant_I4(s)) - tau))
        n += 1
    record(8, f"16|I2| = 16|I4| = tau4 at resonance ({n} points)", worst <= 1e-10,
           f"max abs err {worst:.2e}")


def test_09_phi2_closed_forms():
    rng = np.random.default_rng(99)
    worst, worst_d4 = 0.0, 0.0
    for _ in range(100):
        amps = np.zeros(16, dtype=complex)
        amps[[0, 3, 6, 9, 12]] = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        s = FourQubitState(amps)
        y1100, y1001, y0110, y0011 = amps[12], amps[9], amps[6], amps[3]
        pa, pb = y1001 * y0110, y1100 * y0011
        want = {
            invariant_I1: 0.5 * (pa + pb),
            invariant_I2_plucker: (pa**2 + 4 * pa * pb + pb**2) / 6,
            invariant_I3: 0.5 * y1100 * y1001 * y0110 * y0011 * (pa + pb),
            invariant_I4: y1100 * y1001 * y0110 * y0011,
        }
        for f, w in want.items():
            worst = max(worst, rel_err(f(s), w))
        inv = compute_invariants(s)
        worst_d4 = max(worst_d4, abs(inv.D4) / d4_tolerance(inv.S))
    ok = worst <= 1e-12 and worst_d4 <= 1.0
    record(9, "phi'' closed forms for I1..I4 and D4 = 0 (100 sets)", ok,
           f"max rel err {worst:.2e}, max |D4|/tol {worst_d4:.2e}")


def test_10_tau4_surface_and_errata():
    p = ModelParams.from_detuning(1.0, 1.0)
    peak = four_tangle(phi_state(p, 0.0, 0.0, np.pi / 4))
    dead = max(four_tangle(phi_state(p, np.pi / 2, 0.0, t)) for t in np.linspace(0, 2 * np.pi, 101))
    passed, report = verify_report(SweepConfig(family="both", t_steps=11, alpha_start=0.0,
                                               alpha_stop=np.pi / 2, alpha_steps=3))
    flagged = {r.name for r in evaluate_errata() if r.deviates}
    needed = {"I1_resonance", "I2_resonance", "I3_resonance", "I1_general"}
    documented = all(f"{name}" in report for name in needed) and "DEVIATES" in report
    ok = peak >= 1 - 1e-9 and dead <= 1e-12 and passed and needed <= flagged and documented
    record(10, "tau4 surface phenomenology and erratum report", ok,
           f"tau4(pi/4, 0) = {peak:.12f}, max tau4(alpha=pi/2) = {dead:.1e}, "
           f"flagged {sorted(flagged & needed)}")
