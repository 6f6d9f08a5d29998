import numpy as np
import pytest

from doublejc.dynamics import InitialStateSpec, ModelParams, family_state, phi_state, psi_state
from doublejc.invariants import compute_invariants
from doublejc.oracle import (
    DimensionMismatch, FockTruncation, NotNormalized, align_phase, block_rabi,
    build_hamiltonian, embed_initial, evolve, evolve_joint, excitation_number,
    extract_four_qubit, fidelity_up_to_phase, local_index, oracle_state, total_energy,
)
from doublejc.states import basis_state, random_state

from conftest import PARAM_SETS

DETUNED = ModelParams.from_detuning(2.0, 1.0, 0.5, 1.0, nu_A=1.3, nu_B=0.7)
TRUNCS = [FockTruncation(n) for n in (2, 3, 4)]


def test_truncation_validation():
    with pytest.raises(ValueError):
        FockTruncation(1)


def test_hamiltonian_coupling_element():
    p = ModelParams(g_A=0.37)
    tr = FockTruncation(2)
    h = build_hamiltonian(p, "A", tr)
    assert h[local_index(0, 1, tr), local_index(1, 0, tr)] == pytest.approx(0.37)


def test_hamiltonian_diagonal():
    p = ModelParams(nu_A=1.3, omega_A=0.4)
    tr = FockTruncation(3)
    h = build_hamiltonian(p, "A", tr)
    for s, sign in ((0, -1), (1, 1)):
        for n in range(3):
            i = local_index(s, n, tr)
            assert h[i, i].real == pytest.approx(1.3 * (n + 0.5) + sign * 0.2)


@pytest.mark.parametrize("tr", TRUNCS, ids=lambda t: f"nmax{t.nmax}")
@pytest.mark.parametrize("sub", "AB")
def test_hamiltonian_structure(tr, sub):
    h = build_hamiltonian(DETUNED, sub, tr)
    assert np.max(np.abs(h - h.conj().T)) < 1e-14
    n = excitation_number(tr)
    assert np.linalg.norm(h @ n - n @ h) < 1e-12


def test_block_rabi_values():
    assert block_rabi(DETUNED, "A", 1) == pytest.approx(DETUNED.rabi("A"))
    assert block_rabi(ModelParams(g_A=0.8), "A", 4) == pytest.approx(1.6)
    with pytest.raises(ValueError):
        block_rabi(DETUNED, "A", 0)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("sub", "AB")
def test_block_splitting_matches_rabi(n, sub):
    tr = FockTruncation(n + 1)
    h = build_hamiltonian(DETUNED, sub, tr)
    idx = [local_index(1, n - 1, tr), local_index(0, n, tr)]
    w = np.linalg.eigvalsh(h[np.ix_(idx, idx)])
    assert w[1] - w[0] == pytest.approx(2 * block_rabi(DETUNED, sub, n), abs=1e-10)


def test_evolve_properties():
    tr = FockTruncation(3)
    h = build_hamiltonian(DETUNED, "A", tr)
    rng = np.random.default_rng(0)
    v = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    v /= np.linalg.norm(v)
    np.testing.assert_allclose(evolve(h, 0.0, v), v, atol=1e-14)
    for t in (0.3, 7.1, -2.0):
        assert np.linalg.norm(evolve(h, t, v)) == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(evolve(h, 0.4, evolve(h, 1.1, v)), evolve(h, 1.5, v), atol=1e-10)
    with pytest.raises(DimensionMismatch):
        evolve(h, 1.0, np.ones(4))


@pytest.mark.parametrize("family", ["phi", "psi"])
def test_evolve_joint_at_zero(family):
    tr = FockTruncation(3)
    spec = InitialStateSpec(family, 0.6, 1.2)
    np.testing.assert_allclose(evolve_joint(DETUNED, tr, spec, 0.0), embed_initial(spec, tr),
                               atol=1e-14)


def test_full_exchange_at_resonance():
    tr = FockTruncation(2)
    joint = evolve_joint(PARAM_SETS["resonant_equal"], tr, InitialStateSpec("phi", 0.0, 0.0),
                         np.pi / 2)
    i = local_index(0, 1, tr) * tr.local_dim + local_index(0, 1, tr)
    assert abs(joint[i]) == pytest.approx(1.0, abs=1e-12)


def test_extract_inside_sector():
    tr = FockTruncation(3)
    s = random_state(2)
    joint = np.zeros(36, dtype=complex)
    for k, amp in enumerate(s.amps):
        sa, sb, na, nb = (k >> 3) & 1, (k >> 2) & 1, (k >> 1) & 1, k & 1
        joint[local_index(sa, na, tr) * 6 + local_index(sb, nb, tr)] = amp
    out, leak = extract_four_qubit(joint, tr)
    assert leak == 0
    np.testing.assert_array_equal(out.amps, s.amps)


def test_extract_reports_leakage():
    tr = FockTruncation(3)
    joint = np.zeros(36, dtype=complex)
    joint[local_index(0, 2, tr) * 6 + local_index(0, 0, tr)] = 0.5
    joint[local_index(1, 0, tr) * 6 + local_index(1, 0, tr)] = np.sqrt(0.75)
    out, leak = extract_four_qubit(joint, tr)
    assert leak == pytest.approx(0.25, abs=1e-15)
    assert abs(out[12]) == pytest.approx(1.0)
    with pytest.raises(DimensionMismatch):
        extract_four_qubit(np.zeros(16), tr)


def test_fidelity_examples():
    s = random_state(9)
    assert fidelity_up_to_phase(s, np.exp(0.7j) * s.amps) == pytest.approx(1.0, abs=1e-12)
    assert fidelity_up_to_phase(basis_state(0), basis_state(1)) == 0
    with pytest.raises(NotNormalized):
        fidelity_up_to_phase(2 * s.amps, s)


def test_align_phase():
    s = random_state(4).amps
    np.testing.assert_allclose(align_phase(s, np.exp(-1.1j) * s), s, atol=1e-15)


@pytest.mark.parametrize("family", ["phi", "psi"])
def test_truncation_independence(family, params):
    spec = InitialStateSpec(family, 0.5, 2.0)
    for t in np.linspace(0, 6, 7):
        states = [oracle_state(params, spec, t, tr) for tr in TRUNCS]
        for s, leak in states:
            assert leak < 1e-12
            np.testing.assert_allclose(s.amps, states[0][0].amps, atol=1e-12)


@pytest.mark.parametrize("family", ["phi", "psi"])
def test_energy_conservation(family, params):
    tr = FockTruncation(3)
    spec = InitialStateSpec(family, 0.9, 0.4)
    e0 = total_energy(params, tr, evolve_joint(params, tr, spec, 0.0))
    for t in np.linspace(0.5, 10, 6):
        e = total_energy(params, tr, evolve_joint(params, tr, spec, t))
        assert e == pytest.approx(e0, rel=1e-10)


@pytest.mark.parametrize("family", ["phi", "psi"])
def test_oracle_matches_closed_form(family, params):
    for t in np.linspace(0, 2 * np.pi, 9):
        for a in (0.0, 0.5, np.pi / 2):
            closed = family_state(family, params, a, 1.0, t)
            oracle, leak = oracle_state(params, InitialStateSpec(family, a, 1.0), t)
            assert fidelity_up_to_phase(closed, oracle) >= 1 - 1e-10
            ic = compute_invariants(closed)
            io = compute_invariants(align_phase(closed, oracle))
            for name in ("I1", "I2", "I3", "I4", "D4", "tau4"):
                assert abs(getattr(ic, name) - getattr(io, name)) < 1e-10
