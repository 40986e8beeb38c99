import math

import numpy as np
import pytest

from pairdiscord import oracle
from pairdiscord.channels import ChannelKind, apply_two_qubit, evolved_state_analytic, kraus_set
from pairdiscord.oracle import GridSpec, MeasurementDirection, TwistingParams
from pairdiscord.twisting import expectations, twisting_state
from pairdiscord.xstate import TwoQubitXState, gmqd, quantum_discord


def _diff(s, t):
    return max(abs(complex(u) - complex(v)) for u, v in zip(s.diagonal + (s.a, s.b), t.diagonal + (t.a, t.b)))


def test_direction_vector_is_unit():
    v = MeasurementDirection(0.7, 2.1).vector()
    assert np.linalg.norm(v) == pytest.approx(1.0)


@pytest.mark.parametrize("kwargs", [dict(coarse_points=4), dict(refine_rounds=-1), dict(refine_shrink=1.0), dict(refine_starts=0), dict(refine_points=5)])
def test_grid_spec_validation(kwargs):
    with pytest.raises(ValueError):
        GridSpec(**kwargs)


def test_discord_bruteforce_simple(bell):
    assert oracle.discord_bruteforce(bell) == pytest.approx(1.0, abs=1e-6)
    assert oracle.discord_bruteforce(TwoQubitXState(0.5, 0, 0, 0.5)) == pytest.approx(0.0, abs=1e-9)


def test_gmqd_bruteforce_simple(bell, mixed):
    assert oracle.gmqd_bruteforce(mixed) == pytest.approx(0.0, abs=1e-12)
    assert oracle.gmqd_bruteforce(bell) == pytest.approx(0.5, abs=1e-6)


def test_golden_oracle_values(golden, fixtures):
    d = oracle.discord_bruteforce(golden)
    assert d == pytest.approx(fixtures["oracle.discord_bruteforce.n=12.theta=0.1pi"], abs=1e-11)
    assert -1e-6 <= quantum_discord(golden).qd - d <= 3e-3
    g = oracle.gmqd_bruteforce(golden)
    assert g == pytest.approx(gmqd(golden, normalized=False), abs=1e-6)


def test_discord_matches_dense_definition(golden):
    # direct evaluation at one direction, without the batched contractions
    polar, az = 0.9, 2.3
    rho = golden.to_matrix()
    n = MeasurementDirection(polar, az).vector()
    sig = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    ndot = sum(c * s for c, s in zip(n, sig))
    total = 0.0
    for sign in (1, -1):
        proj = np.kron(np.eye(2), 0.5 * (np.eye(2) + sign * ndot))
        m = proj @ rho @ proj
        pk = np.trace(m).real
        rho_a = np.einsum("ajbj->ab", m.reshape(2, 2, 2, 2)) / pk
        total += pk * oracle.von_neumann_entropy(rho_a)
    got = oracle.conditional_entropy_after_b(rho, np.array([polar]), np.array([az]))[0]
    assert got == pytest.approx(total, abs=1e-12)


def test_dephasing_distance_matches_dense(golden):
    polar, az = 1.1, 0.4
    rho = golden.to_matrix()
    n = MeasurementDirection(polar, az).vector()
    sig = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]
    ndot = sum(c * s for c, s in zip(n, sig))
    deph = sum(
        np.kron(pk, np.eye(2)) @ rho @ np.kron(pk, np.eye(2))
        for pk in (0.5 * (np.eye(2) + ndot), 0.5 * (np.eye(2) - ndot))
    )
    want = np.sum(np.abs(rho - deph) ** 2)
    got = oracle.dephasing_distance_a(rho, np.array([polar]), np.array([az]))[0]
    assert got == pytest.approx(want, abs=1e-12)


def test_refinement_tightens_upper_bounds():
    deep = GridSpec(coarse_points=16, refine_rounds=8)
    deeper = GridSpec(coarse_points=32, refine_rounds=8)
    states = [twisting_state(n, th) for n, th in ((3, 0.4), (7, 2.2), (12, 0.1 * math.pi))]
    states += oracle.random_x_states(10, seed=5)
    for s in states:
        assert oracle.discord_bruteforce(s, deeper) <= oracle.discord_bruteforce(s, deep) + 1e-9
        assert oracle.gmqd_bruteforce(s, deeper) <= oracle.gmqd_bruteforce(s, deep) + 1e-9


def test_exact_reduced_state_simple():
    s = oracle.exact_reduced_state(TwistingParams(2, 0.0))
    np.testing.assert_allclose(s.diagonal, (0, 0, 0, 1), atol=1e-15)


def test_exact_reduced_state_two_particles():
    for th in np.linspace(0.0, 2.0 * math.pi, 33):
        p = TwistingParams(2, float(th))
        assert _diff(oracle.exact_reduced_state(p), twisting_state(2, float(th))) <= 1e-10


def test_exact_inner_populations_equal():
    for n in (2, 5, 9, 14, 20):
        for th in np.linspace(0.0, 2.0 * math.pi, 9):
            s = oracle.exact_reduced_state(TwistingParams(n, float(th)))
            assert abs(s.d2 - s.d3) <= 1e-12


def test_exact_size_limit():
    with pytest.raises(ValueError):
        oracle.exact_reduced_state(TwistingParams(oracle.MAX_EXACT_N + 1, 0.1))
    with pytest.raises(ValueError):
        oracle.exact_channel_reduced(TwistingParams(7, 0.1), ChannelKind.PHASE_FLIP, 0.5, full_register=True)


def test_dicke_matches_full_register():
    for n in (2, 4, 7):
        p = TwistingParams(n, 0.77)
        assert _diff(oracle.exact_reduced_state(p), oracle.exact_reduced_state_full(p)) <= 1e-10


def test_full_register_channel_path(fixtures):
    p = TwistingParams(6, 0.3 * math.pi)
    a = oracle.exact_channel_reduced(p, ChannelKind.DEPOLARIZING, 0.5)
    b = oracle.exact_channel_reduced(p, ChannelKind.DEPOLARIZING, 0.5, full_register=True)
    assert _diff(a, b) <= 1e-10
    key = "oracle.exact_channel_reduced_full.n=6.theta=0.3pi.depolarizing.p=0.5.d1"
    assert b.d1 == pytest.approx(fixtures[key], abs=1e-11)


def test_phase_flip_unity_keeps_coherence_moduli():
    p = TwistingParams(4, 1.1)
    base = oracle.exact_reduced_state(p)
    out = oracle.exact_channel_reduced(p, ChannelKind.PHASE_FLIP, 1.0)
    assert abs(out.a) == pytest.approx(abs(base.a), abs=1e-15)
    assert abs(out.b) == pytest.approx(abs(base.b), abs=1e-15)


def test_amplitude_damping_end_to_end(fixtures):
    p = TwistingParams(12, 0.1 * math.pi)
    exact = oracle.exact_channel_reduced(p, ChannelKind.AMPLITUDE_DAMPING, 0.7)
    analytic = evolved_state_analytic(ChannelKind.AMPLITUDE_DAMPING, expectations(p), 0.7)
    assert _diff(exact, analytic) <= 1e-10
    assert exact.d4 == pytest.approx(fixtures["oracle.exact_channel_reduced.n=12.theta=0.1pi.amplitude_damping.p=0.7.d4"], abs=1e-11)


def test_partial_trace_of_product():
    a = np.diag([0.3, 0.7]).astype(complex)
    rho = np.kron(np.kron(a, a), np.diag([0.5, 0.5]))
    np.testing.assert_allclose(oracle.partial_trace_pair(rho, 3), np.kron(a, a), atol=1e-15)


def test_random_states_are_valid_and_reproducible():
    first = oracle.random_x_states(50, seed=2)
    assert first == oracle.random_x_states(50, seed=2)
    for s in first:
        s.validate()
