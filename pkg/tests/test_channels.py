import math

import numpy as np
import pytest

from pairdiscord import oracle
from pairdiscord.channels import (
    ChannelKind,
    KrausSet,
    NoiseStrength,
    StructureError,
    apply_two_qubit,
    evolve,
    evolved_state_analytic,
    kraus_parameter,
    kraus_set,
    p_of_t,
)
from pairdiscord.twisting import TwistingParams, expectations, reduced_state
from pairdiscord.xstate import TwoQubitXState

NON_DEP = [k for k in ChannelKind if k is not ChannelKind.DEPOLARIZING]
GOLDEN_EXP = expectations(TwistingParams(12, 0.1 * math.pi))


def _diff(s, t):
    return max(abs(complex(u) - complex(v)) for u, v in zip(s.diagonal + (s.a, s.b), t.diagonal + (t.a, t.b)))


def test_p_of_t(fixtures):
    assert p_of_t(0.0).p == 1.0
    assert p_of_t(math.log(2.0)).p == pytest.approx(0.5, abs=1e-16)
    assert p_of_t(3.7).p == pytest.approx(fixtures["channels.p_of_t.gamma_t=3.7"], rel=1e-12)
    with pytest.raises(ValueError):
        p_of_t(-0.1)


def test_noise_strength_range():
    with pytest.raises(ValueError):
        NoiseStrength(1.5)


def test_kraus_parameter_conventions():
    dep = ChannelKind.DEPOLARIZING
    assert kraus_parameter(dep, 0.0).p == 0.0
    assert kraus_parameter(dep, 1.0, "literal").p == pytest.approx(math.exp(-1))
    assert kraus_parameter(ChannelKind.PHASE_FLIP, 1.0).p == pytest.approx(math.exp(-1))
    with pytest.raises(ValueError):
        kraus_parameter(dep, 1.0, "other")


def test_kraus_examples():
    ops = kraus_set(ChannelKind.PHASE_FLIP, 0.0).ops
    np.testing.assert_array_equal(ops[0], np.eye(2))
    np.testing.assert_array_equal(ops[1], np.zeros((2, 2)))
    ops = kraus_set(ChannelKind.DEPOLARIZING, 1.0).ops
    np.testing.assert_allclose(ops[0], 0.5 * np.eye(2))
    np.testing.assert_allclose(ops[3], 0.5 * np.diag([1, -1]))
    ops = kraus_set(ChannelKind.AMPLITUDE_DAMPING, 0.5).ops
    np.testing.assert_allclose(ops[0], np.diag([math.sqrt(0.5), 1.0]))
    assert ops[1][1, 0] == pytest.approx(math.sqrt(0.5))


@pytest.mark.parametrize("kind, count", [(ChannelKind.PHASE_FLIP, 2), (ChannelKind.AMPLITUDE_DAMPING, 2), (ChannelKind.PHASE_DAMPING, 3), (ChannelKind.DEPOLARIZING, 4)])
def test_kraus_completeness(kind, count):
    for p in np.linspace(0.0, 1.0, 101):
        k = kraus_set(kind, float(p))
        assert len(k.ops) == count
        assert k.completeness_error() <= 1e-12


@pytest.mark.parametrize("kind", list(ChannelKind))
def test_identity_action_on_bell(kind, bell):
    p = 0.0 if kind is ChannelKind.DEPOLARIZING or kind is ChannelKind.PHASE_FLIP else 1.0
    assert _diff(apply_two_qubit(kraus_set(kind, p), bell), bell) <= 1e-15


def test_phase_flip_half_kills_coherences(bell):
    out = apply_two_qubit(kraus_set(ChannelKind.PHASE_FLIP, 0.5), bell)
    np.testing.assert_allclose(out.diagonal, (0.5, 0, 0, 0.5), atol=1e-15)
    assert abs(out.a) <= 1e-15 and abs(out.b) <= 1e-15


def test_structure_error_on_non_x_channel(bell):
    hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    with pytest.raises(StructureError):
        apply_two_qubit(KrausSet((hadamard,)), TwoQubitXState(1, 0, 0, 0))


@pytest.mark.parametrize("kind", NON_DEP)
def test_analytic_matches_kraus(kind):
    pairs = [(n, th) for n in (2, 3, 4, 6, 8, 10, 12, 16, 20, 25) for th in (0.1 * math.pi, 1.3)]
    for n, th in pairs:
        exp = expectations(TwistingParams(n, th))
        base = reduced_state(exp)
        for p in np.linspace(0.0, 1.0, 11):
            a = evolved_state_analytic(kind, exp, float(p))
            k = apply_two_qubit(kraus_set(kind, float(p)), base)
            assert _diff(a, k) <= 1e-11


def test_amplitude_damping_golden_agreement():
    a = evolved_state_analytic(ChannelKind.AMPLITUDE_DAMPING, GOLDEN_EXP, 0.3)
    k = apply_two_qubit(kraus_set(ChannelKind.AMPLITUDE_DAMPING, 0.3), reduced_state(GOLDEN_EXP))
    assert _diff(a, k) <= 1e-12


def test_depolarizing_analytic_populations_drift_toward_half():
    # the closed-form depolarizing populations shift <s1z> by p/2, which the Kraus set does not
    a = evolved_state_analytic(ChannelKind.DEPOLARIZING, GOLDEN_EXP, 0.4)
    k = apply_two_qubit(kraus_set(ChannelKind.DEPOLARIZING, 0.4), reduced_state(GOLDEN_EXP))
    assert a.a == pytest.approx(k.a, abs=1e-12)
    assert a.b == pytest.approx(k.b, abs=1e-12)
    sz_a = a.d1 + a.d2 - a.d3 - a.d4
    sz_k = k.d1 + k.d2 - k.d3 - k.d4
    assert sz_a - sz_k == pytest.approx(0.2, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 1.0])
def test_phase_flip_endpoints_are_identity(p):
    out = evolved_state_analytic(ChannelKind.PHASE_FLIP, GOLDEN_EXP, p)
    assert _diff(out, reduced_state(GOLDEN_EXP)) <= 1e-15


@pytest.mark.parametrize("kind", list(ChannelKind))
def test_trace_and_positivity_preserved(kind):
    for s in oracle.random_x_states(40, seed=7):
        for p in (0.1, 0.5, 0.93):
            out = apply_two_qubit(kraus_set(kind, p), s)
            assert abs(sum(out.diagonal) - 1.0) <= 1e-12
            assert np.linalg.eigvalsh(out.to_matrix()).min() >= -1e-10


def test_evolve_methods_agree_for_phase_damping():
    base = reduced_state(GOLDEN_EXP)
    strength = kraus_parameter(ChannelKind.PHASE_DAMPING, 0.8)
    k = evolve(ChannelKind.PHASE_DAMPING, base, GOLDEN_EXP, strength)
    a = evolve(ChannelKind.PHASE_DAMPING, base, GOLDEN_EXP, strength, method="analytic")
    assert _diff(a, k) <= 1e-14


def test_channel_alias_parsing():
    assert ChannelKind.parse("AD") is ChannelKind.AMPLITUDE_DAMPING
    assert ChannelKind.parse("phase-flip") is ChannelKind.PHASE_FLIP
    with pytest.raises(ValueError):
        ChannelKind.parse("bitflip")
