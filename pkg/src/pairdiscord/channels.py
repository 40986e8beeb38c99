"""Local noise channels acting independently on each qubit.

Every channel is parametrized by ``p`` in [0, 1] exactly as its Kraus
matrices are written below. How ``p`` follows from the dimensionless time
``gamma_t`` is a separate question answered by :func:`kraus_parameter`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .twisting import CollectiveExpectations
from .xstate import TwoQubitXState

__all__ = [
    "ChannelKind",
    "NoiseStrength",
    "KrausSet",
    "StructureError",
    "p_of_t",
    "kraus_parameter",
    "kraus_set",
    "apply_single_qubit",
    "apply_two_qubit",
    "evolved_state_analytic",
    "evolve",
]

X_STRUCTURE_TOL = 1e-9


class StructureError(ValueError):
    """A channel produced entries outside the X pattern."""


class ChannelKind(enum.Enum):
    PHASE_FLIP = "phase_flip"
    AMPLITUDE_DAMPING = "amplitude_damping"
    PHASE_DAMPING = "phase_damping"
    DEPOLARIZING = "depolarizing"

    @classmethod
    def parse(cls, name: str) -> "ChannelKind":
        key = name.strip().lower().replace("-", "_")
        aliases = {"pf": "phase_flip", "ad": "amplitude_damping", "pd": "phase_damping", "dep": "depolarizing"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise ValueError(f"unknown channel {name!r}; expected one of {names}") from None


@dataclass(frozen=True)
class NoiseStrength:
    p: float
    gamma_t: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"noise parameter p must lie in [0, 1], got {self.p!r}")


@dataclass(frozen=True)
class KrausSet:
    ops: tuple[np.ndarray, ...]

    def completeness_error(self) -> float:
        total = sum(op.conj().T @ op for op in self.ops)
        return float(np.max(np.abs(total - np.eye(2))))


def p_of_t(gamma_t: float) -> NoiseStrength:
    """p = exp(-gamma_t)."""
    if gamma_t < 0 or not math.isfinite(gamma_t):
        raise ValueError(f"gamma_t must be a finite non-negative number, got {gamma_t!r}")
    return NoiseStrength(p=math.exp(-gamma_t), gamma_t=gamma_t)


CONVENTIONS = ("physical", "literal")


def kraus_parameter(kind: ChannelKind, gamma_t: float, convention: str = "physical") -> NoiseStrength:
    """Kraus parameter of ``kind`` after dimensionless time ``gamma_t``.

    Under ``"literal"`` every channel uses p = exp(-gamma_t). Under
    ``"physical"`` (the default) the depolarizing channel uses
    p = 1 - exp(-gamma_t) instead, because its Kraus set is the identity at
    p = 0 and fully depolarizing at p = 1; the other three channels are the
    identity at p = 1, so exp(-gamma_t) already starts them noiseless.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    base = p_of_t(gamma_t)
    if convention == "physical" and kind is ChannelKind.DEPOLARIZING:
        return NoiseStrength(p=-math.expm1(-gamma_t), gamma_t=gamma_t)
    return base


def _p(p: float | NoiseStrength) -> float:
    return p.p if isinstance(p, NoiseStrength) else NoiseStrength(float(p)).p


def kraus_set(kind: ChannelKind, p: float | NoiseStrength) -> KrausSet:
    p = _p(p)
    if kind is ChannelKind.PHASE_FLIP:
        ops = (
            math.sqrt(1.0 - p) * np.eye(2),
            math.sqrt(p) * np.diag([1.0, -1.0]),
        )
    elif kind is ChannelKind.AMPLITUDE_DAMPING:
        ops = (
            np.diag([math.sqrt(p), 1.0]),
            np.array([[0.0, 0.0], [math.sqrt(1.0 - p), 0.0]]),
        )
    elif kind is ChannelKind.PHASE_DAMPING:
        ops = (
            math.sqrt(p) * np.eye(2),
            np.diag([math.sqrt(1.0 - p), 0.0]),
            np.diag([0.0, math.sqrt(1.0 - p)]),
        )
    elif kind is ChannelKind.DEPOLARIZING:
        w = math.sqrt(p / 4.0)
        ops = (
            math.sqrt(1.0 - 0.75 * p) * np.eye(2),
            w * np.array([[0.0, 1.0], [1.0, 0.0]]),
            w * np.array([[0.0, -1j], [1j, 0.0]]),
            w * np.array([[1.0, 0.0], [0.0, -1.0]]),
        )
    else:
        raise ValueError(f"unknown channel {kind!r}")
    return KrausSet(tuple(np.asarray(op, dtype=complex) for op in ops))


def apply_single_qubit(kraus: KrausSet, rho: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Apply a one-qubit channel to ``qubit`` of an ``n_qubits`` density matrix."""
    dim = 2**n_qubits
    t = rho.reshape((2,) * (2 * n_qubits))
    row, col = qubit, n_qubits + qubit
    out = np.zeros_like(t)
    for op in kraus.ops:
        left = np.moveaxis(np.tensordot(op, t, axes=([1], [row])), 0, row)
        out += np.moveaxis(np.tensordot(op.conj(), left, axes=([1], [col])), 0, col)
    return out.reshape(dim, dim)


def apply_two_qubit(kraus: KrausSet, state: TwoQubitXState) -> TwoQubitXState:
    """Apply the channel to both qubits and return the result as an X state.

    The full 4x4 output is computed; entries outside the X pattern larger than
    1e-9 raise :class:`StructureError`.
    """
    rho = state.to_matrix()
    out = np.zeros((4, 4), dtype=complex)
    for ei in kraus.ops:
        for ej in kraus.ops:
            k = np.kron(ei, ej)
            out += k @ rho @ k.conj().T
    mask = np.ones((4, 4), dtype=bool)
    for i in range(4):
        mask[i, i] = mask[i, 3 - i] = False
    leak = float(np.max(np.abs(out[mask])))
    if leak > X_STRUCTURE_TOL:
        raise StructureError(f"channel does not preserve the X form (off-X entry {leak:.3e})")
    return TwoQubitXState.from_matrix(out, tol=X_STRUCTURE_TOL)


def evolved_state_analytic(
    kind: ChannelKind,
    exp: CollectiveExpectations,
    p: float | NoiseStrength,
    tol: float = 1e-9,
) -> TwoQubitXState:
    """Evolved pair state from the moments via closed-form per-channel formulas.

    Phase flip and phase damping leave the populations alone and scale both
    coherences by (1 - 2p)^2 and p^2 respectively. Amplitude damping maps
    <s1z> -> p<s1z> + p - 1 and scales coherences by p. For the depolarizing
    channel the populations used here correspond to <s1z> -> (1-p)<s1z> + p/2,
    with coherences scaled by (1-p)^2; note that the depolarizing Kraus set
    itself maps <s1z> -> (1-p)<s1z>, so these populations differ from
    ``apply_two_qubit`` whenever p > 0. Use ``apply_two_qubit`` for the
    channel as defined by its Kraus operators.
    """
    p = _p(p)
    sz, szz = exp.sz, exp.szz
    if kind is ChannelKind.PHASE_FLIP:
        scale = (1.0 - 2.0 * p) ** 2
    elif kind is ChannelKind.PHASE_DAMPING:
        scale = p * p
    elif kind is ChannelKind.AMPLITUDE_DAMPING:
        sz, szz = (
            p * sz + p - 1.0,
            p * p * szz - 2.0 * (1.0 - p) * p * sz + (1.0 - p) ** 2,
        )
        scale = p
    elif kind is ChannelKind.DEPOLARIZING:
        sz, szz = (
            (1.0 - p) * sz + 0.5 * p,
            (1.0 - p) ** 2 * szz + (1.0 - p) * p * sz + 0.25 * p * p,
        )
        scale = (1.0 - p) ** 2
    else:
        raise ValueError(f"unknown channel {kind!r}")
    mid = 0.25 * (1.0 - szz)
    state = TwoQubitXState(
        d1=0.25 * (1.0 + 2.0 * sz + szz),
        d2=mid,
        d3=mid,
        d4=0.25 * (1.0 - 2.0 * sz + szz),
        a=scale * complex(exp.smm),
        b=scale * complex(exp.spm),
    )
    return state.validate(tol)


def evolve(
    kind: ChannelKind | None,
    state: TwoQubitXState,
    exp: CollectiveExpectations,
    strength: NoiseStrength,
    method: str = "kraus",
) -> TwoQubitXState:
    """Noisy pair state by the generic Kraus route or the per-channel formulas."""
    if kind is None:
        return state
    if method == "kraus":
        return apply_two_qubit(kraus_set(kind, strength), state)
    if method == "analytic":
        return evolved_state_analytic(kind, exp, strength)
    raise ValueError(f"unknown evolution method {method!r}; expected 'kraus' or 'analytic'")
