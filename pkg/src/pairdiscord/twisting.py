"""Pairwise reduced state of the one-axis twisting collective spin state.

The N-qubit register starts with every qubit in the sigma_z = -1 state, so
at zero twisting the two-qubit reduced state is |dd><dd| (d4 = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .xstate import CLAMP_TOL, TwoQubitXState

__all__ = [
    "MAX_N",
    "TwistingParams",
    "CollectiveExpectations",
    "expectations",
    "reduced_state",
    "twisting_state",
]

MAX_N = 10**6


@dataclass(frozen=True)
class TwistingParams:
    n: int
    theta: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ValueError(f"particle count must be an integer, got {self.n!r}")
        if not 2 <= self.n <= MAX_N:
            raise ValueError(f"particle count must lie in [2, {MAX_N}], got {self.n}")
        if not math.isfinite(self.theta):
            raise ValueError(f"twisting angle must be finite, got {self.theta!r}")


@dataclass(frozen=True)
class CollectiveExpectations:
    """Single- and two-particle moments of a symmetric register.

    sz = <s1z>, szz = <s1z s2z>, spm = <s1+ s2->, smm = <s1- s2->.
    """

    sz: float
    szz: float
    spm: float
    smm: complex


def _ipow(base: float, k: int) -> float:
    # integer power keeps the sign of negative cosines and underflows to 0
    return base**k


def expectations(params: TwistingParams) -> CollectiveExpectations:
    n = params.n
    theta = params.theta
    half_cos = math.cos(0.5 * theta)
    full_pow = _ipow(math.cos(theta), n - 2)
    return CollectiveExpectations(
        sz=-_ipow(half_cos, n - 1),
        szz=0.5 * (1.0 + full_pow),
        spm=0.125 * (1.0 - full_pow),
        smm=complex(-0.125 * (1.0 - full_pow), -0.5 * math.sin(0.5 * theta) * _ipow(half_cos, n - 2)),
    )


def reduced_state(exp: CollectiveExpectations, tol: float = CLAMP_TOL) -> TwoQubitXState:
    """Two-qubit X state implied by the moments; raises on non-positive output."""
    sz, szz = exp.sz, exp.szz
    mid = 0.25 * (1.0 - szz)
    state = TwoQubitXState(
        d1=0.25 * (1.0 + 2.0 * sz + szz),
        d2=mid,
        d3=mid,
        d4=0.25 * (1.0 - 2.0 * sz + szz),
        a=complex(exp.smm),
        b=complex(exp.spm),
    )
    return state.validate(tol)


def twisting_state(n: int, theta: float) -> TwoQubitXState:
    """Shortcut for ``reduced_state(expectations(TwistingParams(n, theta)))``."""
    return reduced_state(expectations(TwistingParams(n, theta)))
