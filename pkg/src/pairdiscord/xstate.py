"""Two-qubit X states and their correlation measures.

Basis ordering is |uu>, |ud>, |du>, |dd> where ``u`` is the sigma_z = +1
eigenstate. Qubit A is the left tensor factor. Entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "InvalidStateError",
    "TwoQubitXState",
    "SpectralData",
    "BlochDecomposition",
    "CorrelationReport",
    "binary_entropy",
    "eigenvalues",
    "marginal_entropies",
    "mutual_information",
    "quantum_discord",
    "bloch_decompose",
    "gmqd",
]

DOMAIN_TOL = 1e-12
CLAMP_TOL = 1e-10

_OUTER = (0, 3)
_INNER = (1, 2)


class InvalidStateError(ValueError):
    """Raised when a matrix is not a valid X-form density matrix."""


@dataclass(frozen=True)
class TwoQubitXState:
    """X-form density matrix with diagonals d1..d4, rho14 = a, rho23 = b."""

    d1: float
    d2: float
    d3: float
    d4: float
    a: complex = 0.0
    b: complex = 0.0

    @property
    def diagonal(self) -> tuple[float, float, float, float]:
        return (self.d1, self.d2, self.d3, self.d4)

    def to_matrix(self) -> np.ndarray:
        rho = np.diag(np.array(self.diagonal, dtype=complex))
        rho[0, 3] = self.a
        rho[3, 0] = np.conj(self.a)
        rho[1, 2] = self.b
        rho[2, 1] = np.conj(self.b)
        return rho

    @classmethod
    def from_matrix(cls, rho: np.ndarray, tol: float = 1e-10) -> "TwoQubitXState":
        """Read the X entries of a 4x4 matrix.

        Raises InvalidStateError if any entry outside the X pattern, or the
        imaginary part of a diagonal, exceeds ``tol``.
        """
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (4, 4):
            raise InvalidStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
        mask = np.ones((4, 4), dtype=bool)
        for i in range(4):
            mask[i, i] = False
            mask[i, 3 - i] = False
        off = float(np.max(np.abs(rho[mask])))
        if off > tol:
            raise InvalidStateError(f"matrix is not X-shaped: off-X entry {off:.3e}")
        herm = max(abs(rho[0, 3] - np.conj(rho[3, 0])), abs(rho[1, 2] - np.conj(rho[2, 1])))
        if herm > tol:
            raise InvalidStateError(f"matrix is not Hermitian: {herm:.3e}")
        diag = np.diag(rho)
        if np.max(np.abs(diag.imag)) > tol:
            raise InvalidStateError("diagonal has an imaginary part")
        return cls(*(float(v) for v in diag.real), a=complex(rho[0, 3]), b=complex(rho[1, 2]))

    def validate(self, tol: float = CLAMP_TOL) -> "TwoQubitXState":
        """Check unit trace and positivity; return self for chaining."""
        trace = sum(self.diagonal)
        if abs(trace - 1.0) > max(tol, DOMAIN_TOL):
            raise InvalidStateError(f"trace is {trace!r}, expected 1")
        if min(self.diagonal) < -tol:
            raise InvalidStateError(f"negative population in {self.diagonal}")
        if abs(self.a) ** 2 > self.d1 * self.d4 + tol:
            raise InvalidStateError("|rho14|^2 exceeds rho11*rho44")
        if abs(self.b) ** 2 > self.d2 * self.d3 + tol:
            raise InvalidStateError("|rho23|^2 exceeds rho22*rho33")
        return self

    def with_moduli(self) -> "TwoQubitXState":
        """Same state with the coherences replaced by their moduli."""
        return TwoQubitXState(self.d1, self.d2, self.d3, self.d4, abs(self.a), abs(self.b))


@dataclass(frozen=True)
class SpectralData:
    eps1: float
    eps2: float
    eps3: float
    eps4: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.eps1, self.eps2, self.eps3, self.eps4)


@dataclass(frozen=True)
class BlochDecomposition:
    x: np.ndarray
    y: np.ndarray
    R: np.ndarray


@dataclass(frozen=True)
class CorrelationReport:
    qd: float
    gmqd_normalized: float
    classical: float
    mutual_info: float
    q1: float
    q2: float


def _xlog2x(v: float) -> float:
    if v < -CLAMP_TOL:
        raise InvalidStateError(f"negative probability {v!r}")
    if v <= 0.0:
        return 0.0
    return v * math.log2(v)


def _entropy(probs) -> float:
    return -sum(_xlog2x(v) for v in probs)


def binary_entropy(x: float) -> float:
    """Shannon entropy of the distribution (x, 1 - x), in bits.

    Inputs up to 1e-12 outside [0, 1] are clamped; anything further out
    raises ``ValueError``.
    """
    if x < -DOMAIN_TOL or x > 1.0 + DOMAIN_TOL:
        raise ValueError(f"binary_entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    return _entropy((x, 1.0 - x))


def _h_clipped(x: float) -> float:
    # derived arguments may stray past [0, 1] by the positivity tolerance
    x = min(max(x, 0.0), 1.0)
    return _entropy((x, 1.0 - x))


def eigenvalues(state: TwoQubitXState) -> SpectralData:
    """Closed-form spectrum: two eigenvalues per 2x2 block, larger first."""
    s = state
    r_out = math.sqrt((s.d1 - s.d4) ** 2 + 4.0 * abs(s.a) ** 2)
    r_in = math.sqrt((s.d2 - s.d3) ** 2 + 4.0 * abs(s.b) ** 2)
    t_out = s.d1 + s.d4
    t_in = s.d2 + s.d3
    return SpectralData(
        0.5 * (t_out + r_out),
        0.5 * (t_out - r_out),
        0.5 * (t_in + r_in),
        0.5 * (t_in - r_in),
    )


def marginal_entropies(state: TwoQubitXState) -> tuple[float, float]:
    """Return (S(rho_A), S(rho_B))."""
    s = state
    p_a = s.d1 + s.d2
    p_b = s.d1 + s.d3
    return (
        _entropy((p_a, s.d3 + s.d4)),
        _entropy((p_b, s.d2 + s.d4)),
    )


def _neg_joint_entropy(state: TwoQubitXState) -> float:
    # sum_i eps_i log2 eps_i
    return sum(_xlog2x(e) for e in eigenvalues(state).as_tuple())


def mutual_information(state: TwoQubitXState) -> float:
    s_a, s_b = marginal_entropies(state)
    return s_a + s_b + _neg_joint_entropy(state)


def quantum_discord(state: TwoQubitXState) -> CorrelationReport:
    """Discord with measurement on B, as the smaller of two branch values.

    Branch 1 is the transverse (sigma_x-type) measurement, branch 2 the
    sigma_z measurement. Ties go to branch 1. The report also carries the
    normalized geometric discord so that one call yields every measure.
    """
    s = state
    h_b = _h_clipped(s.d1 + s.d3)
    neg_s_ab = _neg_joint_entropy(s)
    z_a = 1.0 - 2.0 * (s.d3 + s.d4)
    radius = math.sqrt(z_a**2 + 4.0 * (abs(s.a) + abs(s.b)) ** 2)
    cond_transverse = _h_clipped(0.5 * (1.0 + radius))
    cond_z = _entropy(s.diagonal) - h_b
    q1 = h_b + neg_s_ab + cond_transverse
    q2 = h_b + neg_s_ab + cond_z
    qd = q1 if q1 <= q2 else q2
    mi = mutual_information(s)
    return CorrelationReport(
        qd=qd,
        gmqd_normalized=gmqd(s, normalized=True),
        classical=mi - qd,
        mutual_info=mi,
        q1=q1,
        q2=q2,
    )


def bloch_decompose(state: TwoQubitXState) -> BlochDecomposition:
    """Local Bloch vectors and correlation tensor of an X state.

    Nonzero entries, with a = rho14 and b = rho23::

        x3  = d1 + d2 - d3 - d4        y3  = d1 - d2 + d3 - d4
        R11 = 2 Re(a + b)              R12 = 2 Im(b - a)
        R21 = -2 Im(a + b)             R22 = 2 Re(b - a)
        R33 = d1 - d2 - d3 + d4
    """
    s = state
    a = complex(s.a)
    b = complex(s.b)
    x = np.array([0.0, 0.0, s.d1 + s.d2 - s.d3 - s.d4])
    y = np.array([0.0, 0.0, s.d1 - s.d2 + s.d3 - s.d4])
    R = np.zeros((3, 3))
    R[0, 0] = 2.0 * (a + b).real
    R[0, 1] = 2.0 * (b - a).imag
    R[1, 0] = -2.0 * (a + b).imag
    R[1, 1] = 2.0 * (b - a).real
    R[2, 2] = s.d1 - s.d2 - s.d3 + s.d4
    return BlochDecomposition(x=x, y=y, R=R)


def gmqd(state: TwoQubitXState, normalized: bool = True) -> float:
    """Geometric discord (measurement on A); doubled when ``normalized``.

    K = x x^T + R R^T is block diagonal for X states, so its largest
    eigenvalue comes from a 2x2 block and the scalar x3^2 + R33^2.
    """
    bloch = bloch_decompose(state)
    x, R = bloch.x, bloch.R
    top = R[:2, :2]
    k_block = top @ top.T
    tr = k_block[0, 0] + k_block[1, 1]
    det_gap = math.sqrt(max((k_block[0, 0] - k_block[1, 1]) ** 2 + 4.0 * k_block[0, 1] ** 2, 0.0))
    k_max = max(0.5 * (tr + det_gap), x[2] ** 2 + R[2, 2] ** 2)
    value = 0.25 * (float(x @ x) + float(np.sum(R * R)) - k_max)
    return 2.0 * value if normalized else value
