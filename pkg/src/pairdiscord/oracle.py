"""Brute-force reference computations.

Nothing here uses the closed forms in :mod:`pairdiscord.xstate` or the
moment formulas in :mod:`pairdiscord.twisting`; these routines exist to
check them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind, NoiseStrength, apply_single_qubit, apply_two_qubit, kraus_set
from .twisting import TwistingParams
from .xstate import TwoQubitXState

__all__ = [
    "MeasurementDirection",
    "GridSpec",
    "TWIST_RATE",
    "MAX_EXACT_N",
    "MAX_FULL_REGISTER_N",
    "discord_bruteforce",
    "gmqd_bruteforce",
    "dicke_state",
    "full_register_state",
    "exact_reduced_state",
    "exact_reduced_state_full",
    "exact_channel_reduced",
    "von_neumann_entropy",
    "partial_trace_pair",
    "random_x_states",
]

MAX_EXACT_N = 20
MAX_FULL_REGISTER_N = 6

# The moment formulas correspond to exp(-i * TWIST_RATE * theta * Sx^2).
TWIST_RATE = 0.5


@dataclass(frozen=True)
class MeasurementDirection:
    polar: float
    azimuth: float

    def vector(self) -> np.ndarray:
        s = math.sin(self.polar)
        return np.array([s * math.cos(self.azimuth), s * math.sin(self.azimuth), math.cos(self.polar)])


@dataclass(frozen=True)
class GridSpec:
    """Coarse sphere grid, then ``refine_rounds`` local re-grids.

    Refinement starts from each of the ``refine_starts`` lowest local minima
    of the coarse grid, so nearly degenerate basins are all followed. Each
    local window is re-gridded with ``refine_points`` per axis.
    """

    coarse_points: int = 64
    refine_rounds: int = 6
    refine_shrink: float = 0.2
    refine_starts: int = 4
    refine_points: int = 24

    def __post_init__(self):
        if self.coarse_points < 8:
            raise ValueError("coarse_points must be at least 8")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be non-negative")
        if not 0.0 < self.refine_shrink < 1.0:
            raise ValueError("refine_shrink must lie in (0, 1)")
        if self.refine_starts < 1:
            raise ValueError("refine_starts must be at least 1")
        # the next window must still cover one step of the current grid
        if self.refine_points < 2 + 1.0 / self.refine_shrink:
            raise ValueError("refine_points too small for refine_shrink")


_PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def _projectors(polar: np.ndarray, azimuth: np.ndarray) -> np.ndarray:
    """Rank-1 projectors (I + s n.sigma)/2 for s = +1, -1; shape (2, M, 2, 2)."""
    n = np.stack(
        [np.sin(polar) * np.cos(azimuth), np.sin(polar) * np.sin(azimuth), np.cos(polar)],
        axis=-1,
    )
    ndotsig = np.einsum("mk,kij->mij", n, _PAULI)
    eye = np.eye(2)[None]
    return np.stack([0.5 * (eye + ndotsig), 0.5 * (eye - ndotsig)])


def _coarse_minima(values: np.ndarray, count: int) -> list[tuple[int, int]]:
    """Up to ``count`` lowest local minima of a (polar, azimuth) grid.

    Azimuth wraps around; each pole is a single point, represented by its
    azimuth-0 entry.
    """
    v = values.copy()
    v[0, 1:] = np.inf
    v[-1, 1:] = np.inf
    padded = np.pad(v, ((1, 1), (0, 0)), constant_values=np.inf)
    is_min = np.isfinite(v)
    for dp in (-1, 0, 1):
        shifted_rows = padded[1 + dp : padded.shape[0] - 1 + dp]
        for da in (-1, 0, 1):
            if dp == 0 and da == 0:
                continue
            is_min &= v <= np.roll(shifted_rows, -da, axis=1)
    # a pole's neighbours are the whole adjacent ring
    is_min[0, 0] = v[0, 0] <= values[1].min()
    is_min[-1, 0] = v[-1, 0] <= values[-2].min()
    idx = np.argwhere(is_min)
    order = sorted(range(len(idx)), key=lambda i: (v[tuple(idx[i])], idx[i][0], idx[i][1]))
    picks = [tuple(int(x) for x in idx[i]) for i in order[:count]]
    if not picks:
        picks = [tuple(int(x) for x in np.unravel_index(int(np.argmin(values)), values.shape))]
    return picks


def _grid_minimize(objective, grid: GridSpec) -> tuple[float, MeasurementDirection]:
    """Coarse grid over the sphere, then repeated local re-gridding.

    A refinement window shrinks only when its best point is interior; when
    the best point sits on the window edge the window is re-centred at the
    same size instead, so flat ridges can be followed past the first window.
    Ties go to the first point in (polar, azimuth) lexicographic order.
    """
    pts = grid.coarse_points
    polar_axis = np.linspace(0.0, math.pi, pts)
    az_axis = 2.0 * math.pi * np.arange(pts) / pts
    pp, aa = np.meshgrid(polar_axis, az_axis, indexing="ij")
    values = objective(pp.ravel(), aa.ravel()).reshape(pts, pts)
    i = int(np.argmin(values))
    best = float(values.ravel()[i])
    best_dir = (float(pp.ravel()[i]), float(aa.ravel()[i]))
    max_moves = 8 * grid.refine_rounds + 16
    fine = grid.refine_points

    for ip, ia in _coarse_minima(values, grid.refine_starts):
        bp, ba = float(polar_axis[ip]), float(az_axis[ia])
        local = float(values[ip, ia])
        half_p = 0.5 * math.pi * grid.refine_shrink
        half_a = math.pi * grid.refine_shrink
        shrinks = moves = 0
        while shrinks < grid.refine_rounds and moves < max_moves:
            p_axis = np.linspace(bp - half_p, bp + half_p, fine)
            a_axis = np.linspace(ba - half_a, ba + half_a, fine)
            rp, ra = np.meshgrid(np.clip(p_axis, 0.0, math.pi), np.mod(a_axis, 2.0 * math.pi), indexing="ij")
            vals = objective(rp.ravel(), ra.ravel()).reshape(fine, fine)
            jp, ja = np.unravel_index(int(np.argmin(vals)), vals.shape)
            on_edge = False
            if vals[jp, ja] < local:
                local = float(vals[jp, ja])
                bp, ba = float(rp[jp, ja]), float(ra[jp, ja])
                polar_edge = (jp == 0 and p_axis[0] > 0.0) or (jp == fine - 1 and p_axis[-1] < math.pi)
                on_edge = polar_edge or ja in (0, fine - 1)
            if on_edge:
                moves += 1
            else:
                half_p *= grid.refine_shrink
                half_a *= grid.refine_shrink
                shrinks += 1
        if local < best or (local == best and (bp, ba) < best_dir):
            best, best_dir = local, (bp, ba)
    return best, MeasurementDirection(*best_dir)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits from a dense Hermitian eigensolver."""
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


def _tensor(state: TwoQubitXState | np.ndarray) -> np.ndarray:
    rho = state.to_matrix() if isinstance(state, TwoQubitXState) else np.asarray(state, dtype=complex)
    return rho


def _weighted_entropy(sigma: np.ndarray) -> np.ndarray:
    """p S(sigma/p) for a stack of unnormalized 2x2 Hermitian matrices."""
    tr = (sigma[..., 0, 0] + sigma[..., 1, 1]).real
    half_gap = np.sqrt(0.25 * (sigma[..., 0, 0] - sigma[..., 1, 1]).real ** 2 + np.abs(sigma[..., 0, 1]) ** 2)
    mu = np.stack([0.5 * tr + half_gap, 0.5 * tr - half_gap])
    mu = np.clip(mu, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        mu_log = np.where(mu > 0, mu * np.log2(np.where(mu > 0, mu, 1.0)), 0.0)
        tr_log = np.where(tr > 0, tr * np.log2(np.where(tr > 0, tr, 1.0)), 0.0)
    return -mu_log.sum(axis=0) + tr_log


def conditional_entropy_after_b(rho: np.ndarray, polar: np.ndarray, azimuth: np.ndarray) -> np.ndarray:
    """sum_k p_k S(rho_A|k) after measuring B along each direction."""
    # sigma_k[a, a'] = sum_{b, b'} rho[a b, a' b'] Pi_k[b', b]
    t = rho.reshape(2, 2, 2, 2).transpose(0, 2, 3, 1).reshape(4, 4)
    proj = _projectors(polar, azimuth).reshape(-1, 4)
    sigma = (proj @ t.T).reshape(2, -1, 2, 2)
    return _weighted_entropy(sigma).sum(axis=0)


def discord_bruteforce(state: TwoQubitXState, grid: GridSpec = GridSpec()) -> float:
    """Discord by searching rank-1 projective measurements on B.

    A sampled direction can only under-estimate the best classical
    correlation, so the result approaches the true value from above.
    """
    rho = _tensor(state)
    t = rho.reshape(2, 2, 2, 2)
    rho_b = np.einsum("ibic->bc", t)
    s_b = von_neumann_entropy(rho_b)
    s_ab = von_neumann_entropy(rho)
    best, _ = _grid_minimize(lambda p, a: conditional_entropy_after_b(rho, p, a), grid)
    return s_b - s_ab + best


def dephasing_distance_a(rho: np.ndarray, polar: np.ndarray, azimuth: np.ndarray) -> np.ndarray:
    """Squared Hilbert-Schmidt distance from rho to its dephased copy in each A basis.

    For rank-1 projectors the dephased state is sum_k Pi_k (x) M_k with
    M_k = Tr_A[(Pi_k (x) I) rho], and it is the orthogonal projection of rho,
    so the distance is ||rho||^2 - sum_k ||M_k||^2.
    """
    # M_k[b, b'] = sum_{a, a'} Pi_k[a', a] rho[a b, a' b']
    t = rho.reshape(2, 2, 2, 2).transpose(1, 3, 2, 0).reshape(4, 4)
    proj = _projectors(polar, azimuth).reshape(-1, 4)
    m = proj @ t.T
    kept = np.sum(m.real**2 + m.imag**2, axis=1).reshape(2, -1).sum(axis=0)
    return float(np.sum(np.abs(rho) ** 2)) - kept


def gmqd_bruteforce(state: TwoQubitXState, grid: GridSpec = GridSpec()) -> float:
    """Unnormalized geometric discord by searching measurement bases on A."""
    rho = _tensor(state)
    best, _ = _grid_minimize(lambda p, a: dephasing_distance_a(rho, p, a), grid)
    return best


def _check_exact_n(n: int) -> None:
    if n > MAX_EXACT_N:
        raise ValueError(f"exact simulation supports N <= {MAX_EXACT_N}, got {n}")


def dicke_state(params: TwistingParams) -> np.ndarray:
    """Twisted state in the symmetric subspace, indexed by number of up spins."""
    _check_exact_n(params.n)
    n = params.n
    k = np.arange(n)
    raise_amp = np.sqrt((n - k) * (k + 1.0))
    sx = np.zeros((n + 1, n + 1))
    sx[k + 1, k] = 0.5 * raise_amp
    sx[k, k + 1] = 0.5 * raise_amp
    m, v = np.linalg.eigh(sx)
    start = np.zeros(n + 1)
    start[0] = 1.0
    phase = np.exp(-1j * TWIST_RATE * params.theta * m**2)
    return v @ (phase * (v.T @ start))


def _pair_from_dicke(c: np.ndarray, n: int) -> np.ndarray:
    """Two-qubit reduced matrix of a symmetric state with Dicke amplitudes c."""
    norm = n * (n - 1.0)
    k = np.arange(n + 1)
    dd = np.sqrt((n - k) * (n - k - 1.0) / norm)
    mixed = np.sqrt(k * (n - k) / norm)
    uu = np.sqrt(k * (k - 1.0) / norm)
    rho = np.zeros((4, 4), dtype=complex)
    for j in range(n - 1):
        v = np.zeros(4, dtype=complex)
        v[3] = c[j] * dd[j]
        v[1] = v[2] = c[j + 1] * mixed[j + 1]
        v[0] = c[j + 2] * uu[j + 2]
        rho += np.outer(v, v.conj())
    return rho


def exact_reduced_state(params: TwistingParams, tol: float = 1e-10) -> TwoQubitXState:
    """Pair state of the twisted register via the symmetric (N+1)-dim subspace."""
    rho = _pair_from_dicke(dicke_state(params), params.n)
    return TwoQubitXState.from_matrix(rho, tol=tol)


_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)


def _hadamard_all(psi: np.ndarray, n: int) -> np.ndarray:
    t = psi.reshape((2,) * n)
    for q in range(n):
        t = np.moveaxis(np.tensordot(_HADAMARD, t, axes=([1], [q])), 0, q)
    return t.reshape(-1)


def full_register_state(params: TwistingParams) -> np.ndarray:
    """Twisted state as a 2^N vector; qubit 0 is the most significant bit.

    Sx^2 is diagonal in the sigma_x product basis, so the evolution is a
    Hadamard layer, a diagonal phase and another Hadamard layer.
    """
    _check_exact_n(params.n)
    n = params.n
    psi = np.zeros(2**n, dtype=complex)
    psi[-1] = 1.0
    bits = (np.arange(2**n)[:, None] >> np.arange(n)[None, :]) & 1
    m = 0.5 * (n - 2.0 * bits.sum(axis=1))
    psi = _hadamard_all(psi, n)
    psi = psi * np.exp(-1j * TWIST_RATE * params.theta * m**2)
    return _hadamard_all(psi, n)


def partial_trace_pair(rho: np.ndarray, n: int) -> np.ndarray:
    """Keep qubits 0 and 1 of an n-qubit density matrix."""
    rest = 2 ** (n - 2)
    return np.trace(rho.reshape(4, rest, 4, rest), axis1=1, axis2=3)


def exact_reduced_state_full(params: TwistingParams, tol: float = 1e-10) -> TwoQubitXState:
    """Pair state of the twisted register via the full 2^N state vector."""
    psi = full_register_state(params)
    mat = psi.reshape(4, -1)
    return TwoQubitXState.from_matrix(mat @ mat.conj().T, tol=tol)


def exact_channel_reduced(
    params: TwistingParams,
    kind: ChannelKind,
    p: float | NoiseStrength,
    full_register: bool = False,
) -> TwoQubitXState:
    """Noisy pair state of the twisted register.

    Local trace-preserving channels on the discarded qubits do not change the
    pair state, so by default the exact pair state is evolved directly. With
    ``full_register`` (N <= 6) the channel acts on every qubit of the 2^N
    density matrix before the partial trace instead.
    """
    kraus = kraus_set(kind, p)
    if not full_register:
        return apply_two_qubit(kraus, exact_reduced_state(params))
    n = params.n
    if n > MAX_FULL_REGISTER_N:
        raise ValueError(f"full-register evolution supports N <= {MAX_FULL_REGISTER_N}, got {n}")
    psi = full_register_state(params)
    rho = np.outer(psi, psi.conj())
    for q in range(n):
        rho = apply_single_qubit(kraus, rho, q, n)
    return TwoQubitXState.from_matrix(partial_trace_pair(rho, n), tol=1e-10)


def random_x_states(count: int, seed: int = 0) -> list[TwoQubitXState]:
    """Valid X states with Dirichlet populations and random coherences.

    Each coherence modulus is drawn uniformly up to its positivity bound, with
    a uniform phase, so the whole X-state polytope is covered.
    """
    rng = np.random.default_rng(seed)
    states = []
    for _ in range(count):
        d = rng.dirichlet(np.ones(4))
        a = math.sqrt(d[0] * d[3]) * rng.uniform() * np.exp(2j * math.pi * rng.uniform())
        b = math.sqrt(d[1] * d[2]) * rng.uniform() * np.exp(2j * math.pi * rng.uniform())
        states.append(TwoQubitXState(*(float(v) for v in d), a=complex(a), b=complex(b)))
    return states
