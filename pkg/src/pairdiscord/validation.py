"""Golden fixtures and the oracle check suite behind ``pairdiscord validate``.

Fixtures are flat text, one ``key value`` record per line, values with 12
significant digits. Keys read ``module.operation.parameters[.component]``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from pathlib import Path

import mpmath
import numpy as np

from . import oracle
from .channels import ChannelKind, apply_two_qubit, evolved_state_analytic, kraus_set
from .sweep import evaluate, fmt
from .twisting import TwistingParams, expectations, reduced_state, twisting_state
from .xstate import TwoQubitXState, gmqd, quantum_discord

__all__ = [
    "FIXTURE_PATH",
    "CheckResult",
    "compute_fixtures",
    "format_fixtures",
    "read_fixtures",
    "write_fixtures",
    "qd_plateau",
    "run_checks",
]

FIXTURE_PATH = Path(__file__).with_name("fixtures.txt")
FIXTURE_RTOL = 1e-9

GOLDEN = TwistingParams(12, 0.1 * math.pi)
THETA_TAG = "theta=0.1pi"


def _state_entries(prefix: str, s: TwoQubitXState) -> dict[str, float]:
    return {
        f"{prefix}.d1": s.d1,
        f"{prefix}.d2": s.d2,
        f"{prefix}.d3": s.d3,
        f"{prefix}.d4": s.d4,
        f"{prefix}.a_re": complex(s.a).real,
        f"{prefix}.a_im": complex(s.a).imag,
        f"{prefix}.b_re": complex(s.b).real,
        f"{prefix}.b_im": complex(s.b).imag,
    }


def qd_plateau(theta: float = 0.1 * math.pi, step: int = 10, tol: float = 1e-3, n_max: int = 100_000):
    """Smallest N with |qd(N + step) - qd(N)| < tol, and qd there.

    Uses the closed-form twisting moments; the exact register simulation
    cannot reach the N where the plateau sets in.
    """
    def qd(n):
        return quantum_discord(twisting_state(n, theta)).qd

    prev = qd(2)
    for n in range(2, n_max):
        nxt = qd(n + step)
        if abs(nxt - prev) < tol:
            return n, prev
        prev = qd(n + 1)
    raise RuntimeError("no plateau found")


def compute_fixtures() -> dict[str, float]:
    """Recompute every golden value from the oracles."""
    out: dict[str, float] = {}
    mpmath.mp.dps = 40
    x = mpmath.mpf("0.25")
    out["xstate.binary_entropy.x=0.25"] = float(-x * mpmath.log(x, 2) - (1 - x) * mpmath.log(1 - x, 2))
    out["channels.p_of_t.gamma_t=3.7"] = float(mpmath.exp(-mpmath.mpf("3.7")))

    exact = oracle.exact_reduced_state(GOLDEN)
    out.update(_state_entries(f"oracle.exact_reduced_state.n=12.{THETA_TAG}", exact))
    rho = exact.to_matrix()
    for i, w in enumerate(np.linalg.eigvalsh(rho)[::-1], start=1):
        out[f"oracle.dense_eigenvalues.n=12.{THETA_TAG}.sorted{i}"] = float(w)
    out[f"oracle.discord_bruteforce.n=12.{THETA_TAG}"] = oracle.discord_bruteforce(exact)
    out[f"oracle.gmqd_bruteforce.n=12.{THETA_TAG}"] = oracle.gmqd_bruteforce(exact)

    ad = oracle.exact_channel_reduced(GOLDEN, ChannelKind.AMPLITUDE_DAMPING, 0.7)
    out.update(_state_entries(f"oracle.exact_channel_reduced.n=12.{THETA_TAG}.amplitude_damping.p=0.7", ad))
    dep = oracle.exact_channel_reduced(TwistingParams(6, 0.3 * math.pi), ChannelKind.DEPOLARIZING, 0.5, full_register=True)
    out.update(_state_entries("oracle.exact_channel_reduced_full.n=6.theta=0.3pi.depolarizing.p=0.5", dep))

    n_plateau, qd_value = qd_plateau()
    out[f"twisting.qd_plateau.{THETA_TAG}.step=10.tol=1e-3.n"] = n_plateau
    out[f"twisting.qd_plateau.{THETA_TAG}.step=10.tol=1e-3.qd"] = qd_value
    for n in (2, 3, 30, 40):
        out[f"xstate.quantum_discord.n={n}.{THETA_TAG}"] = quantum_discord(twisting_state(n, GOLDEN.theta)).qd

    gammas = np.linspace(0.0, 5.0, 100)
    _, rep = evaluate(ChannelKind.PHASE_FLIP, 12, GOLDEN.theta, math.log(2.0))
    out[f"sweep.phase_flip.n=12.{THETA_TAG}.gamma_t=ln2.qd"] = rep.qd
    _, rep = evaluate(ChannelKind.PHASE_FLIP, 12, GOLDEN.theta, 5.0)
    out[f"sweep.phase_flip.n=12.{THETA_TAG}.gamma_t=5.qd"] = rep.qd
    gaps = []
    for g in gammas:
        _, rep = evaluate(ChannelKind.DEPOLARIZING, 12, GOLDEN.theta, float(g))
        gaps.append(rep.qd - rep.gmqd_normalized)
    out[f"sweep.depolarizing.n=12.{THETA_TAG}.min_qd_minus_gmqd"] = min(gaps)
    out[f"sweep.depolarizing.n=12.{THETA_TAG}.argmin_gamma_t"] = float(gammas[int(np.argmin(gaps))])
    return out


def format_fixtures(values: dict[str, float]) -> str:
    return "".join(f"{key} {fmt(values[key])}\n" for key in sorted(values))


def write_fixtures(values: dict[str, float], path: str | Path = FIXTURE_PATH) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_fixtures(values))
    return path


def read_fixtures(path: str | Path = FIXTURE_PATH) -> dict[str, float]:
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'key value', got {line!r}")
        values[parts[0]] = float(parts[1])
    return values


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    gating: bool = True

    def line(self) -> str:
        tag = "PASS" if self.ok else ("FAIL" if self.gating else "KNOWN")
        return f"{tag} {self.name}: {self.detail}"


def _entry_diff(s: TwoQubitXState, t: TwoQubitXState) -> float:
    return max(
        abs(complex(u) - complex(v))
        for u, v in zip((s.d1, s.d2, s.d3, s.d4, s.a, s.b), (t.d1, t.d2, t.d3, t.d4, t.a, t.b))
    )


def _check_fixtures(path: Path) -> list[CheckResult]:
    stored = read_fixtures(path)
    fresh = compute_fixtures()
    results = []
    missing = sorted(set(fresh) - set(stored))
    extra = sorted(set(stored) - set(fresh))
    if missing or extra:
        results.append(CheckResult("fixtures.keys", False, f"missing {missing} unexpected {extra}"))
    bad = []
    for key in sorted(set(fresh) & set(stored)):
        want, got = stored[key], fresh[key]
        if abs(want - got) > FIXTURE_RTOL * max(1.0, abs(want)):
            bad.append(f"{key} stored {fmt(want)} recomputed {fmt(got)}")
    if bad:
        results.extend(CheckResult("fixtures.value", False, b) for b in bad)
    else:
        results.append(CheckResult("fixtures", True, f"{len(stored)} values reproduce within rel {FIXTURE_RTOL:g}"))
    return results


def _check_kraus() -> CheckResult:
    worst = max(
        kraus_set(kind, p).completeness_error() for kind in ChannelKind for p in np.linspace(0.0, 1.0, 101)
    )
    return CheckResult("channels.completeness", worst <= 1e-12, f"max |sum E^dag E - I| = {worst:.2e}")


def _analytic_grid():
    pairs = [(n, th) for n in (2, 3, 4, 6, 8, 10, 12, 16, 20, 25) for th in (0.1 * math.pi, 1.3)]
    return pairs, np.linspace(0.0, 1.0, 11)


def _check_analytic() -> list[CheckResult]:
    pairs, ps = _analytic_grid()
    results = []
    for kind in ChannelKind:
        worst = 0.0
        for n, th in pairs:
            exp = expectations(TwistingParams(n, th))
            base = reduced_state(exp)
            for p in ps:
                worst = max(worst, _entry_diff(evolved_state_analytic(kind, exp, p), apply_two_qubit(kraus_set(kind, p), base)))
        ok = worst <= 1e-11
        gating = kind is not ChannelKind.DEPOLARIZING
        results.append(CheckResult(f"channels.analytic_vs_kraus.{kind.value}", ok, f"max entry diff {worst:.2e}", gating))
    return results


def _check_twisting_oracle() -> list[CheckResult]:
    thetas = np.linspace(0.0, 2.0 * math.pi, 33)
    worst = 0.0
    for n in range(2, 13):
        for th in thetas:
            params = TwistingParams(n, float(th))
            worst = max(worst, _entry_diff(oracle.exact_reduced_state(params), reduced_state(expectations(params))))
    results = [CheckResult("twisting.exact_vs_moments", worst <= 1e-10, f"N 2..12 x 33 theta, max diff {worst:.2e}")]
    worst = 0.0
    for n in range(2, 9):
        for th in thetas[::4]:
            params = TwistingParams(n, float(th))
            worst = max(worst, _entry_diff(oracle.exact_reduced_state(params), oracle.exact_reduced_state_full(params)))
    results.append(CheckResult("oracle.dicke_vs_full_register", worst <= 1e-10, f"N 2..8, max diff {worst:.2e}"))
    worst = 0.0
    for n in range(2, oracle.MAX_FULL_REGISTER_N + 1):
        params = TwistingParams(n, 0.3 * math.pi)
        for kind in ChannelKind:
            for p in (0.2, 0.5, 0.9):
                a = oracle.exact_channel_reduced(params, kind, p)
                b = oracle.exact_channel_reduced(params, kind, p, full_register=True)
                worst = max(worst, _entry_diff(a, b))
    results.append(CheckResult("oracle.channel_commutes_with_trace", worst <= 1e-10, f"N 2..6, max diff {worst:.2e}"))
    return results


def _check_measures() -> list[CheckResult]:
    states = [
        twisting_state(n, float(th)) for n in (2, 5, 8, 12) for th in np.linspace(0.0, 2.0 * math.pi, 9)
    ] + oracle.random_x_states(60, seed=11)
    lo, hi, g_worst = math.inf, -math.inf, 0.0
    for s in states:
        gap = quantum_discord(s).qd - oracle.discord_bruteforce(s)
        lo, hi = min(lo, gap), max(hi, gap)
        g_worst = max(g_worst, abs(gmqd(s, normalized=False) - oracle.gmqd_bruteforce(s)))
    return [
        CheckResult("xstate.discord_vs_bruteforce", lo >= -1e-6 and hi <= 3e-3, f"closed - brute in [{lo:.2e}, {hi:.2e}]"),
        CheckResult("xstate.gmqd_vs_bruteforce", g_worst <= 1e-6, f"max |closed - brute| {g_worst:.2e}"),
    ]


def run_checks(fixtures_path: str | Path = FIXTURE_PATH, regenerate: bool = False) -> list[CheckResult]:
    fixtures_path = Path(fixtures_path)
    results = []
    if regenerate:
        write_fixtures(compute_fixtures(), fixtures_path)
    if fixtures_path.exists():
        results.extend(_check_fixtures(fixtures_path))
    else:
        results.append(CheckResult("fixtures", False, f"{fixtures_path} not found; run with --regenerate"))
    results.append(_check_kraus())
    results.extend(_check_analytic())
    results.extend(_check_twisting_oracle())
    results.extend(_check_measures())
    return results


def timed_checks(fixtures_path: str | Path = FIXTURE_PATH, regenerate: bool = False):
    start = time.perf_counter()
    results = run_checks(fixtures_path, regenerate)
    return results, time.perf_counter() - start
