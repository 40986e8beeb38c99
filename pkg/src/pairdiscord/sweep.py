"""Parameter sweeps over (channel, N, theta, gamma_t) with CSV and SVG output."""

from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channels import ChannelKind, evolve, kraus_parameter, p_of_t
from .twisting import TwistingParams, expectations, reduced_state
from .xstate import CorrelationReport, TwoQubitXState, quantum_discord

__all__ = [
    "MEASURES",
    "CSV_HEADER",
    "GammaGrid",
    "SweepSpec",
    "SweepRow",
    "evaluate",
    "run_sweep",
    "rows_to_csv",
    "write_csv",
    "write_svgs",
    "figure_spec",
    "fmt",
]

MEASURES = ("qd", "gmqd", "classical", "mutual_info")
CSV_HEADER = ("channel", "n", "theta", "gamma_t", "p", "qd", "gmqd_normalized", "classical", "mutual_info")


def fmt(x: float) -> str:
    """12 significant digits, lowercase exponent, no negative zero."""
    return format(float(x) + 0.0, ".12g")


@dataclass(frozen=True)
class GammaGrid:
    start: float = 0.0
    stop: float = 5.0
    points: int = 100

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("gamma_t grid bounds must be finite")
        if self.start < 0:
            raise ValueError(f"gamma_t grid must start at >= 0, got {self.start}")
        if self.stop < self.start:
            raise ValueError("gamma_t grid stop must not precede start")
        if self.points < 2:
            raise ValueError(f"gamma_t grid needs at least 2 points, got {self.points}")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepSpec:
    channels: tuple[ChannelKind, ...]
    n_values: tuple[int, ...]
    theta_values: tuple[float, ...]
    gamma_t: GammaGrid = field(default_factory=GammaGrid)
    measures: tuple[str, ...] = MEASURES
    convention: str = "physical"
    method: str = "kraus"

    def __post_init__(self):
        for name in ("channels", "n_values", "theta_values", "measures"):
            if not getattr(self, name):
                raise ValueError(f"sweep {name} must be non-empty")
        for n in self.n_values:
            TwistingParams(n, 0.0)
        for theta in self.theta_values:
            if not math.isfinite(theta):
                raise ValueError(f"theta must be finite, got {theta!r}")
        bad = set(self.measures) - set(MEASURES)
        if bad:
            raise ValueError(f"unknown measures {sorted(bad)}; expected a subset of {MEASURES}")
        if self.method not in ("kraus", "analytic"):
            raise ValueError(f"unknown method {self.method!r}")
        kraus_parameter(ChannelKind.PHASE_FLIP, 0.0, self.convention)

    def slices(self) -> list[tuple[ChannelKind, int, float]]:
        """(channel, n, theta) triples in output order."""
        chans = sorted(set(self.channels), key=lambda k: k.value)
        return list(itertools.product(chans, sorted(set(self.n_values)), sorted(set(self.theta_values))))


@dataclass(frozen=True)
class SweepRow:
    channel: str
    n: int
    theta: float
    gamma_t: float
    p: float
    qd: float
    gmqd_normalized: float
    classical: float
    mutual_info: float

    def cells(self) -> list[str]:
        return [self.channel, str(self.n)] + [
            fmt(getattr(self, name)) for name in CSV_HEADER[2:]
        ]


def evaluate(
    kind: ChannelKind | None,
    n: int,
    theta: float,
    gamma_t: float = 0.0,
    convention: str = "physical",
    method: str = "kraus",
) -> tuple[TwoQubitXState, CorrelationReport]:
    """Noisy pair state and its measures at one parameter point."""
    exp = expectations(TwistingParams(n, theta))
    state = reduced_state(exp)
    if kind is not None:
        strength = kraus_parameter(kind, gamma_t, convention)
        state = evolve(kind, state, exp, strength, method=method)
    else:
        p_of_t(gamma_t)
    return state, quantum_discord(state)


def _slice_rows(args) -> list[SweepRow]:
    kind, n, theta, gammas, convention, method = args
    rows = []
    for g in gammas:
        _, rep = evaluate(kind, n, theta, float(g), convention, method)
        rows.append(
            SweepRow(
                channel=kind.value,
                n=n,
                theta=theta,
                gamma_t=float(g),
                p=math.exp(-float(g)),
                qd=rep.qd,
                gmqd_normalized=float(rep.gmqd_normalized),
                classical=rep.classical,
                mutual_info=rep.mutual_info,
            )
        )
    return rows


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Evaluate every grid point; the row order never depends on ``workers``."""
    gammas = tuple(spec.gamma_t.values())
    jobs = [(k, n, th, gammas, spec.convention, spec.method) for k, n, th in spec.slices()]
    if workers <= 1:
        chunks = map(_slice_rows, jobs)
        return [row for chunk in chunks for row in chunk]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [row for chunk in pool.map(_slice_rows, jobs) for row in chunk]


def rows_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.cells())
    return buf.getvalue()


def write_csv(rows: list[SweepRow], path: str | Path) -> Path:
    path = Path(path)
    try:
        if path.parent != Path(""):
            path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(rows_to_csv(rows))
    except OSError as exc:
        raise OSError(f"cannot write sweep CSV to {path}: {exc.strerror or exc}") from exc
    return path


_COLUMN = {"qd": "qd", "gmqd": "gmqd_normalized", "classical": "classical", "mutual_info": "mutual_info"}
_LABEL = {"qd": "QD", "gmqd": "GMQD (normalized)", "classical": "classical correlation", "mutual_info": "mutual information"}


def write_svgs(rows: list[SweepRow], spec: SweepSpec, out_path: str | Path) -> list[Path]:
    """One line plot per (channel, n, theta) slice, next to ``out_path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_path = Path(out_path)
    stem = out_path.with_suffix("")
    written = []
    by_slice: dict[tuple[str, int, float], list[SweepRow]] = {}
    for row in rows:
        by_slice.setdefault((row.channel, row.n, row.theta), []).append(row)
    with matplotlib.rc_context({"svg.hashsalt": "pairdiscord"}):
        for (channel, n, theta), chunk in by_slice.items():
            fig, ax = plt.subplots(figsize=(5, 3.5))
            g = [r.gamma_t for r in chunk]
            for m in spec.measures:
                ax.plot(g, [getattr(r, _COLUMN[m]) for r in chunk], label=_LABEL[m])
            ax.set_xlabel(r"$\gamma t$")
            ax.set_ylabel(", ".join(_LABEL[m] for m in spec.measures))
            ax.set_title(f"{channel}, N={n}, theta={theta / math.pi:.4g} pi")
            ax.legend(fontsize="small")
            fig.tight_layout()
            target = Path(f"{stem}_{channel}_n{n}_theta{theta / math.pi:.4g}pi.svg")
            try:
                fig.savefig(target, format="svg", metadata={"Date": None})
            except OSError as exc:
                raise OSError(f"cannot write SVG to {target}: {exc.strerror or exc}") from exc
            finally:
                plt.close(fig)
            written.append(target)
    return written


ALL_CHANNELS = tuple(ChannelKind)


def figure_spec(number: int, points: int = 100) -> SweepSpec:
    """Sweep grids behind the three dynamics figures.

    1: gamma_t and N at theta = 0.1 pi; 2: gamma_t and theta at N = 12;
    3: gamma_t at theta = 0.1 pi, N = 12 (QD against GMQD).
    """
    gamma = GammaGrid(0.0, 5.0, points)
    if number == 1:
        return SweepSpec(ALL_CHANNELS, tuple(range(2, 21, 2)), (0.1 * math.pi,), gamma)
    if number == 2:
        thetas = tuple(float(t) for t in np.linspace(0.0, 2.0 * math.pi, 41))
        return SweepSpec(ALL_CHANNELS, (12,), thetas, gamma)
    if number == 3:
        return SweepSpec(ALL_CHANNELS, (12,), (0.1 * math.pi,), gamma, measures=("qd", "gmqd"))
    raise ValueError(f"no figure {number}; expected 1, 2 or 3")
