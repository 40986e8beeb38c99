"""Command-line interface: ``point``, ``sweep`` and ``validate``.

Angles accept a ``pi`` suffix such as ``0.1pi`` or ``2pi``;
a bare number is taken in radians. Settings come from, in decreasing
precedence, command-line flags, a ``key = value`` config file given with
``--config``, and built-in defaults matching the figure grids.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import sweep as sweep_mod
from .channels import CONVENTIONS, ChannelKind, kraus_parameter
from .sweep import GammaGrid, SweepSpec, fmt
from .validation import FIXTURE_PATH, run_checks

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    t = str(text).strip().lower().replace("π", "pi")
    try:
        if t.endswith("pi"):
            coeff = t[:-2].strip()
            sign = {"": 1.0, "+": 1.0, "-": -1.0}
            return (sign[coeff] if coeff in sign else float(coeff)) * math.pi
        return float(t)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}; use e.g. 0.1pi or 0.314") from None


def parse_thetas(text: str) -> tuple[float, ...]:
    """Comma list of angles, or START:STOP:COUNT for an inclusive linspace."""
    out: list[float] = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise UsageError(f"theta range {item!r} must be START:STOP:COUNT")
            count = _int(parts[2], "theta count")
            if count < 1:
                raise UsageError("theta count must be positive")
            out.extend(float(v) for v in np.linspace(parse_angle(parts[0]), parse_angle(parts[1]), count))
        else:
            out.append(parse_angle(item))
    if not out:
        raise UsageError("no theta values given")
    return tuple(out)


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def _float(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"{what} must be a number, got {text!r}") from None


def parse_ns(text: str) -> tuple[int, ...]:
    """Comma list of integers, or START:STOP[:STEP] inclusive."""
    out: list[int] = []
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            parts = item.split(":")
            if len(parts) not in (2, 3):
                raise UsageError(f"N range {item!r} must be START:STOP[:STEP]")
            start, stop = _int(parts[0], "N"), _int(parts[1], "N")
            step = _int(parts[2], "N step") if len(parts) == 3 else 1
            if step < 1:
                raise UsageError("N step must be positive")
            out.extend(range(start, stop + 1, step))
        else:
            out.append(_int(item, "N"))
    if not out:
        raise UsageError("no N values given")
    return tuple(out)


def parse_channels(text: str) -> tuple[ChannelKind, ...]:
    if str(text).strip().lower() == "all":
        return tuple(ChannelKind)
    try:
        return tuple(ChannelKind.parse(c) for c in str(text).split(",") if c.strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_gamma_grid(text: str) -> GammaGrid:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"--grid must be START:STOP:POINTS, got {text!r}")
    try:
        return GammaGrid(_float(parts[0], "grid start"), _float(parts[1], "grid stop"), _int(parts[2], "grid points"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def read_config(path: str | Path) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; keys match long flags."""
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror or exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _setting(args, config: dict[str, str], name: str, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config.get(name, default)


def cmd_point(args, config) -> int:
    from .sweep import evaluate

    channel = _setting(args, config, "channel", "none")
    kind = None if str(channel).lower() in ("none", "") else parse_channels(channel)
    if kind is not None and len(kind) != 1:
        raise UsageError("point takes a single channel")
    kind = kind[0] if kind else None
    n = _int(str(_setting(args, config, "n", "12")), "N")
    theta = parse_angle(_setting(args, config, "theta", "0.1pi"))
    gamma_t = _float(str(_setting(args, config, "gamma_t", "0")), "gamma_t")
    convention = _setting(args, config, "convention", "physical")
    method = _setting(args, config, "method", "kraus")
    try:
        state, rep = evaluate(kind, n, theta, gamma_t, convention, method)
        kp = kraus_parameter(kind, gamma_t, convention).p if kind is not None else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [
        f"channel {kind.value if kind else 'none'}",
        f"n {n}",
        f"theta {fmt(theta)}",
        f"gamma_t {fmt(gamma_t)}",
        f"p {fmt(math.exp(-gamma_t))}",
    ]
    if kp is not None:
        lines.append(f"kraus_p {fmt(kp)}")
    lines += [
        f"qd {fmt(rep.qd)}",
        f"gmqd_normalized {fmt(rep.gmqd_normalized)}",
        f"classical {fmt(rep.classical)}",
        f"mutual_info {fmt(rep.mutual_info)}",
        f"q1 {fmt(rep.q1)}",
        f"q2 {fmt(rep.q2)}",
        f"rho11 {fmt(state.d1)}",
        f"rho22 {fmt(state.d2)}",
        f"rho33 {fmt(state.d3)}",
        f"rho44 {fmt(state.d4)}",
        f"rho14 {fmt(complex(state.a).real)} {fmt(complex(state.a).imag)}",
        f"rho23 {fmt(complex(state.b).real)} {fmt(complex(state.b).imag)}",
    ]
    print("\n".join(lines))
    return EXIT_OK


def build_spec(args, config) -> SweepSpec:
    figure = _setting(args, config, "figure", None)
    base = sweep_mod.figure_spec(_int(str(figure), "figure")) if figure is not None else sweep_mod.figure_spec(1)
    channels = _setting(args, config, "channel", None)
    ns = _setting(args, config, "n", None)
    thetas = _setting(args, config, "theta", None)
    grid = _setting(args, config, "grid", None)
    measures = _setting(args, config, "measures", None)
    try:
        return SweepSpec(
            channels=parse_channels(channels) if channels is not None else base.channels,
            n_values=parse_ns(ns) if ns is not None else base.n_values,
            theta_values=parse_thetas(thetas) if thetas is not None else base.theta_values,
            gamma_t=parse_gamma_grid(grid) if grid is not None else base.gamma_t,
            measures=tuple(m.strip() for m in measures.split(",")) if measures is not None else base.measures,
            convention=_setting(args, config, "convention", base.convention),
            method=_setting(args, config, "method", base.method),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _flag(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ("1", "true", "yes", "on")


def cmd_sweep(args, config) -> int:
    spec = build_spec(args, config)
    out = _setting(args, config, "out", None)
    if out is None:
        raise UsageError("sweep needs --out PATH")
    workers = _int(str(_setting(args, config, "workers", "1")), "workers")
    rows = sweep_mod.run_sweep(spec, workers=workers)
    try:
        path = sweep_mod.write_csv(rows, out)
        svgs = sweep_mod.write_svgs(rows, spec, out) if _flag(_setting(args, config, "svg", False)) else []
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(f"wrote {len(rows)} rows to {path}")
    if svgs:
        print(f"wrote {len(svgs)} SVG plots next to {path}")
    return EXIT_OK


def cmd_validate(args, config) -> int:
    fixtures = _setting(args, config, "fixtures", str(FIXTURE_PATH))
    results = run_checks(fixtures, regenerate=_flag(args.regenerate))
    for r in results:
        print(r.line())
    failed = [r for r in results if r.gating and not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed" + (f", {len(failed)} failed" if failed else ""))
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairdiscord",
        description="Pairwise quantum discord of one-axis twisting states under local noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value settings file (flags override it)")
    common.add_argument("--convention", choices=CONVENTIONS, default=None,
                        help="how gamma_t maps to the Kraus parameter (default: physical)")
    common.add_argument("--method", choices=("kraus", "analytic"), default=None,
                        help="evolve with the Kraus operators or the closed-form channel formulas")

    p = sub.add_parser("point", parents=[common], help="evaluate one parameter point")
    p.add_argument("--channel", help="phase_flip, amplitude_damping, phase_damping, depolarizing or none")
    p.add_argument("--n", help="particle count N (default 12)")
    p.add_argument("--theta", help="twisting angle, e.g. 0.1pi (default 0.1pi)")
    p.add_argument("--gamma-t", dest="gamma_t", help="dimensionless time gamma*t (default 0)")
    p.set_defaults(func=cmd_point)

    s = sub.add_parser("sweep", parents=[common], help="grid sweep to CSV (and SVG)")
    s.add_argument("--figure", help="start from the grid of figure 1, 2 or 3 (default 1)")
    s.add_argument("--channel", help="comma list of channels or 'all'")
    s.add_argument("--n", help="comma list or START:STOP[:STEP]")
    s.add_argument("--theta", help="comma list or START:STOP:COUNT, e.g. 0:2pi:41")
    s.add_argument("--grid", help="gamma_t grid START:STOP:POINTS (default 0:5:100)")
    s.add_argument("--measures", help="measures to plot: qd,gmqd,classical,mutual_info")
    s.add_argument("--out", help="CSV output path")
    s.add_argument("--svg", action="store_const", const=True, default=None, help="also write one SVG per slice")
    s.add_argument("--workers", help="worker processes (default 1)")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("validate", parents=[common], help="run the oracle check suite")
    v.add_argument("--regenerate", action="store_true", help="rewrite the fixtures file first")
    v.add_argument("--fixtures", help=f"fixtures file (default {FIXTURE_PATH})")
    v.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = read_config(args.config) if args.config else {}
        return args.func(args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
