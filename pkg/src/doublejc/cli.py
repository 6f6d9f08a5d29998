"""Command-line front end.

Subcommands::

    doublejc invariants AMPFILE
    doublejc evolve  [sweep options] --out series.csv
    doublejc surface [sweep options] --out grid.csv --svg tau4.svg
    doublejc verify  [sweep options]

Exit status is 0 on success, 1 when ``verify`` fails and 2 on usage, parse
or I/O errors.
"""
from __future__ import annotations

import argparse
import io
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import errata
from .dynamics import InitialStateSpec, ModelParams, check_angles, family_state
from .invariants import compute_invariants
from .oracle import FockTruncation, align_phase, fidelity_up_to_phase, oracle_state
from .states import ZeroVector, make_state

CSV_COLUMNS = (
    "t", "alpha", "beta", "re_I1", "im_I1", "re_I2", "im_I2", "re_I3", "im_I3",
    "re_I4", "im_I4", "re_D4", "im_D4", "tau4", "leakage",
)
VERIFY_TOL = 1e-10


class ParseError(ValueError):
    def __init__(self, msg, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            loc += ": "
        super().__init__(loc + msg)
        self.line = line
        self.column = column


def fmt(x: float) -> str:
    return format(float(x), ".17g")


# --------------------------------------------------------------------------- #
#                                  config                                     #
# --------------------------------------------------------------------------- #

@dataclass(frozen=True)
class SweepConfig:
    family: str = "phi"
    params: ModelParams = field(default_factory=ModelParams)
    t_start: float = 0.0
    t_stop: float = 2 * np.pi
    t_steps: int = 101
    alpha_start: float = np.pi / 4
    alpha_stop: float = np.pi / 4
    alpha_steps: int = 1
    beta: float = 0.0
    nmax: int = 2

    def __post_init__(self):
        for axis in ("t", "alpha"):
            start, stop, steps = (getattr(self, f"{axis}_{k}") for k in ("start", "stop", "steps"))
            if steps < 1 or (steps == 1 and start != stop):
                raise ValueError(f"{axis}: a swept axis needs at least 2 steps")
        check_angles(self.alpha_start, self.beta)
        check_angles(self.alpha_stop, self.beta)
        if self.family not in ("phi", "psi", "both"):
            raise ValueError(f"unknown family {self.family!r}")
        FockTruncation(self.nmax)

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_stop, self.t_steps)

    @property
    def alphas(self) -> np.ndarray:
        return np.linspace(self.alpha_start, self.alpha_stop, self.alpha_steps)

    @property
    def families(self) -> tuple[str, ...]:
        return ("phi", "psi") if self.family == "both" else (self.family,)


# flag name -> (SweepConfig / ModelParams attribute, type)
_PARAM_KEYS = {
    "nu-a": "nu_A", "nu-b": "nu_B", "omega-a": "omega_A", "omega-b": "omega_B",
    "g-a": "g_A", "g-b": "g_B",
}
_SWEEP_KEYS = {
    "family": ("family", str), "beta": ("beta", float), "nmax": ("nmax", int),
    "t-start": ("t_start", float), "t-stop": ("t_stop", float), "t-steps": ("t_steps", int),
    "alpha-start": ("alpha_start", float), "alpha-stop": ("alpha_stop", float),
    "alpha-steps": ("alpha_steps", int),
}


def read_config_file(path) -> dict[str, str]:
    """``key = value`` lines, ``#`` comments. Keys are the long flag names."""
    known = set(_PARAM_KEYS) | set(_SWEEP_KEYS) | {"alpha"}
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-").lower()
        if key not in known:
            raise ParseError(f"unknown key {key!r}", lineno)
        out[key] = value
    return out


def build_config(values: dict, base: SweepConfig) -> SweepConfig:
    """Apply string/number overrides keyed by flag name onto ``base``."""
    pkw, skw = {}, {}
    for key, value in values.items():
        if value is None:
            continue
        if key in _PARAM_KEYS:
            pkw[_PARAM_KEYS[key]] = float(value)
        elif key in _SWEEP_KEYS:
            attr, typ = _SWEEP_KEYS[key]
            skw[attr] = typ(value)
        elif key == "alpha":
            a = float(value)
            skw.update(alpha_start=a, alpha_stop=a, alpha_steps=1)
    params = replace(base.params, **pkw)
    return replace(base, params=params, **skw)


# --------------------------------------------------------------------------- #
#                                evaluation                                   #
# --------------------------------------------------------------------------- #

def evaluate_point(family: str, params: ModelParams, alpha: float, beta: float,
                   t: float, trunc: FockTruncation) -> tuple[float, ...]:
    inv = compute_invariants(family_state(family, params, alpha, beta, t))
    _, leak = oracle_state(params, InitialStateSpec(family, alpha, beta), t, trunc)
    return (
        t, alpha, beta,
        inv.I1.real, inv.I1.imag, inv.I2.real, inv.I2.imag,
        inv.I3.real, inv.I3.imag, inv.I4.real, inv.I4.imag,
        inv.D4.real, inv.D4.imag, inv.tau4, leak,
    )


def run_sweep(cfg: SweepConfig) -> list[tuple[float, ...]]:
    """Rows ordered with t outer and alpha inner."""
    if cfg.family == "both":
        raise ValueError("a sweep needs a single family")
    trunc = FockTruncation(cfg.nmax)
    return [
        evaluate_point(cfg.family, cfg.params, float(a), cfg.beta, float(t), trunc)
        for t in cfg.times for a in cfg.alphas
    ]


def rows_to_csv(rows) -> str:
    buf = io.StringIO(newline="")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def tau4_grid(rows, cfg: SweepConfig) -> np.ndarray:
    """``grid[i_alpha, i_t]`` of tau4 taken from sweep rows."""
    col = CSV_COLUMNS.index("tau4")
    flat = np.array([r[col] for r in rows])
    return flat.reshape(cfg.t_steps, cfg.alpha_steps).T


@dataclass
class FamilyVerification:
    family: str
    points: int
    min_fidelity: float
    max_invariant_dev: float
    max_leakage: float

    @property
    def passed(self) -> bool:
        return (self.min_fidelity >= 1 - VERIFY_TOL
                and self.max_invariant_dev < VERIFY_TOL
                and self.max_leakage < VERIFY_TOL)


def verify_family(family: str, cfg: SweepConfig, point_rows=None) -> FamilyVerification:
    trunc = FockTruncation(cfg.nmax)
    min_fid, max_dev, max_leak, n = 1.0, 0.0, 0.0, 0
    for t in cfg.times:
        for a in cfg.alphas:
            t, a = float(t), float(a)
            closed = family_state(family, cfg.params, a, cfg.beta, t)
            oracle, leak = oracle_state(cfg.params, InitialStateSpec(family, a, cfg.beta), t, trunc)
            fid = fidelity_up_to_phase(closed, oracle)
            ic = compute_invariants(closed)
            io_ = compute_invariants(align_phase(closed, oracle))
            dev = max(abs(x - y) for x, y in zip(
                (ic.I1, ic.I2, ic.I3, ic.I4, ic.D4, ic.tau4),
                (io_.I1, io_.I2, io_.I3, io_.I4, io_.D4, io_.tau4)))
            min_fid, max_dev, max_leak = min(min_fid, fid), max(max_dev, dev), max(max_leak, leak)
            n += 1
            if point_rows is not None:
                point_rows.append((family, t, a, fid, dev, leak))
    return FamilyVerification(family, n, min_fid, max_dev, max_leak)


def verify_report(cfg: SweepConfig, point_rows=None):
    """Return ``(passed, report_text)``."""
    lines = ["# oracle cross-validation",
             f"params: {cfg.params}",
             f"grid: t in [{cfg.t_start:.6g}, {cfg.t_stop:.6g}] x {cfg.t_steps}, "
             f"alpha in [{cfg.alpha_start:.6g}, {cfg.alpha_stop:.6g}] x {cfg.alpha_steps}, "
             f"beta = {cfg.beta:.6g}, nmax = {cfg.nmax}"]
    passed = True
    for fam in cfg.families:
        r = verify_family(fam, cfg, point_rows)
        passed &= r.passed
        lines.append(
            f"{fam}: points={r.points} min_fidelity={fmt(r.min_fidelity)} "
            f"max_invariant_dev={r.max_invariant_dev:.3e} max_leakage={r.max_leakage:.3e} "
            f"{'PASS' if r.passed else 'FAIL'}")
    lines.append("")
    lines.append("# printed closed forms vs amplitude-level ground truth")
    lines.append(f"{'entry':<24}{'points':>8}{'max |dev|':>14}{'at gA=gB=1':>14}  status")
    for e in errata.evaluate_errata():
        unit = "n/a" if np.isnan(e.max_abs_dev_unit_coupling) else f"{e.max_abs_dev_unit_coupling:.3e}"
        status = "DEVIATES" if e.deviates else "agrees"
        lines.append(f"{e.name:<24}{e.points:>8}{e.max_abs_dev:>14.3e}{unit:>14}  {status}")
    lines.append("")
    lines.append("SUMMARY: " + ("PASS" if passed else "FAIL"))
    return passed, "\n".join(lines) + "\n"


# --------------------------------------------------------------------------- #
#                               amplitude files                               #
# --------------------------------------------------------------------------- #

def parse_amplitudes(text: str) -> np.ndarray:
    amps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        tokens, col, pos = [], [], 0
        for tok in body.split():
            pos = body.index(tok, pos)
            tokens.append(tok)
            col.append(pos + 1)
            pos += len(tok)
        if len(tokens) != 2:
            raise ParseError(f"expected 're im', got {len(tokens)} field(s)", lineno, col[0])
        vals = []
        for tok, c in zip(tokens, col):
            try:
                vals.append(float(tok))
            except ValueError:
                raise ParseError(f"not a number: {tok!r}", lineno, c) from None
        amps.append(complex(*vals))
        if len(amps) > 16:
            raise ParseError("more than 16 amplitudes", lineno, 1)
    if len(amps) != 16:
        raise ParseError(f"expected 16 amplitudes, found {len(amps)}")
    return np.array(amps)


def invariants_report(amps: np.ndarray, normalize: bool = True) -> str:
    state = make_state(amps, normalize=normalize)
    inv = compute_invariants(state)
    lines = [f"{'name':<6}{'re':>26}{'im':>26}"]
    for name in ("I1", "I2", "I3", "I4", "S", "T", "D4"):
        v = getattr(inv, name)
        lines.append(f"{name:<6}{fmt(v.real):>26}{fmt(v.imag):>26}")
    lines.append(f"{'tau4':<6}{fmt(inv.tau4):>26}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------- #
#                                  argparse                                   #
# --------------------------------------------------------------------------- #

def _add_sweep_args(p: argparse.ArgumentParser, family_choices):
    p.add_argument("--config", help="key = value file; flags take precedence")
    p.add_argument("--family", choices=family_choices)
    for flag in _PARAM_KEYS:
        p.add_argument(f"--{flag}", type=float)
    p.add_argument("--alpha", type=float, help="fixed alpha (no alpha sweep)")
    p.add_argument("--beta", type=float)
    for flag in ("t-start", "t-stop", "alpha-start", "alpha-stop"):
        p.add_argument(f"--{flag}", type=float)
    for flag in ("t-steps", "alpha-steps", "nmax"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--out", help="CSV output path (default: stdout)")


DEFAULTS = {
    "evolve": SweepConfig(),
    "surface": SweepConfig(t_steps=121, alpha_start=0.0, alpha_stop=np.pi / 2, alpha_steps=31),
    "verify": SweepConfig(family="both", t_steps=41, alpha_start=0.0,
                          alpha_stop=np.pi / 2, alpha_steps=5, beta=0.7),
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doublejc",
        description="Double Jaynes-Cummings dynamics and four-qubit invariants.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="invariants of a state read from a file")
    p.add_argument("input", help="16 lines of 're im'; '-' for stdin")
    p.add_argument("--no-normalize", action="store_true")

    p = sub.add_parser("evolve", help="invariant time series as CSV")
    _add_sweep_args(p, ("phi", "psi"))

    p = sub.add_parser("surface", help="tau4(t, alpha) heatmap")
    _add_sweep_args(p, ("phi", "psi"))
    p.add_argument("--svg", help="SVG output path")

    p = sub.add_parser("verify", help="closed form vs Fock-space oracle, plus errata")
    _add_sweep_args(p, ("phi", "psi", "both"))
    return parser


def config_from_args(args) -> SweepConfig:
    base = DEFAULTS[args.command]
    if args.config:
        base = build_config(read_config_file(args.config), base)
    flags = {k.replace("_", "-"): v for k, v in vars(args).items()}
    return build_config(flags, base)


def _write(path, text: str):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.command == "invariants":
            text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
            _write(None, invariants_report(parse_amplitudes(text), not args.no_normalize))
            return 0

        cfg = config_from_args(args)
        if args.command == "evolve":
            _write(args.out, rows_to_csv(run_sweep(cfg)))
            return 0
        if args.command == "surface":
            if cfg.t_steps < 2 or cfg.alpha_steps < 2:
                raise ValueError("surface needs both t and alpha swept")
            rows = run_sweep(cfg)
            _write(args.out, rows_to_csv(rows))
            if args.svg:
                from .svg import heatmap_svg
                _write(args.svg, heatmap_svg(
                    tau4_grid(rows, cfg), cfg.times, cfg.alphas,
                    title=f"tau4, {cfg.family} family", xlabel="t", ylabel="alpha"))
            return 0
        if args.command == "verify":
            point_rows = [] if args.out else None
            passed, report = verify_report(cfg, point_rows)
            sys.stdout.write(report)
            if args.out:
                lines = ["family,t,alpha,fidelity,max_invariant_dev,leakage"]
                lines += [",".join([r[0]] + [fmt(v) for v in r[1:]]) for r in point_rows]
                _write(args.out, "\n".join(lines) + "\n")
            return 0 if passed else 1
    except (ParseError, ZeroVector, ValueError, OSError) as exc:
        print(f"doublejc {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
