"""Command-line front end.

    infodyn evolve   --qubits 2 --preset ising --c 1 --alpha-sq 1/3 --grid 0:6.2832:401
    infodyn check    --state ghz.json
    infodyn fuzz     --qubits 3 --trials 1000 --seed 42
    infodyn spectrum --qubits 3 --preset xy --c 1

Exit codes: 0 ok, 1 bad arguments, 2 malformed input, 3 numerical failure,
4 complementarity residual above tolerance.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .complementarity import RESIDUAL_TOL, residual_pure
from .dynamics import CouplingParams, TimeGrid, hamiltonian, trajectory
from .errors import InfoDynError, MalformedStateFile, UnsupportedSize
from .infomeasure import total_local_info
from .mathcore import hermitian_eig
from .qstate import InitialProductSpec, PureState, haar_random_state, load_state_file, product_state
from .tangle import aggregate

EXIT_OK = 0
EXIT_BAD_ARGS = 1
EXIT_MALFORMED = 2
EXIT_NUMERICAL = 3
EXIT_RESIDUAL = 4

DEFAULT_GRID = "0:6.283185307:401"
SEED_MASK = (1 << 64) - 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad input; status 2 is reserved for malformed files here
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    qubits: int | None = None
    coupling: CouplingParams | None = None
    preset: str = "ising"
    init: str | InitialProductSpec | None = None
    grid: TimeGrid | None = None
    seed: int = 42
    trials: int = 1000
    out: str | None = None
    format: str = "csv"
    jobs: int = 1


@dataclass(frozen=True)
class FuzzSummary:
    trials: int
    max_abs_residual: float
    worst_seed: int
    passed: bool

    def as_dict(self) -> dict:
        return {
            "trials": self.trials,
            "max_abs_residual": self.max_abs_residual,
            "worst_seed": self.worst_seed,
            "pass": self.passed,
        }


# -- number formatting ---------------------------------------------------------


def fmt(x: float) -> str:
    """12 significant digits; exponent form only for tiny or huge magnitudes."""
    x = float(x)
    if x == 0.0:
        return "0"
    return f"{x:.12g}"


def fmt_residual(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # drop the sign of -0.0
    return f"{x:.11e}"


def _json_number(x: float, residual: bool = False) -> float:
    return float(fmt_residual(x) if residual else fmt(x))


# -- argument parsing ------------------------------------------------------------


def _parse_grid(text: str) -> TimeGrid:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:end:samples, got {text!r}")
    try:
        start, end, samples = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"grid must be start:end:samples, got {text!r}") from None
    try:
        return TimeGrid(start, end, samples)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_fraction(text: str) -> float:
    try:
        value = float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--alpha-sq must be a number or ratio like 1/3, got {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise UsageError(f"--alpha-sq must lie in [0, 1], got {text}")
    return value


def _add_coupling_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--qubits", type=int, default=None, help="2 or 3")
    p.add_argument("--preset", choices=("ising", "xy", "custom"), default="ising")
    p.add_argument("--c", type=float, default=1.0, help="coupling strength for presets")
    p.add_argument("--c1", type=float, default=None)
    p.add_argument("--c2", type=float, default=None)
    p.add_argument("--c3", type=float, default=None)


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infodyn", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("evolve", help="time series of local information and tangles")
    _add_coupling_args(p)
    p.add_argument("--alpha-sq", default=None, help="|alpha|^2 of the first qubit, e.g. 1/3")
    p.add_argument("--state", default=None, help="JSON state file for the initial state")
    p.add_argument("--grid", default=DEFAULT_GRID, help="start:end:samples")
    _add_output_args(p)

    p = sub.add_parser("check", help="complementarity report for a state file")
    p.add_argument("--state", required=True)
    _add_output_args(p)

    p = sub.add_parser("fuzz", help="complementarity residual over Haar-random states")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--jobs", type=int, default=1)
    _add_output_args(p)

    p = sub.add_parser("spectrum", help="eigenvalues of the coupling Hamiltonian")
    _add_coupling_args(p)
    _add_output_args(p)
    return parser


def _coupling(args) -> CouplingParams:
    explicit = (args.c1, args.c2, args.c3)
    if args.preset == "custom":
        c = CouplingParams(*(0.0 if v is None else v for v in explicit))
    else:
        if any(v is not None for v in explicit):
            raise UsageError("--c1/--c2/--c3 require --preset custom")
        c = CouplingParams.preset(args.preset, args.c)
    if not all(math.isfinite(v) for v in (c.c1, c.c2, c.c3)):
        raise UsageError("coupling parameters must be finite")
    return c


def _check_qubits(qubits) -> int:
    if qubits not in (2, 3):
        raise UsageError(f"--qubits must be 2 or 3, got {qubits}")
    return qubits


def config_from_args(args) -> RunConfig:
    """Validate every field the command needs before any computation starts."""
    cmd = args.command
    if cmd == "evolve":
        if args.state is not None and args.alpha_sq is not None:
            raise UsageError("give either --state or --alpha-sq, not both")
        init = args.state
        if init is None:
            qubits = _check_qubits(args.qubits)
            alpha_sq = _parse_fraction(args.alpha_sq if args.alpha_sq is not None else "1/3")
            init = InitialProductSpec.from_alpha_squared(alpha_sq, qubits - 1)
        else:
            qubits = None if args.qubits is None else _check_qubits(args.qubits)
        return RunConfig(
            cmd, qubits, _coupling(args), args.preset, init, _parse_grid(args.grid),
            out=args.out, format=args.format,
        )
    if cmd == "check":
        return RunConfig(cmd, init=args.state, out=args.out, format=args.format)
    if cmd == "fuzz":
        qubits = _check_qubits(args.qubits)
        if args.trials < 1:
            raise UsageError(f"--trials must be at least 1, got {args.trials}")
        if args.jobs < 1:
            raise UsageError(f"--jobs must be at least 1, got {args.jobs}")
        if not 0 <= args.seed <= SEED_MASK:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        return RunConfig(
            cmd, qubits, seed=args.seed, trials=args.trials, out=args.out,
            format=args.format, jobs=args.jobs,
        )
    if cmd == "spectrum":
        return RunConfig(
            cmd, _check_qubits(args.qubits), _coupling(args), args.preset,
            out=args.out, format=args.format,
        )
    raise UsageError(f"unknown command {cmd!r}")


# -- output --------------------------------------------------------------------


def _columns(n: int) -> list[str]:
    if n == 2:
        return ["t", "I1", "I2", "I_total", "tau12", "E", "residual"]
    return ["t", "I1", "I2", "I3", "I_total", "tau12", "tau13", "tau23", "tau123", "E", "residual"]


def _row(n: int, t, info, tangles, residual) -> dict:
    row = {"t": t}
    for k, v in enumerate(info.per_qubit, start=1):
        row[f"I{k}"] = v
    row["I_total"] = info.total
    for (i, j), v in sorted(tangles.tau_pairs.items()):
        row[f"tau{i}{j}"] = v
    if n == 3:
        row["tau123"] = tangles.tau_123
    row["E"] = tangles.aggregate
    row["residual"] = residual
    return row


def _cell(key: str, value, residual_keys) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return fmt_residual(value) if key in residual_keys else fmt(value)


def _json_value(key: str, value, residual_keys):
    if isinstance(value, (bool, int)):
        return value
    return _json_number(value, key in residual_keys)


def _render(rows: list[dict], columns: list[str], fmt_name: str, residual_keys=("residual",)) -> str:
    if fmt_name == "json":
        out = [{k: _json_value(k, r[k], residual_keys) for k in columns} for r in rows]
        return json.dumps(out, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(k, r[k], residual_keys) for k in columns])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


# -- commands ------------------------------------------------------------------


def _initial_state(cfg: RunConfig) -> PureState:
    if isinstance(cfg.init, InitialProductSpec):
        return product_state(cfg.init)
    state = load_state_file(cfg.init)
    if state.qubits not in (2, 3):
        raise MalformedStateFile(f"state file has {state.qubits} qubits; evolve supports 2 or 3")
    if cfg.qubits is not None and cfg.qubits != state.qubits:
        raise MalformedStateFile(f"state file has {state.qubits} qubits but --qubits is {cfg.qubits}")
    return state


def cmd_evolve(cfg: RunConfig) -> int:
    psi0 = _initial_state(cfg)
    n = psi0.qubits
    records = trajectory(hamiltonian(n, cfg.coupling), psi0, cfg.grid)
    rows = [_row(n, r.t, r.info, r.tangles, r.residual) for r in records]
    _emit(_render(rows, _columns(n), cfg.format), cfg.out)
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    state = load_state_file(cfg.init)
    n = state.qubits
    try:
        report = residual_pure(state)
    except UnsupportedSize as exc:
        raise MalformedStateFile(str(exc)) from exc
    info = total_local_info(state, "fidelity")
    tangles = aggregate(state)
    row = _row(n, 0.0, info, tangles, report.residual)
    del row["t"]
    row["lhs"] = report.lhs
    columns = [c for c in _columns(n) if c not in ("t", "residual")] + ["lhs", "residual"]
    residual_keys = ["residual"]
    for k, r in enumerate(report.per_qubit_residuals, start=1):
        row[f"residual_q{k}"] = r
        columns.append(f"residual_q{k}")
        residual_keys.append(f"residual_q{k}")
    if cfg.format == "json":
        doc = {
            "qubits": n,
            "info": {
                "per_qubit": [_json_number(v) for v in info.per_qubit],
                "total": _json_number(info.total),
            },
            "tangles": {
                "tau_pairs": {f"{i}{j}": _json_number(v) for (i, j), v in sorted(tangles.tau_pairs.items())},
                "tau_123": None if tangles.tau_123 is None else _json_number(tangles.tau_123),
                "aggregate": _json_number(tangles.aggregate),
            },
            "complementarity": {
                "n": n,
                "lhs": _json_number(report.lhs),
                "residual": _json_number(report.residual, True),
                "per_qubit_residuals": [_json_number(v, True) for v in report.per_qubit_residuals],
            },
        }
        _emit(json.dumps(doc, indent=1) + "\n", cfg.out)
    else:
        _emit(_render([row], columns, "csv", tuple(residual_keys)), cfg.out)
    return EXIT_OK if report.ok else EXIT_RESIDUAL


def _trial_residual(args: tuple[int, int]) -> tuple[float, int]:
    n, seed = args
    return abs(residual_pure(haar_random_state(n, seed)).residual), seed


def run_fuzz(qubits: int, trials: int, seed: int, jobs: int = 1) -> FuzzSummary:
    """Largest complementarity residual over Haar states seeded ``seed + i``."""
    tasks = [(qubits, (seed + i) & SEED_MASK) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_trial_residual, tasks, chunksize=64))
    else:
        results = [_trial_residual(t) for t in tasks]
    # ties resolve to the smallest seed so the summary is order independent
    worst, worst_seed = max(results, key=lambda r: (r[0], -r[1]))
    return FuzzSummary(trials, worst, worst_seed, worst <= RESIDUAL_TOL)


def cmd_fuzz(cfg: RunConfig) -> int:
    summary = run_fuzz(cfg.qubits, cfg.trials, cfg.seed, cfg.jobs)
    row = summary.as_dict()
    columns = list(row)
    if cfg.format == "json":
        doc = {k: _json_value(k, v, ("max_abs_residual",)) for k, v in row.items()}
        _emit(json.dumps(doc, indent=1) + "\n", cfg.out)
    else:
        _emit(_render([row], columns, "csv", ("max_abs_residual",)), cfg.out)
    return EXIT_OK if summary.passed else EXIT_RESIDUAL


def cmd_spectrum(cfg: RunConfig) -> int:
    energies = hermitian_eig(hamiltonian(cfg.qubits, cfg.coupling)).eigenvalues
    rows = [{"k": k, "energy": float(e)} for k, e in enumerate(energies, start=1)]
    _emit(_render(rows, ["k", "energy"], cfg.format, ()), cfg.out)
    return EXIT_OK


COMMANDS = {"evolve": cmd_evolve, "check": cmd_check, "fuzz": cmd_fuzz, "spectrum": cmd_spectrum}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config_from_args(args)
    except UsageError as exc:
        print(f"infodyn: error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    try:
        return COMMANDS[cfg.command](cfg)
    except MalformedStateFile as exc:
        print(f"infodyn: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except InfoDynError as exc:
        print(f"infodyn: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"infodyn: cannot write output: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
