"""Command-line front end: gen, compile, verify, estimate and sweep.

Exit codes: 0 ok, 1 verification failure, 2 configuration error,
3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .benchmarks import generate_benchmark, parse_generator_spec
from .circuit import Circuit, QasmError, emit_qasm, parse_qasm
from .costmodel import FidelityParams, GateTimeModel, TimingParams, execution_time, success_rate
from .pipeline import ALGORITHMS, compile_circuit
from .scheduling import Schedule
from .verifier import verify

EXIT_OK, EXIT_INVALID, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3
OUTPUT_DIR_ENV = "TILTC_OUTPUT_DIR"
CSV_COLUMNS = (
    "app", "n", "Z", "algo", "model", "S", "swaps", "dist", "g", "L",
    "t_exec_us", "success_rate", "compile_ms", "status",
)


class ConfigError(Exception):
    pass


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    gen: str | None = None
    input: str | None = None
    zone: int | None = None
    algorithm: str = "boss"
    seed: int | None = None
    decompose: bool = False
    ideal: bool = False

    def __post_init__(self) -> None:
        if (self.gen is None) == (self.input is None):
            raise ConfigError("give exactly one of --gen or --input")
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        if self.zone is not None and self.zone < 2:
            raise ConfigError(f"--zone must be at least 2, got {self.zone}")

    def load(self) -> Circuit:
        if self.gen is not None:
            try:
                name, n, layers = parse_generator_spec(self.gen)
                return generate_benchmark(name, n, self.seed, layers=layers, decompose=self.decompose)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        try:
            text = Path(self.input).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {self.input}: {exc.strerror}") from exc
        try:
            return parse_qasm(text, Path(self.input).stem)
        except QasmError as exc:
            raise InputError(f"{self.input}: {exc}") from exc

    def zone_for(self, circuit: Circuit) -> int:
        if self.ideal:
            return circuit.n_qubits
        if self.zone is None:
            raise ConfigError("--zone is required unless --ideal is given")
        if self.zone > circuit.n_qubits:
            raise ConfigError(f"zone {self.zone} exceeds the {circuit.n_qubits}-qubit tape")
        return self.zone


def _dump(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _write(path: str | Path, text: str) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from exc


def _default_output(filename: str) -> Path | None:
    base = os.environ.get(OUTPUT_DIR_ENV)
    return Path(base) / filename if base else None


def _load_schedule(path: str) -> Schedule:
    try:
        return Schedule.from_json(json.loads(Path(path).read_text()))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{path}: not a schedule file ({exc})") from exc


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        gen=args.gen,
        input=args.input,
        zone=getattr(args, "zone", None),
        algorithm=getattr(args, "algo", "boss"),
        seed=args.seed,
        decompose=args.decompose,
        ideal=getattr(args, "ideal", False),
    )


def _models(args: argparse.Namespace) -> tuple[TimingParams, FidelityParams]:
    try:
        timing = TimingParams(ion_pitch_um=args.pitch, shuttle_speed_um_per_us=args.speed)
        fid = FidelityParams(eps_laser=args.eps_laser, eps_shuttle=args.eps_shuttle)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return timing, fid


def _estimate(schedule: Schedule, report, model: GateTimeModel, timing, fid, n_ions, reset) -> dict:
    ex = execution_time(schedule, model, timing, report=report)
    try:
        sr = success_rate(schedule, fid, n_ions, reset)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return {"model": model.label, "execution": ex.to_json(), "success_rate": sr}


def cmd_gen(args: argparse.Namespace) -> int:
    circuit = RunConfig(gen=args.gen, seed=args.seed, decompose=args.decompose).load()
    text = emit_qasm(circuit)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_compile(args: argparse.Namespace) -> int:
    cfg = _config(args)
    circuit = cfg.load()
    zone = cfg.zone_for(circuit)
    result = compile_circuit(circuit, zone, cfg.algorithm)
    schedule = result.schedule
    out = args.output or _default_output(f"{circuit.name}_Z{zone}_{cfg.algorithm}.json")
    if out:
        _write(out, _dump(schedule.to_json()))
    summary = dict(schedule.summary(), algo=cfg.algorithm, circuit=circuit.name, valid=result.report.valid)
    if not args.no_timing:
        summary["compile_ms"] = round(result.compile_ms, 3)
    if not result.report.valid:
        summary["violations"] = [v.to_json() for v in result.report.violations[:20]]
    sys.stdout.write(_dump(summary))
    return EXIT_OK if result.report.valid else EXIT_INVALID


def cmd_verify(args: argparse.Namespace) -> int:
    circuit = _config(args).load()
    schedule = _load_schedule(args.schedule)
    report = verify(circuit, schedule, args.zone)
    sys.stdout.write(_dump(report.to_json()))
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_estimate(args: argparse.Namespace) -> int:
    cfg = _config(args)
    circuit = cfg.load()
    timing, fid = _models(args)
    model = GateTimeModel.from_label(args.model)
    if args.schedule:
        schedule = _load_schedule(args.schedule)
        report = verify(circuit, schedule)
    else:
        result = compile_circuit(circuit, cfg.zone_for(circuit), cfg.algorithm)
        schedule, report = result.schedule, result.report
    if not report.valid:
        sys.stdout.write(_dump(report.to_json()))
        return EXIT_INVALID
    out = _estimate(schedule, report, model, timing, fid, args.n_ions, args.reset_shuttle_index)
    out["summary"] = schedule.summary()
    sys.stdout.write(_dump(out))
    return EXIT_OK


@dataclass(frozen=True)
class _Cell:
    app: str
    zone: int
    algorithm: str
    models: tuple[str, ...]
    seed: int | None
    decompose: bool
    timing: TimingParams
    fid: FidelityParams
    reset: bool
    with_timing: bool


def _run_cell(cell: _Cell) -> list[list[str]]:
    """One (app, zone, algorithm) cell; one row per gate-time model."""
    rows = []
    name = cell.app
    n = z = ""
    try:
        cfg = RunConfig(gen=cell.app, zone=cell.zone, algorithm=cell.algorithm, seed=cell.seed, decompose=cell.decompose)
        circuit = cfg.load()
        name, n = circuit.name, str(circuit.n_qubits)
        z = str(cfg.zone_for(circuit))
        result = compile_circuit(circuit, int(z), cell.algorithm)
    except Exception as exc:  # partial failures become marked rows
        status = f"error: {exc}".replace("\n", " ")
        return [[name, n, z or str(cell.zone), cell.algorithm, m] + [""] * 8 + [status] for m in cell.models]
    s = result.schedule.summary()
    ms = f"{result.compile_ms:.3f}" if cell.with_timing else ""
    for label in cell.models:
        status = "ok" if result.report.valid else "invalid"
        t_exec = sr = ""
        if result.report.valid:
            ex = execution_time(result.schedule, GateTimeModel.from_label(label), cell.timing, report=result.report)
            t_exec = f"{ex.t_exec_us:.3f}"
            sr = f"{success_rate(result.schedule, cell.fid, None, cell.reset):.6e}"
        rows.append([
            name, n, z, cell.algorithm, label,
            str(s["S"]), str(s["swaps"]), str(s["dist"]), str(s["g"]), str(s["L"]),
            t_exec, sr, ms, status,
        ])
    return rows


def sweep_rows(cells: list[_Cell], jobs: int = 1) -> list[list[str]]:
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_cell, cells))
    else:
        chunks = [_run_cell(c) for c in cells]
    return [row for chunk in chunks for row in chunk]


def format_csv(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(rows)
    return buf.getvalue()


def cmd_sweep(args: argparse.Namespace) -> int:
    timing, fid = _models(args)
    for label in args.models:
        try:
            GateTimeModel.from_label(label)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    if args.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    for z in args.zones:
        if z < 2:
            raise ConfigError(f"zone must be at least 2, got {z}")
    cells = [
        _Cell(app, z, algo, tuple(args.models), args.seed, args.decompose, timing, fid,
              args.reset_shuttle_index, not args.no_timing)
        for app in args.apps
        for z in args.zones
        for algo in args.algos
    ]
    text = format_csv(sweep_rows(cells, args.jobs))
    out = args.out or _default_output("sweep.csv")
    if out:
        _write(out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--gen", metavar="NAME:N[:LAYERS]", help="generated benchmark, e.g. qft:64")
    src.add_argument("--input", metavar="FILE", help="OpenQASM 2 circuit file")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized generators")
    p.add_argument("--decompose", action="store_true", help="rewrite cp/rzz into two CX each")


def _add_compile_opts(p: argparse.ArgumentParser, zone_required: bool = False) -> None:
    p.add_argument("--zone", type=int, required=zone_required, help="execution zone size Z")
    p.add_argument("--algo", choices=ALGORITHMS, default="boss")
    p.add_argument("--ideal", action="store_true", help="zone spans the whole tape (no shuttling)")


def _add_model_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pitch", type=float, default=TimingParams.ion_pitch_um, help="ion pitch in um")
    p.add_argument("--speed", type=float, default=TimingParams.shuttle_speed_um_per_us, help="shuttle speed in um/us")
    p.add_argument("--eps-laser", type=float, default=FidelityParams.eps_laser)
    p.add_argument("--eps-shuttle", type=float, default=FidelityParams.eps_shuttle)
    p.add_argument("--reset-shuttle-index", action="store_true",
                   help="treat every shuttle as the first one in the fidelity product")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tiltc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a generated benchmark as OpenQASM 2")
    p.add_argument("--gen", required=True, metavar="NAME:N[:LAYERS]")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--decompose", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("compile", help="block, schedule and verify a circuit")
    _add_input(p)
    _add_compile_opts(p)
    p.add_argument("-o", "--output", help="schedule JSON path")
    p.add_argument("--no-timing", action="store_true", help="omit compile_ms from the summary")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="replay a schedule JSON against its circuit")
    _add_input(p)
    p.add_argument("--schedule", required=True)
    p.add_argument("--zone", type=int, default=None, help="override the schedule's zone")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("estimate", help="execution time and success rate")
    _add_input(p)
    _add_compile_opts(p)
    _add_model_opts(p)
    p.add_argument("--schedule", help="existing schedule JSON (otherwise compile first)")
    p.add_argument("--model", default="trout", choices=[m.label for m in GateTimeModel])
    p.add_argument("--n-ions", type=int, default=None, help="ions per zone N (default: Z)")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sweep", help="CSV over apps x zones x algorithms x models")
    p.add_argument("--apps", nargs="*", default=[], metavar="NAME:N[:LAYERS]")
    p.add_argument("--zones", nargs="+", type=int, default=[16, 32])
    p.add_argument("--algos", nargs="+", choices=ALGORITHMS, default=list(ALGORITHMS))
    p.add_argument("--models", nargs="+", default=["trout"])
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--decompose", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="leave compile_ms empty for byte-stable output")
    p.add_argument("--out")
    _add_model_opts(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"tiltc: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"tiltc: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
