from __future__ import annotations

import csv
import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from tiltc.cli import CSV_COLUMNS, main

DATA = Path(__file__).parent / "data"
GOLDEN_ARGS = [
    "sweep", "--apps", "qft:16", "bv:17", "qaoa-ring:16", "alt:16:4", "rcs-like:16:4", "adder-ripple:16",
    "--zones", "4", "8", "--models", "trout", "pm", "--seed", "7", "--no-timing",
]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_compile_summary(capsys):
    code, out, _ = run(["compile", "--gen", "qft:64", "--zone", "16", "--algo", "boss"], capsys)
    summary = json.loads(out)
    assert code == 0 and summary["valid"]
    assert {"S", "swaps", "dist", "L", "compile_ms"} <= summary.keys()


def test_compile_bv_shuttles(capsys):
    code, out, _ = run(["compile", "--gen", "bv:65", "--zone", "16"], capsys)
    assert code == 0 and json.loads(out)["S"] <= 4


def test_config_errors(capsys):
    assert run(["compile", "--gen", "qft:8", "--zone", "1"], capsys)[0] == 2
    assert run(["compile", "--gen", "qft:8", "--zone", "9"], capsys)[0] == 2
    assert run(["compile", "--gen", "nope:8", "--zone", "4"], capsys)[0] == 2
    assert run(["compile", "--gen", "qft:8"], capsys)[0] == 2
    assert run(["estimate", "--gen", "qft:8", "--zone", "4", "--pitch", "0"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["compile", "--gen", "qft:8", "--input", "x.qasm", "--zone", "4"])
    assert exc.value.code == 2


def test_io_errors(tmp_path, capsys):
    assert run(["compile", "--input", str(tmp_path / "missing.qasm"), "--zone", "2"], capsys)[0] == 3
    bad = tmp_path / "bad.qasm"
    bad.write_text("OPENQASM 2.0; qreg q[2]; cx q[0] q[1];")
    assert run(["compile", "--input", str(bad), "--zone", "2"], capsys)[0] == 3
    junk = tmp_path / "junk.json"
    junk.write_text("{}")
    assert run(["verify", "--gen", "qft:4", "--schedule", str(junk)], capsys)[0] == 3


def test_gen_compile_verify_estimate(tmp_path, capsys):
    qasm = tmp_path / "c.qasm"
    sched = tmp_path / "s.json"
    assert run(["gen", "--gen", "adder-ripple:12", "-o", str(qasm)], capsys)[0] == 0
    code, _, _ = run(["compile", "--input", str(qasm), "--zone", "4", "-o", str(sched)], capsys)
    assert code == 0 and sched.exists()
    code, out, _ = run(["verify", "--input", str(qasm), "--schedule", str(sched)], capsys)
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run(["estimate", "--input", str(qasm), "--schedule", str(sched), "--model", "pm"], capsys)
    est = json.loads(out)
    assert code == 0 and est["model"] == "pm" and 0 < est["success_rate"] <= 1


def test_verify_detects_tampering(tmp_path, capsys):
    sched = tmp_path / "s.json"
    run(["compile", "--gen", "qft:8", "--zone", "4", "-o", str(sched)], capsys)
    obj = json.loads(sched.read_text())
    obj["events"] = [e for e in obj["events"] if e["kind"] != "cool"]
    sched.write_text(json.dumps(obj))
    code, out, _ = run(["verify", "--gen", "qft:8", "--schedule", str(sched)], capsys)
    assert code == 1 and not json.loads(out)["valid"]
    code, _, _ = run(["estimate", "--gen", "qft:8", "--schedule", str(sched)], capsys)
    assert code == 1


def test_ideal_device(capsys):
    code, out, _ = run(["compile", "--gen", "qft:20", "--ideal"], capsys)
    s = json.loads(out)
    assert code == 0 and s["S"] == 0 and s["Z"] == 20


def test_output_dir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TILTC_OUTPUT_DIR", str(tmp_path))
    run(["compile", "--gen", "bv:10", "--zone", "4"], capsys)
    assert (tmp_path / "bv10_Z4_boss.json").exists()
    run(["sweep", "--apps", "bv:10", "--zones", "4"], capsys)
    assert (tmp_path / "sweep.csv").exists()


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_table_direction(capsys):
    code, out, _ = run(["sweep", "--apps", "qft:64", "--zones", "16", "32", "--algos", "boss", "baseline"], capsys)
    rows = _rows(out)
    assert code == 0 and len(rows) == 4
    assert tuple(out.splitlines()[0].split(",")) == CSV_COLUMNS
    for z in ("16", "32"):
        boss = next(r for r in rows if r["Z"] == z and r["algo"] == "boss")
        base = next(r for r in rows if r["Z"] == z and r["algo"] == "baseline")
        assert int(boss["S"]) < int(base["S"])


def test_sweep_empty_is_header_only(capsys):
    code, out, _ = run(["sweep", "--apps"], capsys)
    assert code == 0 and out == ",".join(CSV_COLUMNS) + "\n"


def test_sweep_marks_failures(capsys):
    code, out, _ = run(["sweep", "--apps", "qft:6", "bv:20", "--zones", "8"], capsys)
    rows = _rows(out)
    assert code == 0
    assert [r["status"].split(":")[0] for r in rows] == ["error", "error", "ok", "ok"]


def test_sweep_parallel_matches_serial(capsys):
    args = ["sweep", "--apps", "qft:24", "rcs-like:16", "--zones", "4", "8", "--no-timing", "--seed", "3"]
    _, serial, _ = run(args, capsys)
    _, parallel, _ = run(args + ["--jobs", "2"], capsys)
    assert serial == parallel


def test_golden_sweep(capsys):
    code, out, _ = run(GOLDEN_ARGS, capsys)
    assert code == 0
    assert out == (DATA / "golden_sweep.csv").read_text()


def test_console_entry_point():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "tiltc.cli", "compile", "--gen", "bv:9", "--zone", "4", "--no-timing"],
        capture_output=True, text=True, env=env, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["n"] == 9


def test_pure_python_fallback():
    env = dict(os.environ, TILTC_PURE_PYTHON="1")
    code = "import tiltc; print(tiltc.BACKEND); print(tiltc.tilt_blocking(tiltc.generate_benchmark('qft', 8), 4)[0].gates)"
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    lines = proc.stdout.splitlines()
    assert lines[0] == "python"
