"""Circuit IR plus a reader/writer for a small OpenQASM 2 subset.

The subset covers what benchmark circuits usually contain: a version
header, ``include`` lines, a single ``qreg``, gate applications with
optional angle parameters, and ``barrier``/``measure``/``creg``
statements (accepted and dropped).  Gate definitions, ``if`` and
``opaque`` are rejected.
"""

from __future__ import annotations

import ast
import enum
import math
import operator
import re
from dataclasses import dataclass

TWO_QUBIT_GATES = frozenset(
    {
        "cx", "cnot", "cy", "cz", "ch", "cp", "cphase", "cu1", "crx", "cry",
        "crz", "cu", "cu3", "csx", "swap", "iswap", "rxx", "ryy", "rzz", "ms",
        "ecr",
    }
)


class GateKind(enum.Enum):
    SINGLE = "single"
    TWO = "two"
    SWAP = "swap"


@dataclass(frozen=True)
class Gate:
    id: int
    name: str
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if len(self.qubits) not in (1, 2):
            raise ValueError(f"gate {self.name!r} must act on 1 or 2 qubits, got {len(self.qubits)}")
        if len(self.qubits) == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"gate {self.name!r} repeats operand q[{self.qubits[0]}]")
        if self.name == "swap" and len(self.qubits) != 2:
            raise ValueError("swap needs two operands")

    @property
    def kind(self) -> GateKind:
        if len(self.qubits) == 1:
            return GateKind.SINGLE
        return GateKind.SWAP if self.name == "swap" else GateKind.TWO

    @property
    def is_two_qubit(self) -> bool:
        return len(self.qubits) == 2


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...] = ()
    name: str = "circuit"

    def __post_init__(self) -> None:
        if self.n_qubits < 0:
            raise ValueError("n_qubits must be non-negative")
        last = -1
        for g in self.gates:
            if g.id <= last:
                raise ValueError(f"gate ids must be strictly increasing (saw {g.id} after {last})")
            last = g.id
            for q in g.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ValueError(f"gate {g.id} operand {q} outside [0, {self.n_qubits})")

    @classmethod
    def from_ops(cls, n_qubits: int, ops, name: str = "circuit") -> Circuit:
        """Build a circuit from ``(name, qubits[, params])`` tuples, numbering gates 0..g-1."""
        gates = []
        for i, op in enumerate(ops):
            gname, qubits = op[0], tuple(op[1])
            params = tuple(op[2]) if len(op) > 2 else ()
            gates.append(Gate(i, gname, qubits, params))
        return cls(n_qubits, tuple(gates), name)

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def two_qubit_count(self) -> int:
        return sum(1 for g in self.gates if g.is_two_qubit)

    def gate_index(self) -> dict[int, Gate]:
        return {g.id: g for g in self.gates}


class QasmError(ValueError):
    """Raised for malformed or unsupported QASM input."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = f" (line {line}, col {col})" if line is not None else ""
        super().__init__(f"{message}{where}")


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_FUNCS = {"sin": math.sin, "cos": math.cos, "tan": math.tan, "exp": math.exp, "ln": math.log, "sqrt": math.sqrt}


def _eval_angle(expr: str) -> float:
    try:
        tree = ast.parse(expr.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"bad parameter expression {expr!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            if len(node.args) != 1:
                raise ValueError(f"{node.func.id} takes one argument")
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(f"unsupported token in parameter expression {expr!r}")

    return ev(tree)


_STMT_RE = re.compile(r"[^;]*;", re.S)
_QREG_RE = re.compile(r"^qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_CREG_RE = re.compile(r"^creg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_APPLY_RE = re.compile(r"^([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*(.*)$", re.S)
_ARG_RE = re.compile(r"^([A-Za-z_]\w*)\s*(?:\[\s*(\d+)\s*\])?$")


def _strip_comments(text: str) -> str:
    # keep offsets stable so error positions stay meaningful
    return re.sub(r"//[^\n]*", lambda m: " " * len(m.group(0)), text)


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _split_top_level(s: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def parse_qasm(text: str, name: str = "circuit") -> Circuit:
    """Parse OpenQASM 2 subset text into a :class:`Circuit`.

    Unknown single-qubit gate names are kept verbatim.  Two-operand gates
    must be in :data:`TWO_QUBIT_GATES`; gates with three or more operands
    are rejected.  A gate applied to a whole register (``h q;``) is
    expanded for single-qubit gates only.
    """
    clean = _strip_comments(text)
    qreg: tuple[str, int] | None = None
    ops: list[tuple[str, tuple[int, ...], tuple[float, ...]]] = []

    pos = 0
    for m in _STMT_RE.finditer(clean):
        pos = m.end()
        raw = m.group(0)[:-1]
        lead = len(raw) - len(raw.lstrip())
        stmt = raw.strip()
        if not stmt:
            continue
        line, col = _line_col(clean, m.start() + lead)

        def fail(msg: str) -> QasmError:
            return QasmError(msg, line, col)

        head = stmt.split(None, 1)[0]
        if head == "OPENQASM":
            ver = stmt[len("OPENQASM"):].strip()
            if not ver.startswith("2"):
                raise fail(f"unsupported OpenQASM version {ver!r}")
            continue
        if head == "include" or head == "barrier":
            continue
        if head in ("gate", "opaque") or re.match(r"if\s*\(", stmt):
            raise fail(f"unsupported statement {head.split('(')[0]!r}")
        if head == "qreg":
            qm = _QREG_RE.match(stmt)
            if not qm:
                raise fail("malformed qreg declaration")
            if qreg is not None:
                raise fail("only one qreg is supported")
            qreg = (qm.group(1), int(qm.group(2)))
            continue
        if head == "creg":
            if not _CREG_RE.match(stmt):
                raise fail("malformed creg declaration")
            continue
        if head == "measure":
            continue
        if "{" in stmt or "}" in stmt:
            raise fail("gate bodies are not supported")

        am = _APPLY_RE.match(stmt)
        if not am:
            raise fail(f"cannot parse statement {stmt!r}")
        gname, pstr, astr = am.group(1), am.group(2), am.group(3).strip()
        if qreg is None:
            raise fail(f"gate {gname!r} used before qreg declaration")
        if not astr:
            raise fail(f"gate {gname!r} has no operands")
        params: tuple[float, ...] = ()
        if pstr is not None and pstr.strip():
            try:
                params = tuple(_eval_angle(p) for p in _split_top_level(pstr))
            except ValueError as exc:
                raise fail(str(exc)) from None

        args = [a.strip() for a in astr.split(",")]
        resolved: list[int | None] = []
        for a in args:
            argm = _ARG_RE.match(a)
            if not argm:
                raise fail(f"malformed operand {a!r}")
            if argm.group(1) != qreg[0]:
                raise fail(f"unknown register {argm.group(1)!r}")
            if argm.group(2) is None:
                resolved.append(None)
                continue
            idx = int(argm.group(2))
            if idx >= qreg[1]:
                raise fail(f"operand {qreg[0]}[{idx}] out of range (register size {qreg[1]})")
            resolved.append(idx)

        if len(resolved) > 2:
            raise fail(f"gate {gname!r} has {len(resolved)} operands; only 1- and 2-qubit gates are supported")
        if len(resolved) == 2:
            if gname not in TWO_QUBIT_GATES:
                raise fail(f"unknown two-qubit gate {gname!r}")
            if None in resolved:
                raise fail("register broadcast is only supported for single-qubit gates")
            if resolved[0] == resolved[1]:
                raise fail(f"gate {gname!r} repeats an operand")
            ops.append((gname, (resolved[0], resolved[1]), params))
        else:
            if gname in TWO_QUBIT_GATES:
                raise fail(f"gate {gname!r} needs two operands")
            if resolved[0] is None:
                ops.extend((gname, (q,), params) for q in range(qreg[1]))
            else:
                ops.append((gname, (resolved[0],), params))

    tail = clean[pos:].strip()
    if tail:
        line, col = _line_col(clean, pos + (len(clean[pos:]) - len(clean[pos:].lstrip())))
        raise QasmError("missing ';' at end of statement", line, col)
    if qreg is None:
        raise QasmError("no qreg declared", 1, 1)
    return Circuit.from_ops(qreg[1], ops, name)


def _fmt_param(x: float) -> str:
    return repr(float(x))


def emit_qasm(circuit: Circuit, reg: str = "q") -> str:
    """Write ``circuit`` back out in the same subset ``parse_qasm`` reads."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg {reg}[{circuit.n_qubits}];"]
    for g in circuit.gates:
        ps = f"({','.join(_fmt_param(p) for p in g.params)})" if g.params else ""
        operands = ",".join(f"{reg}[{q}]" for q in g.qubits)
        lines.append(f"{g.name}{ps} {operands};")
    return "\n".join(lines) + "\n"
