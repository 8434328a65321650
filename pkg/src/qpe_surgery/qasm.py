"""OpenQASM 2.0 subset reader and writer.

Classical bits are written as one-bit registers ``c0, c1, ...`` so that a
2.0 ``if`` can test a single bit.
"""

from __future__ import annotations

import math
import re

from .circuit import Instr, LogicalCircuit
from .synthesis.sequence import DIAG_SPELLING

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'

ONE_QUBIT = ("x", "y", "z", "h", "s", "sdg", "t", "tdg")
SUPPORTED = ONE_QUBIT + ("cx", "rz", "measure", "reset")


class QasmError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


class UnsupportedGate(QasmError):
    pass


_QARG = r"([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]"
_RE_REG = re.compile(r"(qreg|creg)\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]$")
_RE_IF = re.compile(r"if\s*\(\s*([A-Za-z_]\w*)\s*==\s*(\d+)\s*\)\s*(.*)$", re.S)
_RE_MEASURE = re.compile(rf"measure\s+{_QARG}\s*->\s*{_QARG}$")
_RE_GATE = re.compile(r"([A-Za-z_]\w*)\s*(?:\(([^)]*)\))?\s*(.*)$", re.S)
_RE_QARG = re.compile(_QARG + "$")


def _parse_angle(text: str) -> float:
    """Evaluate a numeric expression over ``pi`` without eval."""
    tokens = re.findall(r"\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?|pi|[-+*/()]", text.replace(" ", ""))
    if "".join(tokens) != text.replace(" ", ""):
        raise ValueError(f"bad angle expression {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    def atom():
        t = take()
        if t == "-":
            return -atom()
        if t == "+":
            return atom()
        if t == "(":
            v = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return v
        if t == "pi":
            return math.pi
        return float(t)

    def term():
        v = atom()
        while peek() in ("*", "/"):
            v = v * atom() if take() == "*" else v / atom()
        return v

    def expr():
        v = term()
        while peek() in ("+", "-"):
            v = v + term() if take() == "+" else v - term()
        return v

    try:
        v = expr()
    except (IndexError, ZeroDivisionError) as e:
        raise ValueError(f"bad angle expression {text!r}") from e
    if pos != len(tokens):
        raise ValueError(f"bad angle expression {text!r}")
    return v


def _statements(text: str):
    """Yield (statement, line, column) with comments stripped."""
    buf, start = [], None
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if text.startswith("//", i):
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if ch == ";":
            yield "".join(buf).strip(), start or (line, col)
            buf, start = [], None
        else:
            if start is None and not ch.isspace():
                start = (line, col)
            buf.append(ch)
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
        i += 1
    if "".join(buf).strip():
        raise QasmError("missing ';' at end of statement", *start)


def parse_qasm(text: str) -> LogicalCircuit:
    """Parse the supported subset into a circuit.

    Register declarations may be omitted, in which case ``q`` and ``c`` are
    sized from their largest index.
    """
    qregs: dict[str, tuple[int, int]] = {}
    cregs: dict[str, tuple[int, int]] = {}
    n_q = n_c = 0
    body = []
    for stmt, (ln, co) in _statements(text):
        if not stmt:
            continue
        if stmt.startswith("OPENQASM"):
            if stmt.split()[1:] != ["2.0"]:
                raise QasmError("only OPENQASM 2.0 is supported", ln, co)
            continue
        if stmt.startswith("include"):
            continue
        m = _RE_REG.match(stmt)
        if m:
            kind, name, size = m.group(1), m.group(2), int(m.group(3))
            regs = qregs if kind == "qreg" else cregs
            if name in qregs or name in cregs:
                raise QasmError(f"register {name!r} declared twice", ln, co)
            if kind == "qreg":
                regs[name] = (n_q, size)
                n_q += size
            else:
                regs[name] = (n_c, size)
                n_c += size
            continue
        if stmt.split()[0] in ("qreg", "creg"):
            raise QasmError(f"bad register declaration {stmt!r}", ln, co)
        body.append((stmt, ln, co))

    implicit = not qregs and not cregs
    used_q: set[int] = set()
    used_c: set[int] = set()

    def qubit(reg, idx, ln, co):
        if implicit:
            if reg != "q":
                raise QasmError(f"undeclared quantum register {reg!r}", ln, co)
            used_q.add(idx)
            return idx
        if reg not in qregs:
            raise QasmError(f"undeclared quantum register {reg!r}", ln, co)
        off, size = qregs[reg]
        if idx >= size:
            raise QasmError(f"index {idx} out of range for {reg}[{size}]", ln, co)
        return off + idx

    def cbit(reg, idx, ln, co):
        if implicit:
            if reg != "c":
                raise QasmError(f"undeclared classical register {reg!r}", ln, co)
            used_c.add(idx)
            return idx
        if reg not in cregs:
            raise QasmError(f"undeclared classical register {reg!r}", ln, co)
        off, size = cregs[reg]
        if idx >= size:
            raise QasmError(f"index {idx} out of range for {reg}[{size}]", ln, co)
        return off + idx

    instrs: list[Instr] = []
    last_measure: dict[int, int] = {}  # qubit -> bit of its latest measurement
    for stmt, ln, co in body:
        cond = None
        m = _RE_IF.match(stmt)
        if m:
            reg, val, stmt = m.group(1), int(m.group(2)), m.group(3).strip()
            if implicit:
                raise QasmError("if-statements need declared one-bit registers", ln, co)
            if reg not in cregs:
                raise QasmError(f"undeclared classical register {reg!r}", ln, co)
            if cregs[reg][1] != 1 or val != 1:
                raise QasmError("only 'if (r==1)' on a one-bit register is supported", ln, co)
            cond = cregs[reg][0]
        m = _RE_MEASURE.match(stmt)
        if m:
            if cond is not None:
                raise QasmError("conditioned measurement is not supported", ln, co)
            q = qubit(m.group(1), int(m.group(2)), ln, co)
            b = cbit(m.group(3), int(m.group(4)), ln, co)
            instrs.append(Instr("measure", (q,), bit=b))
            last_measure[q] = b
            continue
        m = _RE_GATE.match(stmt)
        if not m:
            raise QasmError(f"cannot parse {stmt!r}", ln, co)
        name, params, args = m.group(1), m.group(2), m.group(3)
        if name not in SUPPORTED:
            raise UnsupportedGate(f"unsupported gate {name!r}", ln, co)
        qs = []
        for a in [a.strip() for a in args.split(",")] if args.strip() else []:
            am = _RE_QARG.match(a)
            if not am:
                raise QasmError(f"bad qubit argument {a!r}", ln, co)
            qs.append(qubit(am.group(1), int(am.group(2)), ln, co))
        arity = 2 if name == "cx" else 1
        if len(qs) != arity:
            raise QasmError(f"{name} takes {arity} qubit(s), got {len(qs)}", ln, co)
        if (params is not None) != (name == "rz"):
            raise QasmError(f"{name} {'needs' if name == 'rz' else 'takes no'} parameter", ln, co)
        if name == "reset":
            # only the measure-then-reset pattern maps onto a conditioned flip
            q = qs[0]
            prev = instrs[-1] if instrs else None
            if cond is not None or prev is None or prev.name != "measure" or prev.qubits != (q,):
                raise UnsupportedGate("reset is supported only directly after measuring the same qubit", ln, co)
            instrs.append(Instr("x", (q,), cond=last_measure[q]))
            continue
        kw = {}
        if name == "rz":
            try:
                kw["angle"] = _parse_angle(params)
            except ValueError as e:
                raise QasmError(str(e), ln, co) from None
        instrs.append(Instr(name, tuple(qs), cond=cond, **kw))

    if implicit:
        n_q = max(used_q, default=-1) + 1
        n_c = max(used_c, default=-1) + 1
    c = LogicalCircuit(n_q, n_c, instrs)
    c.validate()
    return c


def _angle_text(theta: float) -> str:
    return f"{theta:.17g}"


def emit_qasm(c: LogicalCircuit) -> str:
    """Write the circuit in the supported subset.

    ``tlike`` blocks are spelled as z/s/t gates and ``phase`` becomes ``rz``
    (equal up to global phase); other free-angle gates must be lowered first.
    """
    lines = [HEADER.rstrip("\n")]
    if c.n_qubits:
        lines.append(f"qreg q[{c.n_qubits}];")
    lines += [f"creg c{b}[1];" for b in range(c.n_bits)]
    for ins in c:
        prefix = f"if (c{ins.cond}==1) " if ins.cond is not None else ""
        q = ", ".join(f"q[{i}]" for i in ins.qubits)
        if ins.name == "measure":
            lines.append(f"measure q[{ins.qubits[0]}] -> c{ins.bit}[0];")
        elif ins.name in ONE_QUBIT or ins.name == "cx":
            lines.append(f"{prefix}{ins.name} {q};")
        elif ins.name in ("rz", "phase"):
            lines.append(f"{prefix}rz({_angle_text(ins.angle)}) {q};")
        elif ins.name == "tlike":
            lines += [f"{prefix}{g} {q};" for g in DIAG_SPELLING[ins.k]]
        else:
            raise ValueError(f"{ins.name} is outside the QASM subset; lower it first")
    return "\n".join(lines) + "\n"


def normalize_qasm(text: str) -> str:
    """Canonical spacing: one statement per line, comments dropped."""
    out = []
    for stmt, _ in _statements(text):
        if stmt:
            s = re.sub(r"\s+", " ", stmt)
            s = re.sub(r"\s*([,\[\]()=>-])\s*", r"\1", s)
            out.append(s + ";")
    return "\n".join(out) + "\n"
