"""Circuit representation and the SDIM text format.

An SDIM file is line oriented: a DIM header, a QUDITS header, then one
instruction per line.  '#' starts a comment.  Gate lines use the canonical
names below; H/H_INV and CNOT/CNOT_INV are accepted as aliases of F/F_INV
and SUM/SUM_INV on input and normalized on output.

    DIM 3
    QUDITS 2
    F 0          # Fourier gate
    SUM 0 1      # control first
    N1 0 d 0.1   # single-qudit noise: f=flip, p=phase, d=depolarizing
    M 0
    RESET 1

Parse errors carry 1-based line and column of the offending token.
round trip: parse_sdim(serialize_sdim(c)) equals c on (qudits, dimension,
instructions); metadata is emitted as comments and not recovered.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, ShapeError
from .pauli import Dimension, _as_dimension

GATE_ARITY = {
    "X": 1, "X_INV": 1, "Z": 1, "Z_INV": 1,
    "F": 1, "F_INV": 1, "P": 1, "P_INV": 1,
    "SUM": 2, "SUM_INV": 2,
}
GATE_ALIASES = {"H": "F", "H_INV": "F_INV", "CNOT": "SUM", "CNOT_INV": "SUM_INV"}
NOISE_KINDS = ("f", "p", "d")


@dataclass(frozen=True)
class Instruction:
    """One circuit step: a gate, M, RESET, or N1 with its channel and rate."""

    name: str
    qudits: tuple
    noise_channel: str = None
    prob: float = None

    def __str__(self) -> str:
        body = " ".join(str(q) for q in self.qudits)
        if self.name == "N1":
            return f"N1 {body} {self.noise_channel} {self.prob!r}"
        return f"{self.name} {body}"


@dataclass(frozen=True)
class MeasurementRecord:
    """One measurement result.

    seq is the 0-based position of the measurement in program order, so
    sequence numbers are strictly increasing per qudit.  deterministic is
    true when the outcome was fully fixed by the state (given all earlier
    outcomes of the same shot).
    """

    qudit: int
    seq: int
    deterministic: bool
    outcome: int


class Circuit:
    """An ordered list of instructions on num_qudits qudits of dimension d."""

    def __init__(self, num_qudits: int, dimension):
        dim = _as_dimension(dimension)
        if num_qudits < 1:
            raise ShapeError(f"need at least 1 qudit, got {num_qudits}")
        self.num_qudits = int(num_qudits)
        self.dimension = dim
        self.instructions: list[Instruction] = []
        self.metadata: dict = {}

    def add_gate(self, name: str, *qudits: int, noise_channel: str = None,
                 prob: float = None) -> "Circuit":
        """Append an instruction; accepts gate names, aliases, M, RESET, N1."""
        name = GATE_ALIASES.get(name, name)
        qudits = tuple(int(q) for q in qudits)
        for q in qudits:
            if not 0 <= q < self.num_qudits:
                raise ShapeError(
                    f"qudit index {q} out of range for {self.num_qudits} qudits")
        if name in GATE_ARITY:
            if len(qudits) != GATE_ARITY[name]:
                raise ShapeError(
                    f"{name} takes {GATE_ARITY[name]} qudit(s), got {len(qudits)}")
            if len(qudits) == 2 and qudits[0] == qudits[1]:
                raise ShapeError(f"{name} needs two distinct qudits")
            if noise_channel is not None or prob is not None:
                raise ShapeError(f"{name} does not take noise arguments")
            self.instructions.append(Instruction(name, qudits))
        elif name in ("M", "RESET"):
            if len(qudits) != 1:
                raise ShapeError(f"{name} takes 1 qudit, got {len(qudits)}")
            if noise_channel is not None or prob is not None:
                raise ShapeError(f"{name} does not take noise arguments")
            self.instructions.append(Instruction(name, qudits))
        elif name == "N1":
            if len(qudits) != 1:
                raise ShapeError(f"N1 takes 1 qudit, got {len(qudits)}")
            if noise_channel not in NOISE_KINDS:
                raise ShapeError(
                    f"noise channel must be one of {NOISE_KINDS}, got {noise_channel!r}")
            prob = float(prob)
            if not 0.0 <= prob <= 1.0:
                raise ShapeError(f"noise probability {prob} outside [0, 1]")
            self.instructions.append(Instruction("N1", qudits, noise_channel, prob))
        else:
            raise ShapeError(f"unknown instruction name {name!r}")
        return self

    @property
    def num_measurements(self) -> int:
        return sum(1 for ins in self.instructions if ins.name == "M")

    def copy(self) -> "Circuit":
        out = Circuit(self.num_qudits, self.dimension)
        out.instructions = list(self.instructions)
        out.metadata = dict(self.metadata)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (self.num_qudits == other.num_qudits
                and self.dimension.d == other.dimension.d
                and self.instructions == other.instructions)

    def __repr__(self) -> str:
        return (f"Circuit(n={self.num_qudits}, d={self.dimension.d}, "
                f"{len(self.instructions)} instructions)")


def serialize_sdim(circuit: Circuit, include_metadata: bool = True) -> str:
    lines = []
    if include_metadata:
        lines += [f"# {key}: {value}" for key, value in circuit.metadata.items()]
    lines.append(f"DIM {circuit.dimension.d}")
    lines.append(f"QUDITS {circuit.num_qudits}")
    lines += [str(ins) for ins in circuit.instructions]
    return "\n".join(lines) + "\n"


def _tokens_with_columns(line: str):
    code = line.split("#", 1)[0]
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", code)]


def _parse_int(token: str, line_no: int, col: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line_no, col, f"{what} must be an integer, got {token!r}")


def parse_sdim(text: str) -> Circuit:
    """Parse SDIM text into a Circuit; raises ParseError with line/column."""
    dim = None
    n = None
    circuit = None
    saw_any = False
    for line_no, line in enumerate(text.splitlines(), start=1):
        toks = _tokens_with_columns(line)
        if not toks:
            continue
        saw_any = True
        (head, head_col) = toks[0]
        if dim is None:
            if head != "DIM":
                raise ParseError(line_no, head_col, f"expected DIM header, got {head!r}")
            if len(toks) != 2:
                raise ParseError(line_no, head_col, "DIM takes exactly one value")
            value = _parse_int(toks[1][0], line_no, toks[1][1], "dimension")
            if value < 2:
                raise ParseError(line_no, toks[1][1], f"dimension must be >= 2, got {value}")
            dim = Dimension(value)
            continue
        if n is None:
            if head != "QUDITS":
                raise ParseError(line_no, head_col, f"expected QUDITS header, got {head!r}")
            if len(toks) != 2:
                raise ParseError(line_no, head_col, "QUDITS takes exactly one value")
            n = _parse_int(toks[1][0], line_no, toks[1][1], "qudit count")
            if n < 1:
                raise ParseError(line_no, toks[1][1], f"qudit count must be >= 1, got {n}")
            circuit = Circuit(n, dim)
            continue

        name = GATE_ALIASES.get(head, head)
        if name in GATE_ARITY or name in ("M", "RESET"):
            arity = GATE_ARITY.get(name, 1)
            if len(toks) != 1 + arity:
                raise ParseError(line_no, head_col,
                                 f"{head} takes {arity} qudit argument(s)")
            qudits = []
            for tok, col in toks[1:]:
                q = _parse_int(tok, line_no, col, "qudit index")
                if not 0 <= q < n:
                    raise ParseError(line_no, col,
                                     f"qudit index {q} out of range for {n} qudits")
                qudits.append(q)
            if arity == 2 and qudits[0] == qudits[1]:
                raise ParseError(line_no, toks[2][1],
                                 f"{head} needs two distinct qudits")
            circuit.instructions.append(Instruction(name, tuple(qudits)))
        elif name == "N1":
            if len(toks) != 4:
                raise ParseError(line_no, head_col,
                                 "N1 takes qudit, channel and probability")
            q = _parse_int(toks[1][0], line_no, toks[1][1], "qudit index")
            if not 0 <= q < n:
                raise ParseError(line_no, toks[1][1],
                                 f"qudit index {q} out of range for {n} qudits")
            kind, kind_col = toks[2]
            if kind not in NOISE_KINDS:
                raise ParseError(line_no, kind_col,
                                 f"noise channel must be one of {'/'.join(NOISE_KINDS)}, "
                                 f"got {kind!r}")
            prob_tok, prob_col = toks[3]
            try:
                prob = float(prob_tok)
            except ValueError:
                raise ParseError(line_no, prob_col,
                                 f"probability must be a number, got {prob_tok!r}")
            if not 0.0 <= prob <= 1.0:
                raise ParseError(line_no, prob_col,
                                 f"probability {prob} outside [0, 1]")
            circuit.instructions.append(Instruction("N1", (q,), kind, prob))
        else:
            raise ParseError(line_no, head_col, f"unknown instruction {head!r}")
    if circuit is None:
        if saw_any:
            raise ParseError(1, 1, "missing QUDITS header")
        raise ParseError(1, 1, "empty input: missing DIM header")
    return circuit
