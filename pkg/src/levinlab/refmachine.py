"""Prefix-free reference machine.

Programs are sequences of 4-bit opcodes terminated by a mandatory END
group, which makes the set of valid programs prefix-free.  The machine is a
byte tape (cells wrap mod 256) with a binary input stream and a binary
output stream; PUT emits the low bit of the current cell.

    0000 RIGHT   0100 LOOP-OPEN    1111 END
    0001 LEFT    0101 LOOP-CLOSE   1000-1110 invalid
    0010 INC     0110 READ
    0011 DEC     0111 PUT
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import InvalidOpcode, MissingEnd, TrailingBits, UnbalancedLoop

RIGHT, LEFT, INC, DEC, LOOP_OPEN, LOOP_CLOSE, READ, PUT = range(8)
END = 0b1111
GROUP = 4

MNEMONICS = {RIGHT: ">", LEFT: "<", INC: "+", DEC: "-",
             LOOP_OPEN: "[", LOOP_CLOSE: "]", READ: ",", PUT: "."}
NAMES = {RIGHT: "RIGHT", LEFT: "LEFT", INC: "INC", DEC: "DEC",
         LOOP_OPEN: "LOOP-OPEN", LOOP_CLOSE: "LOOP-CLOSE", READ: "READ",
         PUT: "PUT", END: "END"}
_FROM_MNEMONIC = {v: k for k, v in MNEMONICS.items()}

# opcodes whose execution reads / writes the current cell
READS_CELL = frozenset({INC, DEC, LOOP_OPEN, LOOP_CLOSE, PUT})
WRITES_CELL = frozenset({INC, DEC, READ})


class Status(str, enum.Enum):
    HALTED = "halted"
    BUDGET_EXHAUSTED = "budget-exhausted"
    INPUT_BLOCKED = "input-blocked"
    CRASHED = "crashed"  # reserved, never produced by this ISA


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Program:
    bits: str
    instructions: tuple[int, ...]
    jumps: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.jumps is None:
            object.__setattr__(self, "jumps", _match_loops(self.instructions))

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return " ".join(self.bits[i:i + GROUP] for i in range(0, len(self.bits), GROUP))

    @property
    def mnemonic(self) -> str:
        return "".join(MNEMONICS[op] for op in self.instructions)


class TraceStep(NamedTuple):
    step: int
    opcode: int
    cell: int
    before: int
    after: int
    bits_read: str
    bits_written: str


@dataclass(frozen=True)
class RunResult:
    output: str
    status: Status
    steps: int
    trace: tuple[TraceStep, ...] = ()
    bits_consumed: int = 0


@dataclass(frozen=True)
class ResourceBudget:
    metric: str
    limit: Fraction

    def __post_init__(self):
        if self.metric not in ("time", "volume", "energy", "total-energy"):
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.limit < 0:
            raise ValueError("limit must be non-negative")


def _match_loops(ops):
    jumps, stack = {}, []
    for i, op in enumerate(ops):
        if op == LOOP_OPEN:
            stack.append(i)
        elif op == LOOP_CLOSE:
            if not stack:
                raise UnbalancedLoop(f"unmatched LOOP-CLOSE at instruction {i}")
            j = stack.pop()
            jumps[i], jumps[j] = j, i
    if stack:
        raise UnbalancedLoop(f"unmatched LOOP-OPEN at instruction {stack[-1]}")
    return jumps


def decode_prefix(bits: str) -> tuple[Program, int]:
    """Decode the program at the start of ``bits``; return it and the bits consumed."""
    ops = []
    for pos in range(0, len(bits) - GROUP + 1, GROUP):
        group = bits[pos:pos + GROUP]
        if len(group) < GROUP or set(group) - {"0", "1"}:
            break
        op = int(group, 2)
        if op == END:
            ops_t = tuple(ops)
            return Program(bits[:pos + GROUP], ops_t, _match_loops(ops_t)), pos + GROUP
        if op > PUT:
            raise InvalidOpcode(f"invalid opcode {group} at bit {pos}")
        ops.append(op)
    raise MissingEnd("no END group")


def decode(bits: str) -> Program:
    program, used = decode_prefix(bits)
    if used != len(bits):
        raise TrailingBits(f"{len(bits) - used} bits after END")
    return program


def assemble(source: str) -> Program:
    """Build a program from mnemonics, e.g. ``assemble("+.")`` is INC PUT END."""
    ops = [_FROM_MNEMONIC[ch] for ch in source if not ch.isspace()]
    return decode("".join(format(op, "04b") for op in ops) + "1111")


def parse_program_text(text: str) -> Program:
    """Parse a program file: ASCII 0/1 with optional whitespace, or hex nibbles."""
    s = "".join(text.split())
    if s.lower().startswith("0x"):
        s = s[2:]
    elif s and not set(s) - {"0", "1"}:
        return decode(s)
    if len(s) % 2:
        raise ValueError("hex program needs an even nibble count")
    return decode("".join(format(int(ch, 16), "04b") for ch in s))


def run(program: Program, input_bits: str = "", budget: int = 1000,
        trace: bool = True) -> RunResult:
    """Execute ``program`` for at most ``budget`` instructions."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    ops, jumps = program.instructions, program.jumps
    tape: dict[int, int] = {}
    head = pc = steps = consumed = 0
    out = []
    log = []
    n = len(ops)
    status = Status.HALTED
    while pc < n:
        if steps == budget:
            status = Status.BUDGET_EXHAUSTED
            break
        op = ops[pc]
        steps += 1
        cell = head
        before = tape.get(head, 0)
        after = before
        read = written = ""
        if op == RIGHT:
            head += 1
        elif op == LEFT:
            head -= 1
        elif op == INC:
            after = (before + 1) & 0xFF
            tape[head] = after
        elif op == DEC:
            after = (before - 1) & 0xFF
            tape[head] = after
        elif op == LOOP_OPEN:
            if before == 0:
                pc = jumps[pc]
        elif op == LOOP_CLOSE:
            if before != 0:
                pc = jumps[pc]
        elif op == READ:
            if consumed == len(input_bits):
                # the blocked READ is recorded: it is the step that demanded outside input
                if trace:
                    log.append(TraceStep(steps, op, cell, before, before, "", ""))
                status = Status.INPUT_BLOCKED
                break
            read = input_bits[consumed]
            consumed += 1
            after = int(read)
            tape[head] = after
        else:  # PUT
            written = "1" if before & 1 else "0"
            out.append(written)
        if trace:
            log.append(TraceStep(steps, op, cell, before, after, read, written))
        pc += 1
    return RunResult("".join(out), status, steps, tuple(log), consumed)


def prefix_verdict(result: RunResult, x: str) -> Verdict:
    """Classify a budgeted run against the monotone condition ``U(p) in x(0+1)*``."""
    out = result.output
    if out.startswith(x):
        return Verdict.YES
    if not x.startswith(out):
        return Verdict.NO
    if result.status in (Status.HALTED, Status.INPUT_BLOCKED, Status.CRASHED):
        return Verdict.NO
    return Verdict.UNKNOWN


def outputs_prefix(program: Program, x: str, budget: int) -> Verdict:
    return prefix_verdict(run(program, "", budget, trace=False), x)


def encode_question(q: str) -> str:
    """Self-delimiting encoding of a question: |q| ones, a zero, then q."""
    return "1" * len(q) + "0" + q


def dyadic(bits: str) -> Fraction:
    """Value of ``0.b1b2...bm`` in base 2."""
    return Fraction(int(bits, 2), 1 << len(bits))


def eval_cpdf(program: Program, q: str, budget: int) -> Fraction | None:
    """Probability that the answer is 1 given ``q``, or None if the model is inapplicable."""
    result = run(program, encode_question(q), budget, trace=False)
    if result.status is not Status.HALTED or not result.output:
        return None
    return dyadic(result.output)


def valid_mask(nbits: int) -> np.ndarray:
    """Validity of every ``nbits``-bit string, indexed by its integer value (MSB first)."""
    if nbits % GROUP or nbits == 0:
        return np.zeros(1 << nbits, dtype=bool)
    groups = nbits // GROUP
    words = np.arange(1 << nbits, dtype=np.uint32)
    ok = np.ones(words.shape, dtype=bool)
    depth = np.zeros(words.shape, dtype=np.int16)
    for g in range(groups):
        op = (words >> np.uint32(GROUP * (groups - 1 - g))) & np.uint32(0xF)
        if g == groups - 1:
            ok &= op == END
        else:
            ok &= op <= PUT
            depth += (op == LOOP_OPEN).astype(np.int16)
            depth -= (op == LOOP_CLOSE).astype(np.int16)
            ok &= depth >= 0
    ok &= depth == 0
    return ok


def prefix_free_scan(max_bits: int) -> tuple[list[int], int]:
    """Exhaustively test prefix-freeness over every bit string of up to ``max_bits`` bits.

    Returns the number of valid strings at each length 0..max_bits and the
    number of valid strings that have a valid proper prefix.
    """
    counts = [0]
    violations = 0
    prev_valid = np.zeros(1, dtype=bool)      # length-0 string is not a program
    prev_covered = np.zeros(1, dtype=bool)    # has a valid proper prefix
    for n in range(1, max_bits + 1):
        parent = np.arange(1 << n, dtype=np.uint32) >> np.uint32(1)
        covered = prev_covered[parent] | prev_valid[parent]
        valid = valid_mask(n)
        violations += int(np.count_nonzero(valid & covered))
        counts.append(int(np.count_nonzero(valid)))
        prev_valid, prev_covered = valid, covered
    return counts, violations
