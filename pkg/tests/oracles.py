"""Independent reference implementations used only by the tests.

Nothing here imports the package's machine or enumerator, so agreement with
them is evidence rather than tautology.
"""
import math
from collections import defaultdict
from fractions import Fraction
from itertools import product

OPS = "><+-[],."


def is_valid(bits: str) -> bool:
    if len(bits) % 4 or not bits:
        return False
    groups = [bits[i:i + 4] for i in range(0, len(bits), 4)]
    if groups[-1] != "1111" or "1111" in groups[:-1]:
        return False
    depth = 0
    for g in groups[:-1]:
        v = int(g, 2)
        if v >= 8:
            return False
        depth += (v == 4) - (v == 5)
        if depth < 0:
            return False
    return depth == 0


def all_strings(max_len: int):
    for n in range(max_len + 1):
        for tup in product("01", repeat=n):
            yield "".join(tup)


def valid_programs(max_len: int) -> list[str]:
    return [s for s in all_strings(max_len) if is_valid(s)]


def to_source(bits: str) -> str:
    return "".join(OPS[int(bits[i:i + 4], 2)] for i in range(0, len(bits) - 4, 4))


def interpret(bits: str, inp: str = "", budget: int = 1000, log=None):
    """Tiny brainfuck-style interpreter: returns (output, status, steps).

    If ``log`` is a list, ``(op_char, cell)`` is appended for every step taken.
    """
    code = to_source(bits)
    tape = defaultdict(int)
    ptr = pc = steps = k = 0
    out = []
    while pc < len(code):
        if steps >= budget:
            return "".join(out), "budget-exhausted", steps
        ch = code[pc]
        steps += 1
        if log is not None:
            log.append((ch, ptr))
        if ch == ">":
            ptr += 1
        elif ch == "<":
            ptr -= 1
        elif ch == "+":
            tape[ptr] = (tape[ptr] + 1) % 256
        elif ch == "-":
            tape[ptr] = (tape[ptr] - 1) % 256
        elif ch == ",":
            if k >= len(inp):
                return "".join(out), "input-blocked", steps
            tape[ptr] = int(inp[k])
            k += 1
        elif ch == ".":
            out.append(str(tape[ptr] % 2))
        elif ch == "[" and tape[ptr] == 0:
            depth = 1
            while depth:
                pc += 1
                depth += {"[": 1, "]": -1}.get(code[pc], 0)
        elif ch == "]" and tape[ptr] != 0:
            depth = 1
            while depth:
                pc -= 1
                depth += {"]": 1, "[": -1}.get(code[pc], 0)
        pc += 1
    return "".join(out), "halted", steps


def graph_size(bits: str, inp: str = "", budget: int = 1000) -> int:
    """|V| + |E| of the cost graph, counted straight from the step log.

    Op t reads cell state t-1 (for + - [ ] .) and writes state t (for + - ,).
    A cell contributes one vertex per state index between its first and last
    touched index.  Each read/write/input/output is one edge, plus op-to-op
    control edges.
    """
    log = []
    interpret(bits, inp, budget, log)
    touched = defaultdict(list)
    edges = max(len(log) - 1, 0)
    outputs = consumed = extra_inputs = 0
    for t, (ch, cell) in enumerate(log, start=1):
        if ch in "+-[].":
            touched[cell].append(t - 1)
            edges += 1
        if ch == ",":
            edges += 1
            if consumed >= len(inp):
                extra_inputs += 1
                continue
            consumed += 1
        if ch in "+-,":
            touched[cell].append(t)
            edges += 1
        if ch == ".":
            outputs += 1
            edges += 1
    cells = sum(max(ix) - min(ix) + 1 for ix in touched.values())
    return len(log) + cells + len(inp) + extra_inputs + outputs + edges


def brute_prior(x: str, max_len: int, budget: int) -> Fraction:
    total = Fraction(0)
    for p in valid_programs(max_len):
        out, _, _ = interpret(p, "", budget)
        if out.startswith(x):
            total += Fraction(1, 2 ** len(p))
    return total


def brute_expected_time(x: str, max_len: int, budget: int) -> Fraction:
    total = Fraction(0)
    for p in valid_programs(max_len):
        out, _, steps = interpret(p, "", budget)
        if out.startswith(x):
            total += Fraction(steps, 2 ** len(p))
    return total


def brute_exact_producers(x: str, max_len: int, budget: int) -> list[str]:
    return [p for p in valid_programs(max_len)
            if interpret(p, "", budget)[:2] == (x, "halted")]


def brute_entropies(x: str, max_len: int, budget: int):
    """(H_upper, H_e with e_u = 1) by exhaustive minimisation, or None if unreachable."""
    best_len, best_e = None, None
    for p in brute_exact_producers(x, max_len, budget):
        if best_len is None:
            best_len = len(p)
        value = len(p) + math.log2(max(graph_size(p, "", budget), 1))
        if best_e is None or value < best_e:
            best_e = value
    return best_len, best_e


def valid_programs_by_opcodes(max_len: int) -> list[str]:
    """Same set as valid_programs, built from opcode tuples so 24 bits stays cheap."""
    out = []
    for groups in range(1, max_len // 4 + 1):
        for ops in product(range(8), repeat=groups - 1):
            bits = "".join(format(op, "04b") for op in ops) + "1111"
            if is_valid(bits):
                out.append(bits)
    return out


def cpdf(bits: str, q: str, budget: int):
    out, status, _ = interpret(bits, "1" * len(q) + "0" + q, budget)
    if status != "halted" or not out:
        return None
    return Fraction(int(out, 2), 2 ** len(out))
