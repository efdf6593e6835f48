"""Exhaustive budgeted approximation of the universal prior.

All sums are exact ``Fraction`` values over dyadic weights ``2**-len(p)``.
Programs whose verdict is still unknown at the budget are left out, so
every estimate here is a certified lower bound.
"""
from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

from .errors import ZeroMixture
from .refmachine import (END, GROUP, LOOP_CLOSE, LOOP_OPEN, PUT, Program, RunResult,
                         Status, Verdict, decode, prefix_verdict, run)


@dataclass(frozen=True)
class EnumerationBudget:
    """How much of program space an estimate looks at.

    ``fixed`` runs every program of at most ``max_program_bits`` bits for
    ``step_budget`` steps.  ``dovetail`` runs phases k = 1, 2, ... in which a
    program of g opcode groups gets ``2**(k-g)`` steps; the last phase gives
    the one-group program ``step_budget`` steps and halves the allowance for
    every further group.
    """
    max_program_bits: int = 16
    step_budget: int = 256
    schedule: str = "fixed"

    def __post_init__(self):
        if self.max_program_bits < GROUP or self.step_budget < 1:
            raise ValueError("caps must be positive (max_program_bits >= 4)")
        if self.schedule not in ("fixed", "dovetail"):
            raise ValueError(f"unknown schedule {self.schedule!r}")

    @property
    def final_phase(self) -> int:
        return (self.step_budget.bit_length() - 1) + 1

    def phase_allowance(self, phase: int, nbits: int) -> int:
        groups = nbits // GROUP
        return 1 << (phase - groups) if groups <= phase else 0

    def allowance(self, nbits: int) -> int:
        if self.schedule == "fixed":
            return self.step_budget
        return self.phase_allowance(self.final_phase, nbits)

    def phases(self) -> Iterator[tuple[int, dict[int, int]]]:
        """Dovetail phases as ``(k, {nbits: allowance})`` in increasing k."""
        lengths = range(GROUP, self.max_program_bits + 1, GROUP)
        last = self.final_phase if self.schedule == "dovetail" else 1
        for k in range(1, last + 1):
            if self.schedule == "fixed":
                yield k, {n: self.step_budget for n in lengths}
            else:
                yield k, {n: self.phase_allowance(k, n) for n in lengths
                          if self.phase_allowance(k, n) > 0}


def _opcode_strings(slots: int, depth: int = 0) -> Iterator[tuple[int, ...]]:
    # lexicographic over opcodes 0..7, keeping loop depth closable in the slots left
    if slots == 0:
        if depth == 0:
            yield ()
        return
    for op in range(PUT + 1):
        d = depth + (op == LOOP_OPEN) - (op == LOOP_CLOSE)
        if d < 0 or d > slots - 1:
            continue
        for rest in _opcode_strings(slots - 1, d):
            yield (op,) + rest


def programs_of_length(nbits: int) -> Iterator[Program]:
    if nbits % GROUP or nbits < GROUP:
        return
    end = format(END, "04b")
    for ops in _opcode_strings(nbits // GROUP - 1):
        yield decode("".join(format(op, "04b") for op in ops) + end)


def enumerate_programs(max_bits: int) -> Iterator[Program]:
    """Every valid program of at most ``max_bits`` bits, in (length, lexicographic) order."""
    for nbits in range(GROUP, max_bits + 1, GROUP):
        yield from programs_of_length(nbits)


@functools.lru_cache(maxsize=None)
def kraft_sum(max_bits: int) -> Fraction:
    return sum((Fraction(1, 1 << len(p)) for p in enumerate_programs(max_bits)), Fraction(0))


class Trial(NamedTuple):
    program: Program
    result: RunResult
    allowance: int


def _run_lengths(args):
    lengths, budget = args
    out = []
    for nbits in lengths:
        steps = budget.allowance(nbits)
        for p in programs_of_length(nbits):
            out.append(Trial(p, run(p, "", steps, trace=False), steps))
    return out


_SURVEYS: dict[EnumerationBudget, tuple[Trial, ...]] = {}


def survey(budget: EnumerationBudget, workers: int = 1) -> tuple[Trial, ...]:
    """Run every enumerated program on empty input at its allowance.

    With ``workers > 1`` program lengths are dealt out by residue to worker
    processes; results are merged back into (length, lexicographic) order, so
    the outcome does not depend on the worker count.  Results are memoised
    per budget.
    """
    if budget in _SURVEYS:
        return _SURVEYS[budget]
    lengths = list(range(GROUP, budget.max_program_bits + 1, GROUP))
    if workers <= 1:
        trials = _run_lengths((lengths, budget))
    else:
        parts = [(lengths[i::workers], budget) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            trials = [t for chunk in pool.map(_run_lengths, parts) for t in chunk]
        trials.sort(key=lambda t: (len(t.program), t.program.bits))
    _SURVEYS[budget] = result = tuple(trials)
    return result


@dataclass(frozen=True)
class PriorEstimate:
    value: Fraction
    contributing: tuple = ()
    budget: EnumerationBudget = field(default_factory=EnumerationBudget)
    unknown: int = 0


def alp_lower_bound(x: str, budget: EnumerationBudget, workers: int = 1) -> PriorEstimate:
    """Lower bound on the algorithmic probability that the output starts with ``x``."""
    value = Fraction(0)
    contributing = []
    unknown = 0
    for trial in survey(budget, workers):
        verdict = prefix_verdict(trial.result, x)
        if verdict is Verdict.YES:
            w = Fraction(1, 1 << len(trial.program))
            value += w
            contributing.append((trial.program, w, trial.result.status))
        elif verdict is Verdict.UNKNOWN:
            unknown += 1
    return PriorEstimate(value, tuple(contributing), budget, unknown)


@functools.lru_cache(maxsize=None)
def _alp(x: str, budget: EnumerationBudget) -> Fraction:
    return alp_lower_bound(x, budget).value


def normalized_prior(x: str, budget: EnumerationBudget) -> Fraction:
    """Normalized sequence probability, built up bit by bit from P'(empty) = 1."""
    p = Fraction(1)
    for i, bit in enumerate(x):
        prefix = x[:i]
        p0, p1 = _alp(prefix + "0", budget), _alp(prefix + "1", budget)
        if p0 + p1 == 0:
            raise ZeroMixture(f"no mass on either extension of {prefix!r} at {budget}")
        p = p * (p0 if bit == "0" else p1) / (p0 + p1)
    return p


def predict_next(x: str, budget: EnumerationBudget) -> tuple[Fraction, Fraction]:
    """Conditionals ``(P'(x0|x), P'(x1|x))``; they always sum to 1."""
    px = normalized_prior(x, budget)
    if px == 0:
        raise ZeroMixture(f"prefix {x!r} already has zero normalized mass at {budget}")
    p0 = normalized_prior(x + "0", budget) / px
    p1 = normalized_prior(x + "1", budget) / px
    return p0, p1


class MixtureTime(NamedTuple):
    value: Fraction
    truncated: int  # qualifying programs still running at the budget


def mixture_expected_time(x: str, budget: EnumerationBudget) -> MixtureTime:
    """Sum of ``t(p) * 2**-len(p)`` over programs whose output extends ``x``.

    Programs still running at their allowance contribute the steps spent so
    far, which makes the value a lower bound when ``truncated > 0``.
    """
    value = Fraction(0)
    truncated = 0
    for trial in survey(budget):
        if prefix_verdict(trial.result, x) is Verdict.YES:
            value += Fraction(trial.result.steps, 1 << len(trial.program))
            if trial.result.status is Status.BUDGET_EXHAUSTED:
                truncated += 1
    return MixtureTime(value, truncated)
