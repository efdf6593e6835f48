"""Levin search with pluggable resource metrics and conceptual-jump quantities.

Phase ``k`` grants every valid program ``p`` with ``len(p) <= k`` bits an
allowance of ``2**(k - len(p))`` units of the chosen metric.  Each phase
is charged its full clock of ``2**k`` units: the slices of valid programs
plus the slack left by bit strings with no valid prefix.  A trial never
costs less than one unit, so the empty program is not free.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .costgraph import ResourceVector, UnitSystem, build_graph, combine, measure
from .errors import NotFound
from .mixture import enumerate_programs
from .refmachine import Program, Status, TraceStep, dyadic, encode_question, run

METRICS = ("time", "volume", "energy", "total-energy")
IDEAL_FACTOR = 2
SCHEDULE_FACTOR = 4


@dataclass(frozen=True)
class Goal:
    kind: str
    target: str = ""
    samples: tuple = ()  # cpdf-agreement: ((q, P(answer=1|q)), ...)

    def __post_init__(self):
        if self.kind not in ("output-prefix", "exact-output", "cpdf-agreement"):
            raise ValueError(f"unknown goal kind {self.kind!r}")
        if self.kind == "cpdf-agreement" and not self.samples:
            raise ValueError("cpdf-agreement needs at least one sample")

    @classmethod
    def parse(cls, spec: str) -> "Goal":
        """``exact:11``, ``prefix:0101`` or ``cpdf:0=3/4,1=3/4``."""
        kind, _, body = spec.partition(":")
        if kind == "exact":
            return cls("exact-output", body)
        if kind == "prefix":
            return cls("output-prefix", body)
        if kind == "cpdf":
            samples = []
            for item in body.split(","):
                q, _, p = item.partition("=")
                samples.append((q.strip(), Fraction(p.strip())))
            return cls("cpdf-agreement", samples=tuple(samples))
        raise ValueError(f"cannot parse goal {spec!r}")

    def describe(self) -> str:
        if self.kind == "cpdf-agreement":
            body = ",".join(f"{q}={p}" for q, p in self.samples)
            return f"cpdf:{body}"
        return ("exact:" if self.kind == "exact-output" else "prefix:") + self.target


def metric_unit(metric: str, units: UnitSystem) -> Fraction:
    return {"time": Fraction(1), "volume": units.v_u, "energy": units.e_u,
            "total-energy": units.e_u}[metric]


def _demand(vector: ResourceVector, metric: str, units: UnitSystem) -> Fraction:
    # resource in metric units, floored at one unit per trial
    return max(Fraction(vector.get(metric)) / metric_unit(metric, units), Fraction(1))


def _prefix_steps(trace: tuple[TraceStep, ...], nbits: int) -> tuple[TraceStep, ...]:
    if nbits == 0:
        return ()
    emitted = 0
    for i, st in enumerate(trace):
        if st.bits_written:
            emitted += 1
            if emitted == nbits:
                return trace[:i + 1]
    raise AssertionError("output shorter than requested prefix")


def trial(program: Program, goal: Goal, metric: str, allowance: int,
          units: UnitSystem) -> tuple[bool, Optional[ResourceVector], Fraction]:
    """Run one program against the goal within ``allowance`` metric units.

    Returns ``(success, resources of the satisfying computation, units used)``.
    Every unit of metric costs at least one step, so ``allowance`` also caps steps.
    """
    if goal.kind == "cpdf-agreement":
        vectors = []
        used_steps = 0
        for q, p in goal.samples:
            steps = allowance - used_steps if metric == "time" else allowance
            r = run(program, encode_question(q), max(steps, 0))
            used_steps += r.steps
            vectors.append(measure(build_graph(r.trace, len(encode_question(q))), units))
            if r.status is not Status.HALTED or not r.output or dyadic(r.output) != p:
                return False, None, min(_demand(combine(vectors, units), metric, units), allowance)
        vec = combine(vectors, units)
        need = _demand(vec, metric, units)
        return need <= allowance, vec, min(need, allowance)

    r = run(program, "", allowance)
    if goal.kind == "exact-output":
        ok = r.status is Status.HALTED and r.output == goal.target
        steps = r.trace
    else:
        ok = r.output.startswith(goal.target)
        steps = _prefix_steps(r.trace, len(goal.target)) if ok else r.trace
    vec = measure(build_graph(steps, 0), units)
    need = _demand(vec, metric, units)
    if ok and need <= allowance:
        return True, vec, need
    return False, None, min(need, allowance)


@dataclass
class SearchOutcome:
    goal: Goal
    metric: str
    winner: Optional[Program]
    winner_resources: ResourceVector
    phase: int
    measured_cost: Fraction
    work_performed: Fraction
    cj_value: Fraction
    trials: int
    units: UnitSystem = field(default_factory=UnitSystem)


def levin_search(goal: Goal, metric: str = "time", max_phase: int = 32,
                 units: UnitSystem = UnitSystem(),
                 max_program_bits: Optional[int] = None) -> SearchOutcome:
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    if max_phase < 1:
        raise ValueError("max_phase must be >= 1")
    unit = metric_unit(metric, units)
    clock = Fraction(0)
    work = Fraction(0)
    trials = 0
    for k in range(1, max_phase + 1):
        clock += (1 << k) * unit
        cap = k if max_program_bits is None else min(k, max_program_bits)
        for program in enumerate_programs(cap) if cap >= 4 else ():
            allowance = 1 << (k - len(program))
            ok, vec, used = trial(program, goal, metric, allowance, units)
            trials += 1
            work += used * unit
            if ok:
                cj = conceptual_jump(program, vec, metric, units)
                return SearchOutcome(goal, metric, program, vec, k, clock, work, cj, trials, units)
    raise NotFound(f"{goal.describe()} not met within {max_phase} phases")


def conceptual_jump(winner: Program, winner_resources: ResourceVector, metric: str,
                    units: UnitSystem = UnitSystem()) -> Fraction:
    """``r(p) * 2**len(p)`` in physical units, with ``r`` floored at one metric unit."""
    unit = metric_unit(metric, units)
    return _demand(winner_resources, metric, units) * unit * (1 << len(winner))


@dataclass(frozen=True)
class SandwichReport:
    cj: Fraction
    measured_cost: Fraction
    ratio: Fraction
    passed: bool
    schedule_factor: int = SCHEDULE_FACTOR
    ideal_factor: int = IDEAL_FACTOR
    within_ideal_factor: bool = False


def verify_sandwich(outcome: SearchOutcome) -> SandwichReport:
    if outcome.winner is None:
        raise ValueError("outcome has no winner")
    cj, cost = outcome.cj_value, outcome.measured_cost
    ratio = cost / cj
    return SandwichReport(cj, cost, ratio, cj <= cost <= SCHEDULE_FACTOR * cj,
                          within_ideal_factor=cost <= IDEAL_FACTOR * cj)
