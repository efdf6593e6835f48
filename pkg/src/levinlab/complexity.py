"""Budgeted entropy estimates, logical profiles and physical-limit calculators.

None of the entropy values here are the true (uncomputable) quantities:
each is an upper bound witnessed by a concrete program.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .costgraph import UnitSystem, build_graph, measure
from .errors import NotFound
from .mixture import EnumerationBudget, alp_lower_bound, survey
from .refmachine import Program, Status, run

QUOTED_OPS_PER_JOULE = 3.32e33
LLOYD_UNIVERSE_OPS = 10**120
LLOYD_BLACK_HOLE_OPS = 10**51


class Bits(NamedTuple):
    bits: float
    witness: Program


def _exact_producers(x: str, budget: EnumerationBudget):
    for t in survey(budget):
        if t.result.status is Status.HALTED and t.result.output == x:
            yield t.program


def entropy_upper(x: str, budget: EnumerationBudget) -> Bits:
    """Length of the first enumerated program that halts printing exactly ``x``."""
    for program in _exact_producers(x, budget):
        return Bits(float(len(program)), program)
    raise NotFound(f"no program of <= {budget.max_program_bits} bits prints {x!r}")


def run_energy(program: Program, units: UnitSystem, step_budget: int,
               input_bits: str = "") -> Fraction:
    r = run(program, input_bits, step_budget)
    return measure(build_graph(r.trace, len(input_bits)), units).energy


def energy_bounded_entropy(x: str, budget: EnumerationBudget,
                           units: UnitSystem = UnitSystem()) -> Bits:
    """Minimum of ``len(p) + log2(E(p)/e_u)`` over exact producers of ``x``.

    Energy is floored at one unit so the empty run is not free; ties keep
    the earliest program in (length, lexicographic) order.
    """
    best: Optional[Bits] = None
    for program in _exact_producers(x, budget):
        if best is not None and len(program) >= best.bits:
            break  # log term is non-negative, longer programs cannot win
        e = max(run_energy(program, units, budget.allowance(len(program))) / units.e_u,
                Fraction(1))
        value = len(program) + math.log2(e)
        if best is None or value < best.bits:
            best = Bits(value, program)
    if best is None:
        raise NotFound(f"no program of <= {budget.max_program_bits} bits prints {x!r}")
    return best


@dataclass
class ComplexityReport:
    subject: str
    H_upper: Bits
    H_coding: Optional[float]
    H_e: Bits
    prior: Fraction


def complexity_report(x: str, budget: EnumerationBudget,
                      units: UnitSystem = UnitSystem()) -> ComplexityReport:
    prior = alp_lower_bound(x, budget).value
    coding = -math.log2(prior) if prior > 0 else None
    return ComplexityReport(x, entropy_upper(x, budget), coding,
                            energy_bounded_entropy(x, budget, units), prior)


@dataclass(frozen=True)
class LogicalProfile:
    depth: int
    volume: Fraction
    energy: Fraction
    total_energy: Fraction
    space: Fraction
    witness: Program


def logical_profile(winner: Program, input_bits: str = "",
                    units: UnitSystem = UnitSystem(), step_budget: int = 10_000) -> LogicalProfile:
    r = run(winner, input_bits, step_budget)
    if r.status is not Status.HALTED:
        raise RuntimeError(f"{winner} did not halt within {step_budget} steps ({r.status.value})")
    v = measure(build_graph(r.trace, len(input_bits)), units)
    return LogicalProfile(r.steps, v.volume, v.energy, v.total_energy, v.space, winner)


def landauer_limit(T: float, units: UnitSystem = UnitSystem()) -> float:
    """Minimum energy in joules to erase one bit at temperature ``T`` kelvin."""
    if T < 0:
        raise ValueError("temperature must be non-negative")
    return float(units.k) * T * math.log(2)


def margolus_levitin_ops(E: float, units: UnitSystem = UnitSystem()) -> float:
    """Maximum elementary operations per second at average energy ``E`` joules."""
    if E < 0:
        raise ValueError("energy must be non-negative")
    return 2 * E / float(units.h)


def max_learnable_complexity(op_budget, logical_volume) -> float:
    """Largest algorithmic complexity (bits) a search can be guaranteed to reach.

    From ``logical_volume * 2**(H + 1) <= op_budget``.
    """
    if not 0 < logical_volume <= op_budget:
        raise ValueError("need op_budget >= logical_volume > 0")
    return math.log2(op_budget) - math.log2(logical_volume) - 1
