"""Sequence prediction trials and operator induction."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional, Sequence

from .errors import NoModels, NotFound
from .mixture import (EnumerationBudget, normalized_prior, predict_next, programs_of_length,
                      survey)
from .refmachine import Program, Verdict, assemble, eval_cpdf, prefix_verdict, run

HALF = Fraction(1, 2)
# rational strictly below ln 2, so comparisons against the bound are certified
LN2_LOWER = Fraction(6931471805599453, 10**16)


@dataclass(frozen=True)
class Source:
    """A computable source together with a closed-form law used as the oracle.

    For ``deterministic-sequence`` sources ``exact_law(prefix)`` is the
    probability that the next bit is 1; for ``cpdf`` sources
    ``exact_law(q)`` is the probability that the answer to ``q`` is 1.
    """
    name: str
    kind: str
    generator: Program
    exact_law: Callable[[str], Fraction]

    def sample(self, n: int, budget: int = 10_000) -> str:
        if self.kind != "deterministic-sequence":
            raise TypeError("only sequence sources emit a sequence")
        out = run(self.generator, "", budget, trace=False).output
        if len(out) < n:
            raise ValueError(f"{self.name} emitted only {len(out)} bits within {budget} steps")
        return out[:n]


ALL_ONES = Source("all-ones", "deterministic-sequence", assemble("+[.]"),
                  lambda prefix: Fraction(1))
ALTERNATING = Source("alternating", "deterministic-sequence", assemble("+[+.]"),
                     lambda prefix: Fraction(len(prefix) % 2))
FAIR_COIN = Source("fair-coin", "cpdf", assemble("+."), lambda q: HALF)
BIASED_COIN = Source("three-quarters", "cpdf", assemble("+.."), lambda q: Fraction(3, 4))
# skip the unary length header, then echo the first payload bit as 0.b
ECHO = Source("echo-first-bit", "cpdf", assemble(",[,],."),
              lambda q: HALF if q[:1] == "1" else Fraction(0))

SOURCES = {s.name: s for s in (ALL_ONES, ALTERNATING, FAIR_COIN, BIASED_COIN, ECHO)}


class TrialStep(NamedTuple):
    step: int
    prediction: Fraction
    truth: Fraction
    sq_error: Fraction
    cumulative: Fraction


@dataclass
class SequenceTrial:
    source: str
    sequence: str
    steps: list
    total: Fraction
    bound: float
    witness: Program
    prefixes: dict  # P'(prefix) for every prefix the predictor was asked about

    @property
    def errors(self) -> list:
        return [s.sq_error for s in self.steps]

    @property
    def holds(self) -> bool:
        return self.total <= Fraction(len(self.witness), 2) * LN2_LOWER


def shortest_generator(x: str, budget: EnumerationBudget) -> Program:
    """First enumerated program whose budgeted output extends ``x``."""
    for t in survey(budget):
        if prefix_verdict(t.result, x) is Verdict.YES:
            return t.program
    raise NotFound(f"no program of <= {budget.max_program_bits} bits extends {x!r}")


def sequence_trial(source: Source, n: int, budget: EnumerationBudget) -> SequenceTrial:
    """Predict ``n`` bits of ``source`` and compare against the squared-error bound."""
    if source.kind != "deterministic-sequence":
        raise TypeError("sequence trials need a deterministic-sequence source")
    x = source.sample(n) if n else ""
    steps = []
    total = Fraction(0)
    prefixes = {"": Fraction(1)}
    for m in range(n):
        prefix = x[:m]
        _, p1 = predict_next(prefix, budget)
        truth = source.exact_law(prefix)
        err = (p1 - truth) ** 2
        total += err
        steps.append(TrialStep(m + 1, p1, truth, err, total))
        prefixes[prefix] = normalized_prior(prefix, budget)
    witness = shortest_generator(x, budget)
    bound = 0.5 * len(witness) * math.log(2)
    return SequenceTrial(source.name, x, steps, total, bound, witness, prefixes)


@dataclass(frozen=True)
class OperatorModel:
    program: Program
    length_bits: int
    psi: Fraction
    per_pair: tuple  # O(a_i | q_i) for each training pair


def answer_prob(p_one: Optional[Fraction], a: str) -> Fraction:
    if p_one is None:
        return Fraction(0)
    return p_one if a == "1" else 1 - p_one


def fit_weight(length_bits: int, per_pair: Sequence[Fraction]) -> Fraction:
    psi = Fraction(1, 1 << length_bits)
    for v in per_pair:
        psi *= v
    return psi


@dataclass
class OperatorFit:
    models: list
    Psi: Fraction


def operator_fit(pairs: Sequence[tuple[str, str]], budget: EnumerationBudget) -> OperatorFit:
    """Weigh every enumerated program as a conditional model of the answers."""
    if not pairs:
        raise ValueError("need at least one (question, answer) pair")
    questions = sorted({q for q, _ in pairs})
    models = []
    for nbits in range(4, budget.max_program_bits + 1, 4):
        steps = budget.allowance(nbits)
        for program in programs_of_length(nbits):
            o = {q: eval_cpdf(program, q, steps) for q in questions}
            per_pair = tuple(answer_prob(o[q], a) for q, a in pairs)
            psi = fit_weight(len(program), per_pair)
            if psi > 0:
                models.append(OperatorModel(program, len(program), psi, per_pair))
    if not models:
        raise NoModels(f"no model gives the data positive probability at {budget}")
    models.sort(key=lambda m: -m.psi)  # stable: ties stay in (length, lex) order
    return OperatorFit(models, sum((m.psi for m in models), Fraction(0)))


class OperatorPrediction(NamedTuple):
    p_one: Fraction  # normalized by the total weight
    raw: Fraction    # unnormalized weighted sum
    undefined: tuple  # models that gave no answer on q and were counted as 1/2


def operator_predict(models: Sequence[OperatorModel], q: str,
                     step_budget: int = 256) -> OperatorPrediction:
    total = sum((m.psi for m in models), Fraction(0))
    if not models or total <= 0:
        raise ValueError("need models with positive total weight")
    raw = Fraction(0)
    undefined = []
    for m in models:
        p = eval_cpdf(m.program, q, step_budget)
        if p is None:
            undefined.append(m.program)
            p = HALF
        raw += m.psi * p
    return OperatorPrediction(raw / total, raw, tuple(undefined))


def read_pairs(text: str) -> list[tuple[str, str]]:
    """Parse a pairs file: one ``q_bits<TAB>a_bit`` per line."""
    pairs = []
    for line in text.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        q, a = line.split("\t")
        q, a = q.strip(), a.strip()
        if set(q) - {"0", "1"} or a not in ("0", "1"):
            raise ValueError(f"bad pair line {line!r}")
        pairs.append((q, a))
    return pairs
