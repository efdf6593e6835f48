"""Workbench configuration.

The config file is flat ``key = value`` text; ``#`` starts a comment.
Recognised keys::

    v_u e_u s_u m_u c k h          unit system (exact decimals or fractions)
    max_program_bits step_budget   enumeration defaults
    schedule                       fixed | dovetail
    out format seed workers        output directory, json|csv, RNG seed, processes
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, fields
from pathlib import Path

from .costgraph import UnitSystem
from .mixture import EnumerationBudget

UNIT_KEYS = ("v_u", "e_u", "s_u", "m_u", "c", "k", "h")
BUDGET_KEYS = ("max_program_bits", "step_budget", "schedule")


@dataclass(frozen=True)
class WorkbenchConfig:
    units: UnitSystem = field(default_factory=UnitSystem)
    enumeration: EnumerationBudget = field(default_factory=EnumerationBudget)
    out: str = "reports"
    format: str = "json"
    seed: int = 0
    workers: int = 1

    def as_dict(self) -> dict:
        d = {key: getattr(self.units, key) for key in UNIT_KEYS}
        d.update({key: getattr(self.enumeration, key) for key in BUDGET_KEYS})
        d.update(out=self.out, format=self.format, seed=self.seed, workers=self.workers)
        return d


def parse_config(text: str) -> WorkbenchConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.optionxform = str
    parser.read_string("[workbench]\n" + text)
    raw = dict(parser["workbench"])
    known = set(UNIT_KEYS) | set(BUDGET_KEYS) | {f.name for f in fields(WorkbenchConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    units = UnitSystem(**{k: raw[k] for k in UNIT_KEYS if k in raw})
    budget = {}
    for k in ("max_program_bits", "step_budget"):
        if k in raw:
            budget[k] = int(raw[k])
    if "schedule" in raw:
        budget["schedule"] = raw["schedule"]
    fmt = raw.get("format", "json")
    if fmt not in ("json", "csv"):
        raise ValueError(f"format must be json or csv, not {fmt!r}")
    return WorkbenchConfig(units, EnumerationBudget(**budget), raw.get("out", "reports"),
                           fmt, int(raw.get("seed", 0)), int(raw.get("workers", 1)))


def load_config(path) -> WorkbenchConfig:
    return parse_config(Path(path).read_text())
