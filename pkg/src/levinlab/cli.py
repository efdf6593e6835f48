"""Command-line driver.

    levinlab <recipe> [--config FILE] [--out DIR] [--format json|csv] [--workers N]
    levinlab search --goal exact:11 --metric time --max-phase 40 [--max-bits N] [--units FILE]
    levinlab complexity --input 11 [--budget 16,256]
    levinlab limits [--landauer T] [--ml E] [--corollary OPS,LV]
    levinlab graph --program BITS|FILE [--input BITS]
    levinlab operator --pairs FILE [--budget 24,256] [--query Q]
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from fractions import Fraction
from pathlib import Path

from . import complexity, costgraph, induction, refmachine, search
from .config import WorkbenchConfig, load_config
from .mixture import EnumerationBudget
from .recipes import RECIPES, run_experiment
from .report import json_text


def parse_budget(spec: str) -> EnumerationBudget:
    """``BITS[,STEPS[,SCHEDULE]]``"""
    parts = spec.split(",")
    kwargs = {"max_program_bits": int(parts[0])}
    if len(parts) > 1:
        kwargs["step_budget"] = int(parts[1])
    if len(parts) > 2:
        kwargs["schedule"] = parts[2]
    return EnumerationBudget(**kwargs)


def _program_arg(value: str) -> refmachine.Program:
    path = Path(value)
    text = path.read_text() if path.exists() else value
    return refmachine.parse_program_text(text)


def _config(path) -> WorkbenchConfig:
    return load_config(path) if path else WorkbenchConfig()


def cmd_recipe(args) -> int:
    cfg = _config(args.config)
    overrides = {k: v for k, v in (("out", args.out), ("format", args.format),
                                   ("workers", args.workers)) if v is not None}
    cfg = dataclasses.replace(cfg, **overrides)
    report, paths, ok = run_experiment(args.recipe, cfg)
    for c in report["checks"]:
        print(f"{'PASS' if c['pass'] else 'FAIL'}  {c['name']}")
    for p in paths:
        print(f"wrote {p}")
    return 0 if ok else 1


def cmd_search(args) -> int:
    units = _config(args.units).units
    out = search.levin_search(search.Goal.parse(args.goal), args.metric, args.max_phase, units,
                              args.max_bits)
    rep = search.verify_sandwich(out)
    sys.stdout.write(json_text({
        "goal": out.goal.describe(), "metric": out.metric, "winner": out.winner,
        "mnemonic": out.winner.mnemonic, "winner_resources": out.winner_resources,
        "phase": out.phase, "measured_cost": out.measured_cost,
        "work_performed": out.work_performed, "cj_value": out.cj_value, "trials": out.trials,
        "sandwich": rep}))
    return 0


def cmd_complexity(args) -> int:
    cfg = _config(args.config)
    budget = parse_budget(args.budget) if args.budget else cfg.enumeration
    rep = complexity.complexity_report(args.input, budget, cfg.units)
    profile = complexity.logical_profile(rep.H_upper.witness, "", cfg.units, budget.step_budget)
    sys.stdout.write(json_text({
        "subject": rep.subject, "budget": budget,
        "H_upper": rep.H_upper.bits, "H_upper_witness": rep.H_upper.witness,
        "H_coding": rep.H_coding, "prior_lower_bound": rep.prior,
        "H_e": rep.H_e.bits, "H_e_witness": rep.H_e.witness,
        "profile": profile,
        "note": "all entropies are upper bounds witnessed by the listed programs"}))
    return 0


def cmd_limits(args) -> int:
    if args.landauer is None and args.ml is None and not args.corollary:
        return cmd_recipe(args)
    units = _config(args.config).units
    out = {}
    if args.landauer is not None:
        out["landauer_J_per_bit"] = complexity.landauer_limit(args.landauer, units)
    if args.ml is not None:
        out["margolus_levitin_ops_per_s"] = complexity.margolus_levitin_ops(args.ml, units)
        out["quoted_ops_per_joule"] = complexity.QUOTED_OPS_PER_JOULE
    if args.corollary:
        ops, lv = (Fraction(v) for v in args.corollary.split(","))
        ops = int(ops) if ops.denominator == 1 else float(ops)
        lv = int(lv) if lv.denominator == 1 else float(lv)
        out["max_learnable_bits"] = complexity.max_learnable_complexity(ops, lv)
    sys.stdout.write(json_text(out))
    return 0


def cmd_graph(args) -> int:
    cfg = _config(args.config)
    program = _program_arg(args.program)
    r = refmachine.run(program, args.input, args.steps)
    g = costgraph.build_graph(r.trace, len(args.input))
    sc = costgraph.is_self_contained(g)
    sys.stdout.write(json_text({"program": program, "status": r.status, "output": r.output,
                                "graph": g, "resources": costgraph.measure(g, cfg.units),
                                "self_contained": sc.ok, "violations": sc.violations}))
    return 0


def cmd_operator(args) -> int:
    pairs = induction.read_pairs(Path(args.pairs).read_text())
    budget = parse_budget(args.budget)
    fit = induction.operator_fit(pairs, budget)
    out = {"models": len(fit.models), "Psi": fit.Psi,
           "top": [{"program": m.program, "mnemonic": m.program.mnemonic, "psi": m.psi}
                   for m in fit.models[:10]]}
    for q in args.query or []:
        pred = induction.operator_predict(fit.models, q, budget.step_budget)
        out[f"P(1|{q})"] = {"normalized": pred.p_one, "raw": pred.raw,
                            "undefined_models": len(pred.undefined)}
    sys.stdout.write(json_text(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="levinlab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def recipe_parser(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--config")
        p.add_argument("--out")
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--workers", type=int)
        p.set_defaults(func=cmd_recipe, recipe=name)
        return p

    for name in RECIPES:
        if name != "limits":
            recipe_parser(name, help=f"run the {name} recipe")

    p = sub.add_parser("search", help="Levin search for a goal")
    p.add_argument("--goal", required=True, help="exact:BITS | prefix:BITS | cpdf:q=p,...")
    p.add_argument("--metric", default="time", choices=search.METRICS)
    p.add_argument("--max-phase", type=int, default=40)
    p.add_argument("--max-bits", type=int, help="longest program to enumerate")
    p.add_argument("--units", help="config file supplying the unit system")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("complexity", help="entropy estimates for a bit string")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", help="BITS[,STEPS[,SCHEDULE]]")
    p.add_argument("--config")
    p.set_defaults(func=cmd_complexity)

    p = recipe_parser("limits", help="physical-limit calculators; without flags, the recipe")
    p.add_argument("--landauer", type=float, metavar="T")
    p.add_argument("--ml", type=float, metavar="E")
    p.add_argument("--corollary", metavar="OPS,LV")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("graph", help="export the cost graph of one run")
    p.add_argument("--program", required=True)
    p.add_argument("--input", default="")
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--config")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("operator", help="fit operator models to a pairs file")
    p.add_argument("--pairs", required=True)
    p.add_argument("--budget", default="24,256")
    p.add_argument("--query", action="append")
    p.set_defaults(func=cmd_operator)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LookupError, ValueError, ArithmeticError, OSError) as exc:
        # NotFound, NoModels, UnknownRecipe, DecodeError, ZeroMixture, bad files
        print(f"levinlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
