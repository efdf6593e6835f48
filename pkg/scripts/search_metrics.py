"""Levin search under each resource metric, with the sandwich ratio.

Uses a toy unit system (c = 1) so the total-energy metric stays on the same
scale as the others; with the physical c the rest-mass term dominates.

    python scripts/search_metrics.py exact:0 exact:11 prefix:0101
"""
import argparse
from fractions import Fraction

from levinlab import search
from levinlab.costgraph import UnitSystem

TOY = UnitSystem(v_u=1, e_u=1, s_u=1, m_u=Fraction(1, 1000), c=1)


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("goals", nargs="*", default=["exact:0", "exact:11", "cpdf:0=3/4,1=3/4"])
    ap.add_argument("--max-phase", type=int, default=40)
    args = ap.parse_args()
    print(f"{'goal':20s} {'metric':13s} {'winner':8s} {'phase':>5s} {'cj':>10s} {'cost':>10s} ratio")
    for spec in args.goals:
        for metric in search.METRICS:
            out = search.levin_search(search.Goal.parse(spec), metric, args.max_phase, TOY)
            rep = search.verify_sandwich(out)
            print(f"{spec:20s} {metric:13s} {out.winner.mnemonic!r:8s} {out.phase:5d} "
                  f"{float(rep.cj):10.1f} {float(rep.measured_cost):10.1f} {float(rep.ratio):.3f}"
                  f"{'' if rep.passed else '  OUT OF BOUNDS'}")


if __name__ == "__main__":
    main()
