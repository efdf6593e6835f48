"""Step-by-step predictions of the normalized mixture on a deterministic source.

    python scripts/convergence_demo.py --source alternating --bits 24 -n 16
"""
import argparse

from levinlab import induction
from levinlab.mixture import EnumerationBudget


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--source", choices=("all-ones", "alternating"), default="all-ones")
    ap.add_argument("--bits", type=int, default=20, help="longest program enumerated")
    ap.add_argument("--steps", type=int, default=256, help="step budget per program")
    ap.add_argument("-n", type=int, default=16, help="sequence length")
    args = ap.parse_args()

    trial = induction.sequence_trial(induction.SOURCES[args.source], args.n,
                                     EnumerationBudget(args.bits, args.steps))
    print(f"source {trial.source}: {trial.sequence}")
    print(" step  P(next=1)   truth  sq.err    cumulative")
    for s in trial.steps:
        print(f"{s.step:5d}  {float(s.prediction):9.6f}  {int(s.truth):5d}  "
              f"{float(s.sq_error):.6f}  {float(s.cumulative):.6f}")
    print(f"witness {trial.witness.mnemonic!r} ({len(trial.witness)} bits), "
          f"bound {trial.bound:.4f}, holds: {trial.holds}")


if __name__ == "__main__":
    main()
