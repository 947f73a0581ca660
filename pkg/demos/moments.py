"""Isolated edges (Y) and isolated triangles (Z) against their first two factorial moments.

    python3 demos/moments.py --replicates 2000
"""
import argparse

from degseq_lab.connectivity_lab import base_family, moment_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3000)
    ap.add_argument("--replicates", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=2)
    args = ap.parse_args()

    for label, d in (("Y with n1=200", base_family(args.n, n1=200)), ("Z with n2=0.3M", base_family(args.n, c2=0.3))):
        row = moment_experiment(d, args.replicates, args.seed, workers=None)
        print(f"{label}: n={d.n} M={d.M} n1={row.n1} n2={row.n2} acceptance {row.acceptance_rate:.3f}")
        for name in ("Y", "YY", "Z", "ZZ"):
            mean, theory = getattr(row, "mean_" + name), getattr(row, "theory_" + name)
            if theory:
                print(f"  E[{name}] {mean:.5g}  theory {theory:.5g}  ratio {mean / theory:.3f}")


if __name__ == "__main__":
    main()
