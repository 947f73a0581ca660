"""Compare the finite-n edge-probability bounds with exact probabilities.

On a small sequence the correction factors are too large for the bounds to
apply, which the report flags. On a perfect matching with 40 vertices the
bounds apply, and the exact conditional probability sits between them.

    python3 demos/bounds_vs_exact.py
"""
import argparse
from fractions import Fraction

from degseq_lab.bounds import conditional_edge_bounds
from degseq_lab.degree_core import make_sequence
from degseq_lab.graph_core import ConstraintPair
from degseq_lab.oracle import exact_conditional_probability


def matching_conditional(n: int, required: int) -> Fraction:
    # given `required` disjoint edges of a uniform perfect matching on n vertices,
    # a further pair of untouched vertices is an edge with probability 1 / (n - 2 required - 1)
    return Fraction(1, n - 2 * required - 1)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=40, help="matching size for the applicable example")
    args = ap.parse_args()

    d = make_sequence([2, 2, 2, 1, 1, 1, 1])
    c = ConstraintPair.of(d.n, [(0, 1)], [(2, 3)])
    rep = conditional_edge_bounds(d, c, 0, 4)
    exact = exact_conditional_probability(d, c, 0, 4)
    print(f"small sequence {d.labeled}: exact {float(exact):.4f}, base {rep.base_term:.4f}")
    print(f"  flags {rep.applicability}")

    d = make_sequence([1] * args.n)
    H1 = [(0, 1), (2, 3)]
    c = ConstraintPair.of(d.n, H1)
    rep = conditional_edge_bounds(d, c, 6, 7, exact=True)
    p = matching_conditional(args.n, len(H1))
    print(f"perfect matching n={args.n}: lower {float(rep.lower):.5f} <= exact {float(p):.5f} <= upper {float(rep.upper):.5f}")
    print(f"  contained: {rep.contains(p)}")


if __name__ == "__main__":
    main()
