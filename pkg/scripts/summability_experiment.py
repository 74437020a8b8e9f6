#!/usr/bin/env python3
"""Randomized agreement experiment: residue decision vs. telescoping oracle.

Draws random elliptic expansions (a configurable share of them genuine
differences tau^k(g) - g, which are summable by construction), decides
summability both by the residue functionals and by the independent
prefix-sum oracle, and reports the counts.  Any disagreement is printed
in full and makes the script exit nonzero.
"""

import argparse
import random
import time
from fractions import Fraction

from summa import ZetaExpansion, is_summable, oracle_summable, reduce

ORBITS = ("HAT", "A", "B", "C")


def random_elliptic(rng, max_terms, max_offset, max_order):
    terms = {}
    for _ in range(rng.randint(0, max_terms - 1)):
        key = (
            rng.choice(ORBITS),
            rng.randint(-max_offset, max_offset),
            rng.randint(1, max_order),
        )
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        terms[key] = terms.get(key, Fraction(0)) + c
    imbalance = sum((c for (_, _, j), c in terms.items() if j == 1), Fraction(0))
    if imbalance:
        key = ("HAT", 0, 1)
        terms[key] = terms.get(key, Fraction(0)) - imbalance
    constant = Fraction(rng.randint(-3, 3)) if rng.random() < 0.5 else 0
    return ZetaExpansion.make(constant, terms)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-terms", type=int, default=40)
    ap.add_argument("--max-offset", type=int, default=10)
    ap.add_argument("--max-order", type=int, default=5)
    ap.add_argument(
        "--difference-share",
        type=float,
        default=0.5,
        help="fraction of trials built as tau^k(g) - g (summable by construction)",
    )
    args = ap.parse_args()

    rng = random.Random(args.seed)
    agreements = 0
    summable_count = 0
    constructed = 0
    disagreements = []

    start = time.perf_counter()
    for _ in range(args.trials):
        if rng.random() < args.difference_share:
            g = random_elliptic(rng, args.max_terms // 2, args.max_offset, args.max_order)
            f = g.tau(rng.randint(1, 3)) - g
            constructed += 1
        else:
            f = random_elliptic(rng, args.max_terms, args.max_offset, args.max_order)
        left = is_summable(f)
        right = oracle_summable(f)
        if left == right:
            agreements += 1
        else:
            disagreements.append((f, left, right))
        if left:
            summable_count += 1
            # spot-check: the recovered witness really telescopes back
            rep = reduce(f)
            assert rep.witness.tau(1) - rep.witness == f
    elapsed = time.perf_counter() - start

    print(f"trials:             {args.trials}")
    print(f"built as difference:{constructed:>6}")
    print(f"decided summable:   {summable_count:>6}")
    print(f"oracle agreements:  {agreements:>6}")
    print(f"elapsed:            {elapsed:.2f}s")
    for f, left, right in disagreements:
        print("DISAGREEMENT")
        print(f"  input:    {f!r}")
        print(f"  residues: {left}  oracle: {right}")
    if disagreements:
        raise SystemExit(1)
    print("all decisions agree with the oracle")


if __name__ == "__main__":
    main()
