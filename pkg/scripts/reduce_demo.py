#!/usr/bin/env python3
"""Worked example: the anchored order-1 pair and its derivative.

The expansion with a simple pole of coefficient +1 at anchor offset -1
and -1 at the anchor itself has every orbital residue zero, yet it is
not summable: the weighted panorbital residue is -1.  Differentiating
kills that obstruction, and the reduction then produces an explicit
order-2 witness, which the independent prefix-sum oracle reproduces.
"""

from summa import ZetaExpansion, oracle_certificate, reduce


def show(report):
    print(f"  summable: {report.summable}")
    print(f"  orbital residues: {report.ores or '{}'}")
    print(f"  pano0 = {report.pano0!r}, pano1 = {report.pano1!r}")
    print(f"  canonical: {report.canonical!r}")
    print(f"  witness:   {report.witness!r}")


def main():
    f = ZetaExpansion.make(0, {("HAT", -1, 1): 1, ("HAT", 0, 1): -1})
    print("input f (order-1 pair straddling the anchor):")
    print(f"  {f!r}")

    print("\nreduce(f):")
    rep = reduce(f)
    show(rep)
    print("  -> blocked: the weighted residue pano1 is nonzero,")
    print("     even though every orbital residue vanishes.")

    df = f.derive()
    print("\nits derivative f':")
    print(f"  {df!r}")

    print("\nreduce(f'):")
    drep = reduce(df)
    show(drep)

    w = drep.witness
    print("\nidentity check: tau(w) - w == f' ->", w.tau(1) - w == df)

    cert = oracle_certificate(df)
    print("oracle certificate equals the reduction witness ->", cert == w)


if __name__ == "__main__":
    main()
