"""Summability: reduction to canonical form, obstructions, certificates.

A table f is *summable* when f = tau(g) - g for some table g (same pole
orbits, finite).  The reduction below rewrites f, modulo differences
tau(h) - h with explicitly recorded h, into a canonical form supported on
orbit representatives plus one extra anchor point:

* stage 1 slides every higher-order pole (order >= 2) to offset 0 of its
  orbit;
* stage 2 slides every non-anchor simple pole to offset 0, paying with a
  balancing simple pole on the anchor orbit (a lone simple pole cannot
  move by itself: a single order-1 kernel is not elliptic);
* stage 3 clears anchor-orbit simple poles at offsets other than 0 and 1
  using the three-pole mover with support {0, 1, n}, which is itself a
  difference.

What remains cannot be reduced further; its coefficients are exactly the
residue functionals of the input:

* constant               = pano0(f)
* coefficient (w, 0, j)  = ores(f, w, j)          for j >= 2
* coefficient (w, 0, 1)  = ores(f, w, 1)          for non-anchor w
* coefficient (HAT,1,1)  = pano1(f)
* coefficient (HAT,0,1)  = ores(f, HAT, 1) - pano1(f)

so f is summable iff every orbital residue vanishes and both panorbital
residues vanish.  The witness g returned alongside satisfies

    f - (tau(g) - g) == canonical(f)

exactly, and is the certificate when the canonical form is zero.

An independent oracle is provided for cross-checking: it solves the
difference equation coefficient-wise by prefix sums, never touching the
residue functionals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import AnchorMove
from .scalars import SymScalar
from .torus import HAT, OrbitPoint
from .zexp import ZetaExpansion


def _telescope(atom: ZetaExpansion, n: int) -> ZetaExpansion:
    """A table h with tau(h) - h == atom.tau(n) - atom.

    For n > 0 take h = sum of the first n forward translates of the atom
    (powers 0..n-1); for n < 0 the negated backward translates.  The
    telescoping is exact at the level of coefficient tables.
    """
    h = ZetaExpansion.zero()
    if n > 0:
        for k in range(0, n):
            h = h + atom.tau(k)
    else:
        for k in range(n, 0):
            h = h - atom.tau(k)
    return h


@dataclass
class ReductionReport:
    """Everything the reduction establishes about one input table."""

    canonical: ZetaExpansion
    witness: ZetaExpansion
    summable: bool
    ores: dict[tuple[str, int], SymScalar]
    pano0: SymScalar
    pano1: SymScalar


def reduce(f: ZetaExpansion) -> ReductionReport:
    """Reduce f to canonical form, recording a witness for the moves.

    Postconditions (all exact, asserted in the test-suite):
      f - (tau(witness) - witness) == canonical
      canonical has the residue-functional coefficients described in the
      module docstring, and summable == canonical.is_zero().
    """
    current = f
    witness = ZetaExpansion.zero()

    def apply_move(mover: ZetaExpansion, h: ZetaExpansion) -> None:
        # current gains mover == tau(h) - h; the running witness absorbs -h
        # so that f - (tau(witness) - witness) stays equal to current.
        nonlocal current, witness
        current = current + mover
        witness = witness - h
        current.check_elliptic()

    # stage 1: higher-order poles migrate to their orbit representative
    for (p, j), c in current.items():
        if j >= 2 and p.offset != 0:
            atom = ZetaExpansion._single(p, j, c)
            apply_move(atom.tau(p.offset) - atom, _telescope(atom, p.offset))

    # stage 2: simple poles off the anchor orbit migrate, paying anchor rent
    for (p, j), c in current.items():
        if j == 1 and p.orbit != HAT and p.offset != 0:
            atom = ZetaExpansion.make(
                0,
                {
                    (p.orbit, p.offset, 1): 1,
                    (HAT, p.offset, 1): -1,
                },
            ).scale(c)
            apply_move(atom.tau(p.offset) - atom, _telescope(atom, p.offset))

    # stage 3: anchor simple poles at offsets other than {0, 1} are cleared
    # with the three-pole mover supported on {0, 1, n}, a known difference.
    for (p, j), c in current.items():
        if j == 1 and p.orbit == HAT and p.offset not in (0, 1):
            n = p.offset
            if n >= 2:
                mover = ZetaExpansion.make(
                    0,
                    {(HAT, 0, 1): -(n - 1), (HAT, 1, 1): n, (HAT, n, 1): -1},
                ).scale(c)
                h_terms = {(HAT, k, 1): Fraction(1) for k in range(2, n + 1)}
                h_terms[(HAT, 1, 1)] = Fraction(-(n - 1))
            else:
                mover = ZetaExpansion.make(
                    0,
                    {(HAT, n, 1): -1, (HAT, 0, 1): 1 - n, (HAT, 1, 1): n},
                ).scale(c)
                h_terms = {(HAT, m, 1): Fraction(-1) for m in range(n + 1, 1)}
                h_terms[(HAT, 1, 1)] = h_terms.get((HAT, 1, 1), Fraction(0)) + Fraction(-n)
            h = ZetaExpansion.make(0, h_terms).scale(c)
            apply_move(mover, h)

    # the canonical form is what survives; nothing below can move further
    for (p, j), _ in current.items():
        assert p.offset == 0 or (p.orbit == HAT and p.offset == 1 and j == 1)

    return ReductionReport(
        canonical=current,
        witness=witness,
        summable=current.is_zero(),
        ores=f.ores_table(),
        pano0=f.pano0(),
        pano1=f.pano1(),
    )


def is_summable(f: ZetaExpansion) -> bool:
    """Summability via the residue obstructions alone (no certificate)."""
    return f.pano0().is_zero() and f.pano1().is_zero() and not f.ores_table()


def almost_summable(f: ZetaExpansion) -> bool:
    """True when all orbital residues vanish.

    Such a table becomes summable after subtracting a constant and a
    rational multiple of the anchor's order-1 mover pair; equivalently,
    only the panorbital residues still obstruct.
    """
    return not f.ores_table()


# ----------------------------------------------------------------------
# independent oracle


def oracle_certificate(f: ZetaExpansion) -> ZetaExpansion | None:
    """Solve tau(g) - g = f coefficient-wise; None when unsolvable.

    For each orbit and order the equation decouples into the recurrence
    g(n+1) - g(n) = f(n) along offsets, solved by prefix sums starting
    below the support.  A finitely supported solution exists iff the full
    prefix sum returns to zero.  The assembled g must additionally be a
    valid table (order-1 coefficients summing to zero) and f must have no
    constant part, since differences kill constants.

    This routine never evaluates the residue functionals; it is the
    cross-check oracle for the obstruction-based test.
    """
    if not f.constant.is_zero():
        return None

    groups: dict[tuple[str, int], dict[int, SymScalar]] = {}
    for (p, j), c in f.items():
        groups.setdefault((p.orbit, j), {})[p.offset] = c

    g_terms: dict[tuple[str, int, int], SymScalar] = {}
    order1_total = SymScalar.zero()
    for (orbit, j), coeffs in sorted(groups.items()):
        lo, hi = min(coeffs), max(coeffs)
        run = SymScalar.zero()
        for n in range(lo, hi + 1):
            run = run + coeffs.get(n, SymScalar.zero())
            if n == hi:
                if not run.is_zero():
                    return None  # prefix sum never closes: no finite solution
            elif not run.is_zero():
                g_terms[(orbit, n + 1, j)] = run
                if j == 1:
                    order1_total = order1_total + run

    if not order1_total.is_zero():
        return None  # solution exists formally but is not a function
    return ZetaExpansion.make(0, g_terms)


def oracle_summable(f: ZetaExpansion) -> bool:
    return oracle_certificate(f) is not None


# ----------------------------------------------------------------------
# re-pinning


@dataclass(frozen=True)
class RepinDelta:
    """A change of pinned representative on one orbit.

    The new representative is the old one translated by the lattice
    vector b1*w1 + b2*w2 plus k shift steps; ``lattice`` holds (b1, b2).
    """

    orbit: str
    k: int
    lattice: tuple[int, int] = (0, 0)


def repin(f: ZetaExpansion, delta: RepinDelta) -> tuple[SymScalar, SymScalar]:
    """Panorbital residues of f after re-pinning one orbit representative.

    Only the two panorbital residues change; orbital residues are
    pinning-independent.  With eta1/eta2 the quasi-period constants of
    the zeta kernel:

        pano0' = pano0 + (b1*eta1 + b2*eta2) * ores(f, orbit, 1)
        pano1' = pano1 - k * ores(f, orbit, 1)

    The anchor orbit is never re-pinned (AnchorMove).
    """
    if delta.orbit == HAT:
        raise AnchorMove("the anchor representative is fixed by convention")
    r1 = f.ores(delta.orbit, 1)
    b1, b2 = delta.lattice
    eta = SymScalar({"eta1": Fraction(b1), "eta2": Fraction(b2)})
    pano0 = f.pano0() + eta.mul(r1)
    pano1 = f.pano1() - r1 * Fraction(delta.k)
    return pano0, pano1


__all__ = [
    "ReductionReport",
    "RepinDelta",
    "almost_summable",
    "is_summable",
    "oracle_certificate",
    "oracle_summable",
    "reduce",
    "repin",
]
