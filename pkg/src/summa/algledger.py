"""Formal residue ledger: symbolic reduction from residue data alone.

Sometimes the only thing known about a function is where its poles sit
and what the coefficients are; the pinned constants of the building
blocks used to normalize it are unknowable transcendentals.  The ledger
performs the reduction to anchored form purely symbolically over those
unknowns.

Input: an admissible residue table t mapping ((orbit, offset m), order j)
to a rational coefficient, with every orbit distinct from the anchor and
every offset m >= 1.

The model subtracts, for each entry, the t-multiple of the m-step
translate of the normalized order-j building block of that orbit.  Each
building block carries residue 1 at its own pole, an unknown anchor
residue d[orbit][j], and an unknown pinned constant phi[orbit][j]@m for
its m-step translate.  What remains, ``ftilde``, has poles only at orbit
representatives and on the anchor orbit:

    (orbit, 0, j)  ->  sum_m t[(orbit, m), j]        (rational)
    (HAT,  m, 1)   ->  -D_m          where D_m = sum t[(w, m), j]*d[w][j]
    (HAT,  0, 1)   ->  sum_m D_m

A second, anchor-only correction then clears every anchor pole at offset
m >= 2, paying with the unknown constants Psi[m]; the result ``fbar`` has
anchor poles at offsets 0 and 1 only.  The cancellation at offsets >= 2
is computed, not assumed: it falls out of the residue bookkeeping of the
correction blocks (each moves -1 at the origin, +1 at offset k-1 against
its one-step translate).

The two panorbital invariants of the reduction are reported exactly:

    pano1 = sum over entries of t * m * d[orbit][j]
    pano0 = fhat - sum t * phi[orbit][j]@m + sum_{m>=2} D_m * Psi[m]

with ``fhat`` the unknown constant of the original function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAdmissible, SchemaError
from .scalars import SymScalar, as_rat, rat_from_str, rat_to_str
from .torus import HAT, OrbitPoint, check_orbit_label
from .zexp import ZetaExpansion

FHAT = "fhat"


def d_symbol(orbit: str, j: int) -> str:
    return f"d[{orbit}][{j}]"


def phi_symbol(orbit: str, j: int, m: int) -> str:
    return f"phi[{orbit}][{j}]@{m}"


def psi_symbol(m: int) -> str:
    return f"Psi[{m}]"


class ResidueTable:
    """Admissible residue data: ((orbit, m), j) -> rational, m >= 1."""

    __slots__ = ("_entries",)

    def __init__(self, entries: dict[tuple[OrbitPoint, int], Fraction]):
        self._entries = entries

    @classmethod
    def make(cls, entries) -> "ResidueTable":
        """Build from {(orbit, m, j): t} or {(OrbitPoint, j): t}.

        Raises NotAdmissible for entries on the anchor orbit or at
        offsets below 1; zero coefficients are dropped.
        """
        clean: dict[tuple[OrbitPoint, int], Fraction] = {}
        for key, value in (entries or {}).items():
            if len(key) == 2 and isinstance(key[0], OrbitPoint):
                p, j = key
            else:
                orbit, m, j = key
                p = OrbitPoint(check_orbit_label(orbit), m)
            if not isinstance(j, int) or isinstance(j, bool) or j < 1:
                raise ValueError(f"order must be an integer >= 1, got {j!r}")
            t = as_rat(value)
            if not t:
                continue
            s = clean.get((p, j), Fraction(0)) + t
            if s:
                clean[(p, j)] = s
            else:
                clean.pop((p, j), None)
        table = cls(clean)
        check_admissible(table)
        return table

    def items(self) -> list[tuple[tuple[OrbitPoint, int], Fraction]]:
        return sorted(
            self._entries.items(),
            key=lambda kv: (kv[0][0].orbit, kv[0][0].offset, kv[0][1]),
        )

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResidueTable):
            return NotImplemented
        return self._entries == other._entries

    __hash__ = None

    def __repr__(self) -> str:
        bits = [
            f"({p.orbit},{p.offset},{j})={rat_to_str(t)}" for (p, j), t in self.items()
        ]
        return "ResidueTable(" + ", ".join(bits or ["0"]) + ")"

    def to_json(self) -> dict:
        return {
            "entries": [
                {"orbit": p.orbit, "m": p.offset, "j": j, "t": rat_to_str(t)}
                for (p, j), t in self.items()
            ]
        }

    @classmethod
    def from_json(cls, obj) -> "ResidueTable":
        if not isinstance(obj, dict) or not isinstance(obj.get("entries"), list):
            raise SchemaError("ledger payload must be an object with 'entries'")
        entries: dict[tuple[OrbitPoint, int], Fraction] = {}
        for i, entry in enumerate(obj["entries"]):
            if not isinstance(entry, dict) or {"orbit", "m", "j", "t"} - set(entry):
                raise SchemaError(f"entries[{i}] must have keys orbit, m, j, t")
            orbit, m, j = entry["orbit"], entry["m"], entry["j"]
            try:
                check_orbit_label(orbit)
            except ValueError as exc:
                raise SchemaError(str(exc)) from exc
            if not isinstance(m, int) or isinstance(m, bool):
                raise SchemaError(f"entries[{i}].m must be an integer")
            if not isinstance(j, int) or isinstance(j, bool) or j < 1:
                raise SchemaError(f"entries[{i}].j must be an integer >= 1")
            key = (OrbitPoint(orbit, m), j)
            if key in entries:
                raise SchemaError(f"entries[{i}] duplicates ({orbit},{m},{j})")
            entries[key] = rat_from_str(entry["t"])
        return cls.make(entries)


def check_admissible(table: ResidueTable) -> ResidueTable:
    """Validate ledger placement; returns the table for chaining."""
    for (p, _), _t in table.items():
        if p.orbit == HAT:
            raise NotAdmissible(f"entry on the anchor orbit at offset {p.offset}")
        if p.offset < 1:
            raise NotAdmissible(
                f"entry at offset {p.offset} on orbit {p.orbit}; offsets must be >= 1"
            )
    return table


@dataclass
class LedgerReport:
    """Outcome of the symbolic reduction of a residue table."""

    ftilde: ZetaExpansion
    fbar: ZetaExpansion
    pano0: SymScalar
    pano1: SymScalar


def ledger_reduce(table: ResidueTable) -> LedgerReport:
    """Reduce residue data to anchored form over the unknown constants.

    See the module docstring for the construction.  Note the returned
    tables are formal: their anchor coefficients involve the unknowns
    d[orbit][j], so the rational ellipticity check does not apply to them
    (it holds after substituting the true values).
    """
    # aggregate the two marginals of the table
    ores: dict[tuple[str, int], Fraction] = {}
    d_by_offset: dict[int, SymScalar] = {}
    for (p, j), t in table.items():
        key = (p.orbit, j)
        ores[key] = ores.get(key, Fraction(0)) + t
        bump = SymScalar.symbol(d_symbol(p.orbit, j), t)
        d_by_offset[p.offset] = d_by_offset.get(p.offset, SymScalar.zero()) + bump
    d_by_offset = {m: v for m, v in d_by_offset.items() if not v.is_zero()}

    ftilde_terms: dict[tuple[str, int, int], SymScalar] = {}
    for (orbit, j), value in ores.items():
        if value:
            ftilde_terms[(orbit, 0, j)] = SymScalar.rational(value)
    anchor: dict[int, SymScalar] = {0: SymScalar.zero()}
    for m, d_m in d_by_offset.items():
        anchor[m] = anchor.get(m, SymScalar.zero()) - d_m
        anchor[0] = anchor[0] + d_m

    # anchor-only correction: for each offset m >= 2 still carrying
    # residue, the order-m clearing block contributes, for k = 2..m,
    # residues -1 at 0, +1 at 1, +1 at k-1, -1 at k (scaled by D_m).
    corrected = dict(anchor)
    psi_part = SymScalar.zero()
    for m, d_m in sorted(d_by_offset.items()):
        if m < 2:
            continue
        for k in range(2, m + 1):
            for offset, sign in ((0, -1), (1, 1), (k - 1, 1), (k, -1)):
                corrected[offset] = corrected.get(offset, SymScalar.zero()) - d_m * sign
        psi_part = psi_part + d_m.mul(SymScalar.symbol(psi_symbol(m)))

    # the pinned-constant bookkeeping
    const_tilde = SymScalar.symbol(FHAT)
    pano1 = SymScalar.zero()
    for (p, j), t in table.items():
        const_tilde = const_tilde - SymScalar.symbol(phi_symbol(p.orbit, j, p.offset), t)
        pano1 = pano1 + SymScalar.symbol(d_symbol(p.orbit, j), t * p.offset)
    pano0 = const_tilde + psi_part

    def as_zexp(constant: SymScalar, anchor_res: dict[int, SymScalar]) -> ZetaExpansion:
        terms = dict(ftilde_terms)
        for offset, c in anchor_res.items():
            if not c.is_zero():
                terms[(HAT, offset, 1)] = terms.get((HAT, offset, 1), SymScalar.zero()) + c
        # bypass the rational ellipticity check: anchor residues are formal
        clean = {
            (OrbitPoint(w, n), j): c for (w, n, j), c in terms.items() if not c.is_zero()
        }
        return ZetaExpansion(constant, clean)

    ftilde = as_zexp(const_tilde, anchor)
    fbar = as_zexp(pano0, corrected)
    return LedgerReport(ftilde=ftilde, fbar=fbar, pano0=pano0, pano1=pano1)
