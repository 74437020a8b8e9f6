"""Finite coefficient tables for elliptic functions with prescribed poles.

An elliptic function with poles confined to finitely many shift orbits
can be written, essentially uniquely, as a constant plus a finite
combination of translated zeta-type kernels.  This module stores only the
bookkeeping data of that decomposition:

* a constant term (exact scalar, possibly symbolic);
* a finite map from (torus point, pole order j >= 1) to the normalized
  order-j coefficient at that point.

Normalization fixes the kernel of order j to be the (j-1)-st derivative
of the zeta kernel scaled by (-1)**(j-1)/(j-1)!, so that the stored
number *is* the coefficient of 1/(z - pole)**j in the local Laurent
expansion.  With that convention:

* translating the argument by k steps moves the table: the coefficient
  at offset n of the translate equals the coefficient at offset n + k of
  the original;
* differentiating sends an order-j coefficient c to an order-(j+1)
  coefficient -j*c and kills the constant.

A table is *admissible as a function* only when its order-1 coefficients
(the residues) sum to zero; constructors enforce this and raise
EllipticityViolation otherwise.

Residue functionals:

* ``ores(orbit, j)``  -- sum of order-j coefficients along one orbit.
* ``pano0()``         -- the constant term.
* ``pano1()``         -- offset-weighted sum of all order-1 coefficients.

These are exactly the obstructions to writing the function as a
difference ``tau(g) - g``; see :mod:`summa.reduce`.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import EllipticityViolation, SchemaError
from .scalars import SymScalar
from .torus import HAT, OrbitPoint, check_orbit_label

TermKey = tuple[OrbitPoint, int]


def _norm_key(key) -> TermKey:
    """Accept (OrbitPoint, j) or (orbit, n, j) as a term key."""
    if isinstance(key, tuple):
        if len(key) == 2 and isinstance(key[0], OrbitPoint):
            p, j = key
        elif len(key) == 3:
            orbit, n, j = key
            p = OrbitPoint(check_orbit_label(orbit), n)
        else:
            raise ValueError(f"bad term key {key!r}")
    else:
        raise ValueError(f"bad term key {key!r}")
    if not isinstance(j, int) or j < 1:
        raise ValueError(f"pole order must be an integer >= 1, got {j!r}")
    return (p, j)


class ZetaExpansion:
    """Constant plus finite table of normalized pole coefficients."""

    __slots__ = ("constant", "_terms")

    def __init__(self, constant: SymScalar, terms: dict[TermKey, SymScalar]):
        # internal: callers go through make()/zero(); inputs already clean
        self.constant = constant
        self._terms = terms

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def make(cls, constant=0, terms=None) -> "ZetaExpansion":
        """Build a table, pruning zero entries and checking ellipticity.

        ``terms`` maps (orbit, n, j) triples or (OrbitPoint, j) pairs to
        coefficients (int, Fraction, wire string, dict or SymScalar).
        Raises EllipticityViolation when order-1 coefficients do not sum
        to zero.
        """
        clean: dict[TermKey, SymScalar] = {}
        if terms:
            for key, value in terms.items():
                p, j = _norm_key(key)
                c = SymScalar.coerce(value)
                if (p, j) in clean:
                    c = clean[(p, j)] + c
                if c.is_zero():
                    clean.pop((p, j), None)
                else:
                    clean[(p, j)] = c
        out = cls(SymScalar.coerce(constant), clean)
        out.check_elliptic()
        return out

    @classmethod
    def zero(cls) -> "ZetaExpansion":
        return cls(SymScalar.zero(), {})

    @classmethod
    def _single(cls, p: OrbitPoint, j: int, c: SymScalar) -> "ZetaExpansion":
        """Unchecked single-entry table (internal building block)."""
        if c.is_zero():
            return cls.zero()
        return cls(SymScalar.zero(), {(p, j): c})

    def check_elliptic(self) -> None:
        total = SymScalar.zero()
        for (_, j), c in self._terms.items():
            if j == 1:
                total = total + c
        if not total.is_zero():
            raise EllipticityViolation(
                f"order-1 coefficients sum to {total}, expected 0"
            )

    # ------------------------------------------------------------------
    # inspection

    def items(self) -> list[tuple[TermKey, SymScalar]]:
        """Nonzero entries sorted by (orbit, offset, order)."""
        return sorted(
            self._terms.items(), key=lambda kv: (kv[0][0].orbit, kv[0][0].offset, kv[0][1])
        )

    def coeff(self, orbit: str, n: int, j: int) -> SymScalar:
        return self._terms.get((OrbitPoint(orbit, n), j), SymScalar.zero())

    def is_zero(self) -> bool:
        return self.constant.is_zero() and not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def orbits(self) -> list[str]:
        return sorted({p.orbit for (p, _) in self._terms})

    def max_order(self) -> int:
        return max((j for (_, j) in self._terms), default=0)

    def support(self) -> list[OrbitPoint]:
        """Points carrying at least one nonzero coefficient, sorted."""
        return sorted({p for (p, _) in self._terms})

    # ------------------------------------------------------------------
    # linear structure

    def __add__(self, other: "ZetaExpansion") -> "ZetaExpansion":
        terms = dict(self._terms)
        for key, c in other._terms.items():
            s = terms.get(key, SymScalar.zero()) + c
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return ZetaExpansion(self.constant + other.constant, terms)

    def __sub__(self, other: "ZetaExpansion") -> "ZetaExpansion":
        return self + (-other)

    def __neg__(self) -> "ZetaExpansion":
        return ZetaExpansion(
            -self.constant, {key: -c for key, c in self._terms.items()}
        )

    def scale(self, factor) -> "ZetaExpansion":
        """Multiply the whole table by a scalar.

        Rational factors act coefficient-wise; a symbolic factor goes
        through the formal name product (only meaningful when the table's
        own coefficients are rational).
        """
        f = SymScalar.coerce(factor)
        if f.is_zero():
            return ZetaExpansion.zero()
        if f.is_rational():
            r = f.rational_value()
            return ZetaExpansion(
                self.constant * r, {k: c * r for k, c in self._terms.items()}
            )
        return ZetaExpansion(
            self.constant.mul(f), {k: c.mul(f) for k, c in self._terms.items()}
        )

    # ------------------------------------------------------------------
    # difference/differential operators

    def tau(self, k: int = 1) -> "ZetaExpansion":
        """Compose with the k-th power of the shift.

        The coefficient of the result at offset n equals the coefficient
        of the original at offset n + k; constants are untouched.
        """
        if k == 0:
            return self
        return ZetaExpansion(
            self.constant,
            {(OrbitPoint(p.orbit, p.offset - k), j): c for (p, j), c in self._terms.items()},
        )

    def derive(self) -> "ZetaExpansion":
        """Differentiate: order j feeds order j+1 with factor -j."""
        terms = {}
        for (p, j), c in self._terms.items():
            terms[(p, j + 1)] = c * Fraction(-j)
        return ZetaExpansion(SymScalar.zero(), terms)

    # ------------------------------------------------------------------
    # residue functionals

    def ores(self, orbit: str, j: int) -> SymScalar:
        """Orbital residue: sum of order-j coefficients along one orbit."""
        total = SymScalar.zero()
        for (p, jj), c in self._terms.items():
            if p.orbit == orbit and jj == j:
                total = total + c
        return total

    def ores_table(self) -> dict[tuple[str, int], SymScalar]:
        """All nonzero orbital residues, keyed by (orbit, order)."""
        table: dict[tuple[str, int], SymScalar] = {}
        for (p, j), c in self._terms.items():
            key = (p.orbit, j)
            table[key] = table.get(key, SymScalar.zero()) + c
        return {k: v for k, v in table.items() if not v.is_zero()}

    def pano0(self) -> SymScalar:
        """Panorbital residue of order 0: the constant term."""
        return self.constant

    def pano1(self) -> SymScalar:
        """Panorbital residue of order 1: offset-weighted residue sum."""
        total = SymScalar.zero()
        for (p, j), c in self._terms.items():
            if j == 1 and p.offset:
                total = total + c * Fraction(p.offset)
        return total

    # ------------------------------------------------------------------
    # dispersion

    def pdisp(self) -> int | None:
        """Polar dispersion: largest offset spread within one orbit.

        None when the table has no poles at all.
        """
        return self._disp(lambda orders: True)

    def wpdisp(self) -> int | None:
        """Weak polar dispersion: spread over points of order >= 2 only."""
        return self._disp(lambda orders: any(j >= 2 for j in orders))

    def _disp(self, keep) -> int | None:
        by_orbit: dict[str, list[int]] = {}
        orders: dict[OrbitPoint, set[int]] = {}
        for (p, j), _ in self._terms.items():
            orders.setdefault(p, set()).add(j)
        for p, js in orders.items():
            if keep(js):
                by_orbit.setdefault(p.orbit, []).append(p.offset)
        if not by_orbit:
            return None
        return max(max(off) - min(off) for off in by_orbit.values())

    # ------------------------------------------------------------------
    # comparison and display

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZetaExpansion):
            return NotImplemented
        return self.constant == other.constant and self._terms == other._terms

    __hash__ = None

    def __repr__(self) -> str:
        bits = [] if self.constant.is_zero() else [f"const={self.constant}"]
        for (p, j), c in self.items():
            bits.append(f"({p.orbit},{p.offset},{j})={c}")
        return "ZetaExpansion(" + ", ".join(bits or ["0"]) + ")"

    # ------------------------------------------------------------------
    # wire format

    def to_json(self) -> dict:
        return {
            "constant": self.constant.to_json(),
            "terms": [
                {"orbit": p.orbit, "n": p.offset, "j": j, "c": c.to_json()}
                for (p, j), c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "ZetaExpansion":
        if not isinstance(obj, dict):
            raise SchemaError("expansion payload must be an object")
        terms_raw = obj.get("terms", [])
        if not isinstance(terms_raw, list):
            raise SchemaError("'terms' must be a list")
        terms: dict[TermKey, SymScalar] = {}
        for i, entry in enumerate(terms_raw):
            if not isinstance(entry, dict):
                raise SchemaError(f"terms[{i}] must be an object")
            missing = {"orbit", "n", "j", "c"} - set(entry)
            if missing:
                raise SchemaError(f"terms[{i}] missing {sorted(missing)}")
            orbit, n, j = entry["orbit"], entry["n"], entry["j"]
            try:
                check_orbit_label(orbit)
            except ValueError as exc:
                raise SchemaError(str(exc)) from exc
            if not isinstance(n, int) or isinstance(n, bool):
                raise SchemaError(f"terms[{i}].n must be an integer")
            if not isinstance(j, int) or isinstance(j, bool) or j < 1:
                raise SchemaError(f"terms[{i}].j must be an integer >= 1")
            key = (OrbitPoint(orbit, n), j)
            if key in terms:
                raise SchemaError(f"terms[{i}] duplicates ({orbit},{n},{j})")
            terms[key] = SymScalar.from_json(entry["c"])
        return cls.make(SymScalar.from_json(obj.get("constant", 0)), terms)


HAT_POINT = OrbitPoint(HAT, 0)
