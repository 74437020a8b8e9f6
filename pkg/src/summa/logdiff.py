"""Logarithmic derivatives of divisor data and difference dependence.

A function on the torus is determined, up to scaling, by its divisor: a
finite multiset of zeros and poles whose multiplicities sum to zero.
This module never builds the function itself; it builds the coefficient
table of its logarithmic derivative, which is all the residue machinery
needs:

* at each divisor point, a simple pole whose coefficient is the
  multiplicity at that point;
* a constant that depends on the pinning; it is carried as an opaque
  symbol (fresh per divisor, via tags) since its value never matters to
  residue computations.

On top of that sit two consumers:

* :func:`diffdep` looks for an integer vector l such that the combined
  divisor sum_i l_i * d_i has vanishing orbit sums, i.e. such that the
  product of the corresponding functions to those powers has a summable
  logarithmic derivative candidate.  Returns the canonical kernel vector
  or None when the residue columns are independent.

* :func:`order_reduction_check` confirms that differentiating a
  logarithmic derivative r times multiplies its order-1 orbit sums into
  the order r+1 slot with the exact factor (-1)**r * r!.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeViolation, SchemaError
from .scalars import SymScalar
from .torus import OrbitPoint, check_orbit_label
from .zexp import ZetaExpansion


class DivisorData:
    """Finite multiset of torus points with nonzero integer multiplicities."""

    __slots__ = ("_points",)

    def __init__(self, points: dict[OrbitPoint, int]):
        self._points = points

    @classmethod
    def make(cls, points) -> "DivisorData":
        """Build from {(orbit, n): m} or {OrbitPoint: m}; degree must be 0."""
        clean: dict[OrbitPoint, int] = {}
        for key, mult in (points or {}).items():
            if isinstance(key, OrbitPoint):
                p = key
            else:
                orbit, n = key
                p = OrbitPoint(check_orbit_label(orbit), n)
            if not isinstance(mult, int) or isinstance(mult, bool):
                raise ValueError(f"multiplicity must be int, got {mult!r}")
            m = clean.get(p, 0) + mult
            if m:
                clean[p] = m
            else:
                clean.pop(p, None)
        degree = sum(clean.values())
        if degree:
            raise DegreeViolation(f"multiplicities sum to {degree}, expected 0")
        return cls(clean)

    def items(self) -> list[tuple[OrbitPoint, int]]:
        return sorted(self._points.items())

    def multiplicity(self, orbit: str, n: int) -> int:
        return self._points.get(OrbitPoint(orbit, n), 0)

    def orbits(self) -> list[str]:
        return sorted({p.orbit for p in self._points})

    def orbit_sum(self, orbit: str) -> int:
        return sum(m for p, m in self._points.items() if p.orbit == orbit)

    def __len__(self) -> int:
        return len(self._points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DivisorData):
            return NotImplemented
        return self._points == other._points

    __hash__ = None

    def __repr__(self) -> str:
        bits = [f"({p.orbit},{p.offset}):{m:+d}" for p, m in self.items()]
        return "DivisorData(" + ", ".join(bits or ["0"]) + ")"

    def to_json(self) -> dict:
        return {
            "points": [
                {"orbit": p.orbit, "n": p.offset, "m": m} for p, m in self.items()
            ]
        }

    @classmethod
    def from_json(cls, obj) -> "DivisorData":
        if not isinstance(obj, dict) or not isinstance(obj.get("points"), list):
            raise SchemaError("divisor payload must be an object with 'points'")
        points: dict[OrbitPoint, int] = {}
        for i, entry in enumerate(obj["points"]):
            if not isinstance(entry, dict) or {"orbit", "n", "m"} - set(entry):
                raise SchemaError(f"points[{i}] must have keys orbit, n, m")
            orbit, n, m = entry["orbit"], entry["n"], entry["m"]
            try:
                check_orbit_label(orbit)
            except ValueError as exc:
                raise SchemaError(str(exc)) from exc
            for name, val in (("n", n), ("m", m)):
                if not isinstance(val, int) or isinstance(val, bool):
                    raise SchemaError(f"points[{i}].{name} must be an integer")
            p = OrbitPoint(orbit, n)
            if p in points:
                raise SchemaError(f"points[{i}] duplicates ({orbit},{n})")
            points[p] = m
        return cls.make(points)


def logderiv(d: DivisorData, tag=None) -> ZetaExpansion:
    """Coefficient table of the logarithmic derivative of a function
    with divisor d.

    Simple poles with residue = multiplicity at each divisor point; the
    pinning-dependent additive constant is the opaque symbol ``eta_b``
    (or ``eta_b[tag]`` when a tag distinguishes several divisors).
    Ellipticity is automatic because the divisor has degree zero.
    """
    name = "eta_b" if tag is None else f"eta_b[{tag}]"
    terms = {(p, 1): SymScalar.rational(m) for p, m in d.items()}
    return ZetaExpansion.make(SymScalar.symbol(name), terms)


@dataclass
class ResidueMatrix:
    """Orbit sums of several divisors: rows = orbits, columns = divisors."""

    orbits: list[str]
    rows: list[list[int]]


def residue_matrix(divisors: list[DivisorData]) -> ResidueMatrix:
    orbits = sorted({w for d in divisors for w in d.orbits()})
    rows = [[d.orbit_sum(w) for d in divisors] for w in orbits]
    return ResidueMatrix(orbits, rows)


def _kernel_basis(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel via row reduction, one vector per free column."""
    mat = [list(map(Fraction, row)) for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [a * inv for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    basis = []
    free = [c for c in range(ncols) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row_i, pc in enumerate(pivots):
            vec[pc] = -mat[row_i][fc]
        basis.append(vec)
    return basis


def _canonical_int_vector(vec: list[Fraction]) -> list[int]:
    scale = math.lcm(*(v.denominator for v in vec))
    ints = [int(v * scale) for v in vec]
    g = math.gcd(*ints)
    if g:
        ints = [v // g for v in ints]
    lead = next((v for v in ints if v), 0)
    if lead < 0:
        ints = [-v for v in ints]
    return ints


def diffdep(divisors: list[DivisorData]) -> list[int] | None:
    """Canonical integer dependence among divisor residue columns.

    Returns the lexicographically smallest normalized kernel vector
    (integer entries, gcd 1, first nonzero entry positive), or None when
    the columns are linearly independent.
    """
    if not divisors:
        return None
    mat = residue_matrix(divisors)
    rows = [[Fraction(a) for a in row] for row in mat.rows]
    basis = _kernel_basis(rows, len(divisors))
    if not basis:
        return None
    return min(_canonical_int_vector(v) for v in basis)


def order_reduction_check(d: DivisorData, r: int) -> bool:
    """Differentiation moves orbit sums up in order with factor (-1)**r * r!.

    Checks, for every orbit of d, that the order-(r+1) orbit sum of the
    r-th derivative of logderiv(d) equals (-1)**r * r! times the order-1
    orbit sum of logderiv(d) itself.  r is capped to keep the factorials
    readable in failure output.
    """
    if not isinstance(r, int) or not 0 <= r <= 8:
        raise ValueError(f"derivative order must be an integer in [0, 8], got {r!r}")
    base = logderiv(d)
    derived = base
    for _ in range(r):
        derived = derived.derive()
    factor = Fraction((-1) ** r * math.factorial(r))
    for orbit in d.orbits():
        lhs = derived.ores(orbit, r + 1)
        rhs = base.ores(orbit, 1) * factor
        if lhs != rhs:
            return False
    return True
