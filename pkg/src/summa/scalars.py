"""Exact scalar arithmetic.

Two kinds of scalars appear throughout the toolkit:

* plain rationals, held as ``fractions.Fraction`` (exact, auto-reduced);
* formal Q-linear combinations of named constant symbols, held as
  :class:`SymScalar`.

Symbols stand for quantities that are transcendental, or simply left
indeterminate, in the underlying analysis: quasi-period values, pinned
logarithmic-derivative constants, ledger unknowns.  They follow a fixed
name grammar so that serialized output is byte-stable::

    sym   ::= atom ("*" atom)*          -- atoms sorted, duplicates kept
    atom  ::= "1" | "fhat" | "eta1" | "eta2" | "eta_b"
            | "eta_b[" tag "]"
            | "d[" label "][" int "]"
            | "phi[" label "][" int "]@" int
            | "Psi[" int "]"

The reserved atom ``"1"`` is the rational unit, so a purely rational
scalar has support contained in ``{"1"}``.

:class:`SymScalar` is deliberately only a Q-module: adding, negating and
scaling by rationals are total operations, but there is no general ring
product.  The single place where two symbolic quantities must be
multiplied (quasi-period values times symbolic residues, and ledger
unknowns times correction constants), the product is formed at the level
of *names* via :func:`sym_product`, which concatenates atom lists and
sorts them.  Arithmetic never looks inside a name.

Rational wire format: ``"n"`` when the denominator is one, ``"n/d"``
otherwise; the parser accepts both forms.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SchemaError

Rat = Fraction

UNIT = "1"


def rat_from_str(text: str) -> Fraction:
    """Parse ``"n"`` or ``"n/d"`` into an exact rational."""
    if not isinstance(text, str):
        raise SchemaError(f"rational must be a string, got {type(text).__name__}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational literal {text!r}") from exc


def rat_to_str(value: Fraction) -> str:
    """Render a rational as ``"n"`` or ``"n/d"``."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_rat(value) -> Fraction:
    """Coerce int, Fraction or wire string to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return rat_from_str(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def sym_product(a: str, b: str) -> str:
    """Compose two symbol names into the name of their formal product.

    Atom lists are concatenated and sorted; the unit atom is absorbed.
    The result is again a valid symbol name, and the operation is
    commutative and associative by construction.
    """
    atoms = [t for name in (a, b) for t in name.split("*") if t != UNIT]
    if not atoms:
        return UNIT
    return "*".join(sorted(atoms))


class SymScalar:
    """A finite Q-linear combination of named constant symbols.

    Instances are immutable in practice: all operations return fresh
    objects, and the internal term map never contains zero coefficients.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[str, Fraction] | None = None):
        pruned: dict[str, Fraction] = {}
        if terms:
            for name, coeff in terms.items():
                c = as_rat(coeff)
                if c:
                    pruned[name] = c
        self._terms = pruned

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls) -> "SymScalar":
        return cls()

    @classmethod
    def rational(cls, value) -> "SymScalar":
        return cls({UNIT: as_rat(value)})

    @classmethod
    def symbol(cls, name: str, coeff=1) -> "SymScalar":
        return cls({name: as_rat(coeff)})

    @classmethod
    def coerce(cls, value) -> "SymScalar":
        """Lift ints, Fractions, wire strings and dicts to SymScalar."""
        if isinstance(value, cls):
            return value
        if isinstance(value, dict):
            return cls(value)
        return cls.rational(value)

    # ------------------------------------------------------------------
    # inspection

    def items(self) -> list[tuple[str, Fraction]]:
        """Terms as a list sorted by symbol name."""
        return sorted(self._terms.items())

    def coeff(self, name: str) -> Fraction:
        return self._terms.get(name, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(name == UNIT for name in self._terms)

    def rational_value(self) -> Fraction:
        """The value of a purely rational scalar.

        Raises ValueError when genuinely symbolic terms are present.
        """
        if not self.is_rational():
            raise ValueError(f"scalar {self} is not rational")
        return self._terms.get(UNIT, Fraction(0))

    # ------------------------------------------------------------------
    # Q-module structure

    def __add__(self, other) -> "SymScalar":
        other = SymScalar.coerce(other)
        terms = dict(self._terms)
        for name, coeff in other._terms.items():
            terms[name] = terms.get(name, Fraction(0)) + coeff
        return SymScalar(terms)

    def __radd__(self, other) -> "SymScalar":
        return self.__add__(other)

    def __sub__(self, other) -> "SymScalar":
        return self + (-SymScalar.coerce(other))

    def __rsub__(self, other) -> "SymScalar":
        return (-self) + other

    def __neg__(self) -> "SymScalar":
        return SymScalar({name: -coeff for name, coeff in self._terms.items()})

    def __mul__(self, other) -> "SymScalar":
        """Scale by a rational (int, Fraction or wire string)."""
        c = as_rat(other)
        return SymScalar({name: coeff * c for name, coeff in self._terms.items()})

    __rmul__ = __mul__

    def mul(self, other: "SymScalar") -> "SymScalar":
        """Formal product with another scalar, via name composition.

        Bilinear in the coefficients; symbol names multiply through
        :func:`sym_product`.  This is the only ring-like operation on
        symbolic scalars and is used sparingly.
        """
        other = SymScalar.coerce(other)
        terms: dict[str, Fraction] = {}
        for na, ca in self._terms.items():
            for nb, cb in other._terms.items():
                name = sym_product(na, nb)
                terms[name] = terms.get(name, Fraction(0)) + ca * cb
        return SymScalar(terms)

    # ------------------------------------------------------------------
    # comparison and display

    def __eq__(self, other) -> bool:
        if isinstance(other, SymScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SymScalar.rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for name, coeff in self.items():
            if name == UNIT:
                parts.append(rat_to_str(coeff))
            elif coeff == 1:
                parts.append(name)
            elif coeff == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{rat_to_str(coeff)}*{name}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    # ------------------------------------------------------------------
    # wire format: always an object {symbol: "n/d"}, keys sorted

    def to_json(self) -> dict[str, str]:
        return {name: rat_to_str(coeff) for name, coeff in self.items()}

    @classmethod
    def from_json(cls, obj) -> "SymScalar":
        if isinstance(obj, str):
            # bare rational literal, accepted for convenience
            return cls.rational(rat_from_str(obj))
        if isinstance(obj, int):
            return cls.rational(obj)
        if not isinstance(obj, dict):
            raise SchemaError(f"scalar must be an object or string, got {obj!r}")
        terms = {}
        for name, lit in obj.items():
            if not isinstance(name, str) or not name:
                raise SchemaError(f"bad symbol name {name!r}")
            terms[name] = rat_from_str(lit) if isinstance(lit, str) else as_rat(lit)
        return cls(terms)
