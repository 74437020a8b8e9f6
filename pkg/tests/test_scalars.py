from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from summa import SchemaError, SymScalar, sym_product
from summa.scalars import rat_from_str, rat_to_str

from strategies import rats, scalars


def test_rat_wire_format():
    assert rat_to_str(Fraction(5)) == "5"
    assert rat_to_str(Fraction(-3, 7)) == "-3/7"
    assert rat_from_str("6/4") == Fraction(3, 2)
    assert rat_from_str("-12") == Fraction(-12)
    with pytest.raises(SchemaError):
        rat_from_str("x+1")
    with pytest.raises(SchemaError):
        rat_from_str("1/0")


@given(rats, rats)
def test_module_laws(a, b):
    x = SymScalar({"1": a, "eta1": b})
    y = SymScalar({"eta1": a, "eta_b": 3})
    assert x + y == y + x
    assert (x - y) + y == x
    assert x + SymScalar.zero() == x
    assert (x * 2) * Fraction(1, 2) == x
    assert -(-x) == x


def test_rational_detection():
    assert SymScalar.rational(Fraction(2, 3)).is_rational()
    assert SymScalar.rational(0).is_zero()
    mixed = SymScalar({"1": 1, "eta2": 1})
    assert not mixed.is_rational()
    with pytest.raises(ValueError):
        mixed.rational_value()
    # cancellation restores rationality
    assert (mixed - SymScalar.symbol("eta2")).rational_value() == 1


def test_sym_product_name_grammar():
    assert sym_product("1", "eta1") == "eta1"
    assert sym_product("eta1", "d[A][1]") == "d[A][1]*eta1"
    assert sym_product("1", "1") == "1"
    # associativity at the name level
    left = sym_product(sym_product("eta2", "Psi[3]"), "d[B][2]")
    right = sym_product("eta2", sym_product("Psi[3]", "d[B][2]"))
    assert left == right == "Psi[3]*d[B][2]*eta2"


@given(scalars(symbolic=True), scalars(symbolic=True), rats)
def test_formal_product_bilinear(x, y, c):
    assert x.mul(y) == y.mul(x)
    assert (x * c).mul(y) == x.mul(y) * c
    assert (x + y).mul(y) == x.mul(y) + y.mul(y)
    assert x.mul(SymScalar.rational(1)) == x


@given(scalars(symbolic=True))
def test_json_round_trip(x):
    wire = x.to_json()
    assert all(isinstance(v, str) for v in wire.values())
    assert SymScalar.from_json(wire) == x


def test_json_accepts_bare_literals():
    assert SymScalar.from_json("7/2") == SymScalar.rational(Fraction(7, 2))
    assert SymScalar.from_json(4) == SymScalar.rational(4)
    with pytest.raises(SchemaError):
        SymScalar.from_json(["eta1"])


def test_repr_is_readable():
    s = SymScalar({"1": Fraction(3, 2), "eta1": -1, "eta_b": Fraction(2)})
    assert repr(s) == "3/2 - eta1 + 2*eta_b"
    assert repr(SymScalar.zero()) == "0"
