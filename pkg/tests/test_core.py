import pytest

from lindef.core import (MonomialOrder, PolynomialRing, PolynomialSyntaxError, PrimeField,
                         format_polynomial, monomials_of_degree)
from oracles import monomials


def test_field_inverse_and_signed():
    F = PrimeField(32003)
    for a in (1, 2, 17, 32002, 12345):
        assert a * F.inv(a) % 32003 == 1
    assert F.signed(32002) == -1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ValueError):
        PrimeField(32004)


def test_parse_and_arithmetic():
    S = PolynomialRing(["x", "y", "z"])
    f = S.parse("(x + y)^2 - x^2 - 2*x*y")
    assert f == S.parse("y^2")
    g = S.parse("3*x*y - 32006*z^2")
    assert format_polynomial(g) == "3*x*y - 3*z^2"
    assert S.parse("x*y").is_homogeneous() == (True, 2)
    assert S.parse("x + y^2").is_homogeneous()[0] is False
    assert (S.parse("x") * S.parse("y") - S.parse("y*x")).is_zero()


def test_format_parse_roundtrip():
    S = PolynomialRing(["a", "b"])
    for text in ("a^3 - 5*a*b^2 + b^3", "-a", "7", "a*b - b^2"):
        f = S.parse(text)
        assert S.parse(format_polynomial(f)) == f


def test_syntax_error_column():
    S = PolynomialRing(["x", "y"])
    with pytest.raises(PolynomialSyntaxError) as info:
        S.parse("x^2 + * y")
    assert info.value.col == 6
    with pytest.raises(PolynomialSyntaxError):
        S.parse("x + w")


def test_monomials_of_degree_count():
    for n in (1, 2, 3, 4):
        for d in range(5):
            assert sorted(monomials_of_degree(n, d)) == sorted(monomials(n, d))


def test_degrevlex_and_deglex():
    rev = MonomialOrder("degrevlex", 3)
    lex = MonomialOrder("deglex", 3)
    # x*z vs y^2: deglex puts x*z first, degrevlex puts y^2 first
    xz, yy = (1, 0, 1), (0, 2, 0)
    assert lex.key(xz) > lex.key(yy)
    assert rev.key(yy) > rev.key(xz)
    # degree comes first in both
    assert rev.key((0, 0, 2)) > rev.key((1, 0, 0))
    with pytest.raises(ValueError):
        MonomialOrder("lex", 2)
