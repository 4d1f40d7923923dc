import pytest

from lindef.modules import equal
from lindef.session import SessionError, parse_session, same_module, same_ring

ROOS = """
# a comment
ring R = poly(p=32003; x,y,z,t) / (x^2, x*y, y^2, z^2, z*t, t^2);
module N = coker R(-1)^3 -> R^2 [[y, x+3*t, t],[z, -t, x+t]];
ideal m = maxideal;
module Q = quotient(power(m, 2));
"""


def test_parse_roos_session():
    S = parse_session(ROOS)
    R = S.ring("R")
    assert R.hilbert(2) == 4 and R.hilbert(3) == 0
    N = S.module("N")
    assert N.shifts == (0, 0) and len(N.rels) == 3
    assert S.module("Q").hilbert(1) == 4
    assert [d.line for d in S.decls] == [3, 4, 5, 6]


def test_composed_declarations():
    S = parse_session("""
        ring S = poly(p=32003; x,y,z);
        ideal I = (x, y);
        ideal J = (y, z);
        ideal K = (x, z);
        ideal H = intersect(I, J, K);
        ideal C = colon(I, z);
        ideal T = times(I, J);
        ideal P = plus(I, J);
        module F = free S^2 + S(-1);
        module k = residue;
        ses E = (T in I);
        filtration G = { (0); (x) by x; (x,y) by x, y; (x,y,z) by x, y, z };
    """)
    ideals = S.ideals
    assert [str(f) for f in ideals["H"].polys] == ["x*y", "x*z", "y*z"]
    assert equal(ideals["C"], ideals["I"])
    assert [str(f) for f in ideals["P"].polys] == ["x", "y", "z"]
    assert [str(f) for f in ideals["T"].polys] == ["x*y", "y^2", "x*z", "y*z"]
    assert S.module("F").shifts == (0, 0, 1)
    assert "E" in S.sequences and "G" in S.filtrations
    assert len(S.filtrations["G"].ideals) == 4


def test_round_trip():
    S = parse_session(ROOS + "module W = subquotient R(-1)^2 -> R^2 [[x, z],[0, t]] mod R(-1) -> R^2 [[y],[z]];")
    T = parse_session(S.dump())
    for n in S.rings:
        assert same_ring(S.rings[n], T.rings[n])
    for n in S.modules:
        assert same_module(S.modules[n], T.modules[n])
    assert T.dump() == S.dump()


def test_prime_and_order_override():
    S = parse_session("ring R = poly(p=32003; x,y);", prime=101, order="deglex")
    assert S.ring("R").p == 101
    assert S.ring("R").order.kind == "deglex"


@pytest.mark.parametrize("text,line,fragment", [
    ("ring R = poly(p=32003; x,y);\nideal I = (x^2 + y);", 2, "not homogeneous"),
    ("ring R = poly(p=32003; x,y);\nideal I = (x);\nideal I = (y);", 3, "declared twice"),
    ("ideal I = (x);", 1, "no ring"),
    ("ring R = poly(p=32003; x,y);\nideal I = (x", 2, "unbalanced"),
    ("ring R = poly(p=32003; x,y)", 1, "missing ';'"),
    ("ring R = poly(p=32003; x,y);\nmodule N = coker R(-1) -> R^2 [[x],[y^2]];", 2, "homogeneous"),
    ("ring R = poly(p=32003; x,y);\nses E = (A in B);", 2, "unknown"),
    ("ring R = poly(p=32003; x,y);\nbanana B = 1;", 2, "cannot parse"),
])
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(SessionError) as info:
        parse_session(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_inhomogeneous_error_names_declaration():
    with pytest.raises(SessionError) as info:
        parse_session("ring R = poly(p=32003; x,y);\nmodule N = coker R(-1) -> R^2 [[x],[y^2]];")
    assert info.value.name == "N"


def test_syntax_error_column_points_at_token():
    with pytest.raises(SessionError) as info:
        parse_session("ring R = poly(p=32003; x,y);\nideal I = (x^2 + * y);")
    assert (info.value.line, info.value.col) == (2, 18)
