import random

import pytest
import sympy

from lindef.groebner import (FreeVector, GradedRing, buchberger, normal_form,
                             s_pairs_reduce_to_zero, syzygy_basis, vec_mul_poly)
from oracles import monomial_quotient_hilbert, poly_hilbert

P = 32003


def _random_ideal(rng, names, count, deg):
    gens = []
    for _ in range(count):
        d = rng.randint(2, deg)
        terms = []
        for _ in range(3):
            e = [0] * len(names)
            for _ in range(d):
                e[rng.randrange(len(names))] += 1
            terms.append(f"{rng.randint(1, 50)}*" + "*".join(f"{v}^{a}" for v, a in zip(names, e) if a))
        gens.append(" + ".join(terms))
    return gens


@pytest.mark.parametrize("seed", range(6))
def test_ideal_gb_matches_sympy(seed):
    rng = random.Random(seed)
    names = ["x", "y", "z"]
    gens = _random_ideal(rng, names, 3, 3)
    R = GradedRing(names, gens)
    xs = sympy.symbols(names)
    G = sympy.groebner([sympy.sympify(g.replace("^", "**")) for g in gens], *xs,
                       modulus=P, order="grevlex")
    ours = {R.poly.parse(str(g)).monic() for g in R.defining_gb}
    theirs = {R.poly.parse(str(g.as_expr()).replace("**", "^")).monic() for g in G.exprs}
    assert ours == theirs


def test_hilbert_monomial_quotient():
    gens = [(2, 0, 0), (1, 1, 0), (0, 0, 3), (0, 2, 1)]
    names = ["x", "y", "z"]
    text = ["*".join(f"{v}^{a}" for v, a in zip(names, g) if a) for g in gens]
    R = GradedRing(names, text)
    for d in range(7):
        assert R.hilbert(d) == monomial_quotient_hilbert(3, gens, d)


def test_polynomial_ring_hilbert_and_top_degree():
    R = GradedRing(["a", "b", "c", "d"])
    assert [R.hilbert(d) for d in range(5)] == [poly_hilbert(4, d) for d in range(5)]
    assert R.top_degree() is None
    Q = GradedRing(["x", "y", "z", "t"], ["x^2", "x*y", "y^2", "z^2", "z*t", "t^2"])
    assert [Q.hilbert(d) for d in range(4)] == [1, 4, 4, 0]
    assert Q.top_degree() == 2


def test_linear_forms_in_defining_ideal():
    R = GradedRing(["x", "y", "z"], ["x - y"])
    assert [R.hilbert(d) for d in range(4)] == [1, 2, 3, 4]
    assert R.nf_poly(R.poly.parse("x^2 - y^2")).is_zero()


def test_inhomogeneous_defining_ideal_rejected():
    with pytest.raises(ValueError):
        GradedRing(["x", "y"], ["x^2 + y"])


def test_module_gb_and_syzygies():
    R = GradedRing(["x", "y", "z"])
    sh = (0, 0)
    gens = [FreeVector.from_entries(R, sh, e) for e in
            (["x", "y"], ["y", "z"], ["x*z", "y^2"], ["z^2", "0"])]
    G = buchberger(gens, R)
    assert s_pairs_reduce_to_zero(G)
    for g in gens:
        assert normal_form(g, G).is_zero()
    for s in syzygy_basis(gens, R):
        total = {}
        for j, f in enumerate(s.entries()):
            for k, c in vec_mul_poly(R, gens[j].terms, f.term_dict).items():
                total[k] = (total.get(k, 0) + c) % P
        assert not any(total.values())
