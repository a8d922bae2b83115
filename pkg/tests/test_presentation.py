from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quivergkm.coeffs import RatFunc, q_integer
from quivergkm.freealg import DegreeBoundError, NCPoly, ad_power, enumerate_words, multiply
from quivergkm.presentation import (
    Presentation,
    compare_integral_forms,
    degrees_up_to,
    divided_power,
    divided_serre_check,
    integral_lattice_closure,
    serre_element,
    serre_generators_classical,
    serre_generators_quantum,
    tilde_generator,
    tilde_serre_check,
)
from quivergkm.quiver import GeneratorIndex, Quiver, a_n_quiver, jordan_quiver, loop_quiver, two_vertex_quiver
from quivergkm.seminil import kostant_count

A2, A3, J = a_n_quiver(2), a_n_quiver(3), jordan_quiver()


def L(v, lvl=1):
    return NCPoly.letter(v, lvl)


def test_a2_serre_reduces_to_zero():
    p = Presentation(A2, "classical", 4)
    assert p.in_ideal(ad_power(L(0), 2, L(1)))
    assert not p.normal_form(ad_power(L(0), 2, L(1)))
    assert p.quotient((2, 2)).to_json() == {"degree": [2, 2], "free": 6, "ideal": 3, "dim": 3}


def test_jordan_commutator_relation():
    p = Presentation(J, "classical", 4)
    x = multiply(L(0, 2), L(0, 1)) - multiply(L(0, 1), L(0, 2))
    assert not p.normal_form(x)


def test_g2_is_free():
    p = Presentation(loop_quiver(2), "classical", 5)
    assert p.relations == []
    for d in range(6):
        assert p.graded_dimension((d,)) == len(enumerate_words(p.quiver, (d,)))
    w = NCPoly.word(((0, 2), (0, 1)))
    assert p.normal_form(w) == w


@pytest.mark.parametrize("flavor", ["classical", "quantum"])
@pytest.mark.parametrize("q", [A2, A3, J, two_vertex_quiver(2, 0, 1), two_vertex_quiver(1, 1, 2)])
def test_generators_reduce_and_standard_monomials_are_fixed(q, flavor):
    p = Presentation(q, flavor, 5)
    for r in p.relations:
        assert not p.normal_form(r)
    for d in degrees_up_to(q.n, 4):
        for w in p.quotient(d).standard_monomials:
            x = NCPoly.word(w, ring=p.ring)
            assert p.normal_form(x) == x


@pytest.mark.parametrize("q,bound", [(A2, 6), (A3, 6), (J, 6), (loop_quiver(2), 6), (loop_quiver(3), 6)])
def test_quantum_classical_and_order_independence(q, bound):
    pc = Presentation(q, "classical", bound)
    pq = Presentation(q, "quantum", bound)
    pr = Presentation(q, "classical", bound, order="revlex")
    for d in degrees_up_to(q.n, bound):
        assert pc.graded_dimension(d) == pq.graded_dimension(d) == pr.graded_dimension(d)


def test_a2_kostant():
    p = Presentation(A2, "classical", 6)
    for d in degrees_up_to(2, 6):
        assert p.graded_dimension(d) == kostant_count("A2", d)


def test_quantum_serre_element_shape():
    # (q-Serre) for A2, N = 2: aab - [2] aba + baa
    r = serre_element(A2, GeneratorIndex(0, 1), GeneratorIndex(1, 1), "quantum")
    assert r.coeff(((0, 1), (1, 1), (0, 1))) == -RatFunc(q_integer(2))
    assert r.coeff(((0, 1), (0, 1), (1, 1))) == RatFunc(1)
    # at q = 1 the two flavors agree up to the overall sign (-1)^N
    c = serre_element(A2, GeneratorIndex(0, 1), GeneratorIndex(1, 1), "classical")
    assert {w: x.evaluate(1) for w, x in r.terms.items()} == {w: x * (-1) ** 2 for w, x in c.terms.items()}


def test_relation_lists():
    assert len(serre_generators_classical(A2, 4)) == 2
    assert len(serre_generators_quantum(A2, 4)) == 2
    # Jordan: [e_n, e_m] for all level pairs within the bound
    assert all(not r.is_homogeneous(J) or sum(r.degree(J)) <= 4 for r in serre_generators_classical(J, 4))


@pytest.mark.parametrize("q,x", [(A3, 1), (Quiver(("x", "a", "b"), (("x", "a"), ("x", "a"), ("x", "b"))), 0)])
def test_ad_power_of_product(q, x):
    """ad(e_x)^(M+N+1)(b c) lies in the ideal when ad^(M+1) b and ad^(N+1) c do."""
    p = Presentation(q, "classical", 6)
    others = [v for v in range(q.n) if v != x]
    b, c = others[0], others[-1]
    M = -p.quiver.symmetrized_matrix()[x][b]
    N = -p.quiver.symmetrized_matrix()[x][c]
    bc = multiply(L(b), L(c))
    assert p.in_ideal(ad_power(L(x), M + N + 1, bc))
    assert not p.in_ideal(ad_power(L(x), M + N, bc))


def test_divided_power_and_tilde():
    pc = Presentation(A2, "classical", 4)
    assert divided_power(pc, "a", 2) == NCPoly.word(((0, 1), (0, 1)), Fraction(1, 2))
    assert divided_power(pc, "a", 1) == L(0)
    pq = Presentation(A2, "quantum", 4)
    assert divided_power(pq, "a", 2).coeff(((0, 1), (0, 1))) == RatFunc(1) / RatFunc(q_integer(2))
    pj = Presentation(J, "classical", 4)
    t2 = tilde_generator(pj, "v", 2)
    assert t2 == L(0, 2).scale(Fraction(1, 2)) + multiply(L(0), L(0)).scale(Fraction(1, 2))
    t3 = tilde_generator(pj, "v", 3)
    assert t3.coeff(((0, 2), (0, 1))) == Fraction(1, 6)
    assert t3.coeff(((0, 1), (0, 2))) == Fraction(1, 3)
    with pytest.raises(ValueError):
        divided_power(pj, "v", 2)
    with pytest.raises(DegreeBoundError):
        tilde_generator(pj, "v", 5)


@given(st.integers(1, 6), st.integers(1, 3))
@settings(max_examples=20, deadline=None)
def test_tilde_triangular(n, g):
    p = Presentation(loop_quiver(g), "classical", 6)
    t = tilde_generator(p, 0, n)
    assert t.coeff((GeneratorIndex(0, n),)) == Fraction(1, n)
    assert all(len(w) >= 2 for w in t.terms if w != (GeneratorIndex(0, n),))


@pytest.mark.parametrize("t", [1, 2])
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("loops_b", [0, 1, 2])
def test_divided_serre(t, n, loops_b):
    q = two_vertex_quiver(t, 0, loops_b)
    p = Presentation(q, "quantum", n * t + 1 + n)
    assert divided_serre_check(p, "a", "b", n, t=t).ok


def test_divided_serre_degenerate_and_wrong_t():
    q = two_vertex_quiver(1)
    p = Presentation(q, "quantum", 3)
    assert divided_serre_check(p, "a", "b", 0).ok
    with pytest.raises(ValueError):
        divided_serre_check(p, "a", "b", 1, t=2)


@pytest.mark.parametrize("t,n", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_tilde_serre_and_strictness(t, n):
    q = two_vertex_quiver(t, 0, 1)
    p = Presentation(q, "classical", n * t + 1 + n)
    assert tilde_serre_check(p, "a", "b", n).ok
    assert not tilde_serre_check(p, "a", "b", n, exponent_shift=-1).ok


def test_lattices():
    assert integral_lattice_closure(Presentation(A2, "classical", 4), "divided", (2, 2)).ok
    assert integral_lattice_closure(Presentation(J, "classical", 4), "tilde", 4).ok
    rep = integral_lattice_closure(Presentation(loop_quiver(2), "classical", 5), "plain", 5)
    assert rep.ok and all(r["scale"] == 1 for r in rep.degrees)


def test_integral_forms_differ_for_jordan():
    rows = compare_integral_forms(Presentation(J, "classical", 3), "divided", "tilde", 3)
    assert rows[0]["equal"]
    assert all(r["divided_in_tilde"] and not r["tilde_in_divided"] for r in rows[1:])


def test_degree_bound_enforced():
    p = Presentation(A2, "classical", 3)
    with pytest.raises(DegreeBoundError):
        p.quotient((2, 2))
