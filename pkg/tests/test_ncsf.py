from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from quivergkm.ncsf import (
    NcsfExpr,
    coassociativity_check,
    comult_s_check,
    lambda_in_s,
    lambda_sigma_inverse_check,
    ncsf_coproduct,
    psi_in_s,
    quasidet_expand,
    s_from_psi_explicit,
    s_from_psi_recursive,
    to_basis,
)


def P(*c):
    return NcsfExpr("Psi", {c: 1})


def test_low_degree_expansions():
    assert s_from_psi_recursive(2) * 2 == P(2) + P(1, 1)
    assert str(s_from_psi_recursive(2) * 2) == "Psi_2 + Psi_1^2"
    three = P(3) + P(1, 2) + P(2, 1) * Fraction(1, 2) + P(1, 1, 1) * Fraction(1, 2)
    assert s_from_psi_recursive(3) * 3 == three
    assert str(s_from_psi_recursive(3) * 3) == "Psi_3 + Psi_1 Psi_2 + 1/2 Psi_2 Psi_1 + 1/2 Psi_1^3"


@pytest.mark.parametrize("n", range(1, 9))
def test_three_routes_agree(n):
    assert s_from_psi_recursive(n) == s_from_psi_explicit(n) == quasidet_expand(n)


@pytest.mark.parametrize("n", range(1, 9))
def test_commutative_shadow(n):
    # abelianised, the coefficient of Psi_1^n is 1/n! (exp of the power sums)
    s = s_from_psi_recursive(n)
    assert s.terms[(1,) * n] == Fraction(1, factorial(n))
    assert sum(s.terms.values()) == 1  # S_n at Psi_k = 1 for all k gives 1


def test_lambda_relations():
    assert lambda_in_s(2) == NcsfExpr("S", {(1, 1): 1, (2,): -1})
    ok, deg, _ = lambda_sigma_inverse_check(8)
    assert ok and deg is None


@pytest.mark.parametrize("n", range(1, 7))
def test_basis_changes_invert(n):
    s = NcsfExpr.gen("S", n)
    assert to_basis(to_basis(s, "Psi"), "S") == s
    assert to_basis(to_basis(s, "Lambda"), "S") == s
    assert to_basis(psi_in_s(n), "Psi") == NcsfExpr.gen("Psi", n)


@pytest.mark.parametrize("n", range(0, 9))
def test_comult_s(n):
    assert comult_s_check(n)


def test_psi_primitive():
    assert ncsf_coproduct(P(3)) == {((3,), ()): 1, ((), (3,)): 1}


@given(st.lists(st.integers(1, 4), max_size=5))
def test_coassociativity(comp):
    assert coassociativity_check(comp)


def test_errors():
    with pytest.raises(ValueError):
        NcsfExpr("Foo")
    with pytest.raises(ValueError):
        P(1) + NcsfExpr.gen("S", 1)
    with pytest.raises(ValueError):
        ncsf_coproduct(NcsfExpr.gen("S", 1))
