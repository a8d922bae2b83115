from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quivergkm.coeffs import (
    QQ,
    QQ_q,
    Q_MINUS_QINV,
    LaurentPoly,
    RatFunc,
    evaluate,
    case_split_sign,
    q_binomial,
    q_factorial,
    q_integer,
    qbinom_sign_probe,
    substitute_neg_q,
)

q = LaurentPoly.monomial(1)

laurent = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(LaurentPoly)


def naive_q_integer(n):
    # oracle: q^(n-1) + q^(n-3) + ... + q^(1-n)
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


def test_q_integer_values():
    assert q_integer(0) == LaurentPoly()
    assert q_integer(1) == LaurentPoly.const(1)
    assert q_integer(2) == q + q ** -1
    assert str(q_integer(3)) == "q^2 + 1 + q^-2"
    for n in range(1, 12):
        assert q_integer(n) == naive_q_integer(n)
        assert q_integer(n) * Q_MINUS_QINV == q ** n - q ** -n


def test_q_factorial_is_product_of_q_integers():
    acc = LaurentPoly.const(1)
    for n in range(0, 9):
        if n:
            acc = acc * q_integer(n)
        assert q_factorial(n) == acc


def test_q_binomial_small():
    assert q_binomial(2, 1) == q + q ** -1
    assert q_binomial(4, 2) == LaurentPoly({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert q_binomial(5, 0) == LaurentPoly.const(1)
    with pytest.raises(ValueError):
        q_binomial(3, 5)


def test_q_binomial_pascal_oracle():
    # {n,k} = q^{-k} {n-1,k} + q^{n-k} {n-1,k-1}
    for n in range(1, 12):
        for k in range(1, n):
            rhs = q_binomial(n - 1, k).shift(-k) + q_binomial(n - 1, k - 1).shift(n - k)
            assert q_binomial(n, k) == rhs


@pytest.mark.parametrize("n", range(0, 13))
def test_q_binomial_symmetric_nonnegative_and_specializes(n):
    from math import comb

    for k in range(n + 1):
        b = q_binomial(n, k)
        assert b == q_binomial(n, n - k)
        assert all(c >= 0 for _, c in b.items())
        assert all(b[e] == b[-e] for e, _ in b.items())
        assert evaluate(b, 1) == comb(n, k)


def test_sign_law_and_case_split_rule_are_complementary():
    for n in range(0, 11):
        for k in range(n + 1):
            s = qbinom_sign_probe(n, k)
            assert s == (-1) ** (k * (n - k))
            assert case_split_sign(n, k) == -s
    # the hand example: {2,1}_{-q} = -q - q^-1
    assert substitute_neg_q(q_binomial(2, 1)) == -(q + q ** -1)


def test_parse_and_str():
    p = LaurentPoly.parse("q^3 + q + q^-1")
    assert p == q ** 3 + q + q ** -1
    assert str(p) == "q^3 + q + q^-1"
    assert LaurentPoly.parse("-2q^-2 + 1/2") == LaurentPoly({-2: -2, 0: Fraction(1, 2)})
    assert str(LaurentPoly()) == "0"


@given(laurent)
def test_parse_roundtrip(p):
    assert LaurentPoly.parse(str(p)) == p
    assert LaurentPoly.from_json(p.to_json()) == p


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == LaurentPoly()


@given(laurent, laurent, st.sampled_from([2, -1, 3, Fraction(1, 2)]))
def test_evaluate_is_multiplicative(a, b, x):
    assert evaluate(a * b, x) == evaluate(a, x) * evaluate(b, x)


def test_evaluate_rejects_zero():
    with pytest.raises(ZeroDivisionError):
        evaluate(q ** -1, 0)


def test_exact_division():
    assert (q_factorial(5)).exact_div(q_factorial(3)) == q_integer(4) * q_integer(5)
    with pytest.raises(ArithmeticError):
        LaurentPoly.const(1).exact_div(q + 1)


@given(laurent, laurent.filter(lambda p: bool(p)))
@settings(max_examples=60)
def test_ratfunc_field_ops(a, b):
    x = RatFunc(a, b)
    assert x * RatFunc(b) == RatFunc(a)
    if a:
        assert x * x.inverse() == RatFunc(1)
    assert (x + x) - x == x
    assert RatFunc(a).substitute_neg_q() == RatFunc(substitute_neg_q(a))


def test_ratfunc_normalization():
    x = RatFunc(q * q - 1, q - 1)
    assert x == RatFunc(q + 1)
    assert hash(x) == hash(RatFunc(q + 1))
    assert RatFunc(1) / RatFunc(q_integer(2)) == RatFunc(q, q * q + 1)
    assert RatFunc(q + 1, q - 1).evaluate(2) == 3


def test_rings():
    assert QQ.coerce(3) == Fraction(3)
    assert QQ_q.coerce(2) == RatFunc(2)
    assert QQ_q.one == RatFunc(1) and not QQ_q.zero


def test_q_factorial_sign_under_neg_q():
    # [j]_{-q} = (-1)^(j-1) [j]_q, so the factorial picks up (-1)^(l(l-1)/2)
    for j in range(1, 10):
        assert substitute_neg_q(q_integer(j)) == q_integer(j).scale((-1) ** (j - 1))
    for l in range(0, 10):
        assert substitute_neg_q(q_factorial(l)) == q_factorial(l).scale((-1) ** (l * (l - 1) // 2))
