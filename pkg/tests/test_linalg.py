from fractions import Fraction

from hypothesis import given, strategies as st

from quivergkm.linalg import Echelon, clear_denominators, hermite_normal_form, hnf_contains

rows = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4)


def det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


@given(rows)
def test_echelon_rank_and_membership(rs):
    e = Echelon()
    for r in rs:
        e.add({k: Fraction(v) for k, v in enumerate(r) if v})
    if len(rs) == 3:
        assert (e.rank == 3) == (det3(rs) != 0)
    s = {k: Fraction(v) for k, v in enumerate([a + 2 * b for a, b in zip(rs[0], rs[-1])]) if v}
    assert e.contains(s)


@given(rows)
def test_hnf_contains_generators_and_sums(rs):
    h = hermite_normal_form(rs)
    for r in rs:
        assert hnf_contains(h, r)
    assert hnf_contains(h, [sum(c) for c in zip(*rs)])
    assert all(row[next(k for k, x in enumerate(row) if x)] > 0 for row in h)


def test_hnf_strict_sublattice():
    h = hermite_normal_form([[2, 0], [0, 1]])
    assert not hnf_contains(h, [1, 0])
    assert hnf_contains(h, [4, -3])


def test_clear_denominators():
    scale, ints = clear_denominators([[Fraction(1, 2), 1], [Fraction(1, 3), 0]])
    assert scale == 6 and ints == [[3, 6], [2, 0]]
