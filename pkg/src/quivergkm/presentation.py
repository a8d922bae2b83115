"""Serre presentations of U(n_Q^+) and U_q(n_Q^+), graded quotients and checks.

Ideal membership is decided degree by degree: the ideal piece in degree d is
the row space of all ``w * r * w'`` for relations r, and the quotient basis
is the set of standard (non-pivot) words.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial

from .coeffs import QQ, QQ_q, RatFunc, q_binomial, q_factorial, substitute_neg_q
from .freealg import (
    DegreeBoundError,
    NCPoly,
    ad_power,
    commutator,
    enumerate_words,
    ideal_graded_piece,
    multiply,
)
from .linalg import clear_denominators, hermite_normal_form, hnf_contains
from .ncsf import s_from_psi_recursive
from .quiver import GeneratorIndex, generator_pairing, weight

__all__ = [
    "Presentation",
    "GradedQuotient",
    "CheckResult",
    "LatticeReport",
    "serre_element",
    "serre_generators_classical",
    "serre_generators_quantum",
    "graded_dimension",
    "normal_form",
    "divided_power",
    "tilde_generator",
    "tilde_serre_check",
    "divided_serre_check",
    "integral_generators",
    "integral_lattice_closure",
    "compare_integral_forms",
    "degrees_up_to",
]


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    def to_json(self):
        return {"check": self.name, "status": "ok" if self.ok else "fail", "payload": self.detail}


def _letter_poly(letter, ring):
    return NCPoly({(letter,): 1}, ring)


def serre_element(q, j, i, flavor="classical", neg_q=False, exponent=None):
    """Serre element for a real letter j acting on a letter i.

    Classical: ad(e_j)^N (e_i).  Quantum: sum_k (-1)^k {N, k}_q e_j^k e_i e_j^(N-k)
    (with q -> -q when ``neg_q``).  N defaults to 1 - (j, i).
    """
    N = 1 - generator_pairing(q, j, i) if exponent is None else exponent
    if flavor == "classical":
        return ad_power(_letter_poly(j, QQ), N, _letter_poly(i, QQ))
    terms = {}
    for k in range(N + 1):
        c = q_binomial(N, k)
        if neg_q:
            c = substitute_neg_q(c)
        terms[(j,) * k + (i,) + (j,) * (N - k)] = c if k % 2 == 0 else -c
    return NCPoly(terms, QQ_q)


def _generate(q, bound, flavor, neg_q=False):
    ring = QQ if flavor == "classical" else QQ_q
    letters = q.generators(bound)
    rels = []
    seen = set()

    def push(r):
        key = frozenset(r.terms.items())
        if r and key not in seen:
            seen.add(key)
            rels.append(r)

    for j in letters:
        if not q.is_real(j.vertex):
            continue
        for i in letters:
            if i == j:
                continue
            N = 1 - generator_pairing(q, j, i)
            if N + i.level > bound:
                continue
            push(serre_element(q, j, i, flavor, neg_q))
    for a_idx, a in enumerate(letters):
        for b in letters[a_idx + 1:]:
            if a.level + b.level > bound:
                continue
            if generator_pairing(q, a, b) == 0:
                push(commutator(_letter_poly(a, ring), _letter_poly(b, ring)))
    return rels


def serre_generators_classical(q, bound):
    if bound < 1:
        raise ValueError("degree bound must be >= 1")
    return _generate(q, bound, "classical")


def serre_generators_quantum(q, bound, neg_q=False):
    if bound < 1:
        raise ValueError("degree bound must be >= 1")
    return _generate(q, bound, "quantum", neg_q)


@dataclass
class GradedQuotient:
    """U(n^+)[d]: standard monomials and the reduction map onto them."""

    degree: tuple
    matrix: object

    @property
    def standard_monomials(self):
        return self.matrix.standard_monomials

    @property
    def free_dim(self):
        return self.matrix.free_dim

    @property
    def ideal_rank(self):
        return self.matrix.rank

    @property
    def dim(self):
        return self.matrix.quotient_dim

    def reduce(self, x):
        return self.matrix.reduce(x)

    def coordinates(self, x):
        r = self.reduce(x)
        return [r.coeff(w) for w in self.standard_monomials]

    def to_json(self):
        return {"degree": list(self.degree), "free": self.free_dim, "ideal": self.ideal_rank, "dim": self.dim}


class Presentation:
    """Generators e_i (i in I_infinity) modulo Serre relations, up to a total degree.

    ``flavor`` is ``"classical"`` (over QQ) or ``"quantum"`` (over QQ(q)).
    ``neg_q`` builds the quantum relations at -q.  ``relations`` overrides
    the generated list (used for negative controls).
    """

    def __init__(self, quiver, flavor="classical", bound=4, relations=None, order="deglex", neg_q=False):
        if flavor not in ("classical", "quantum"):
            raise ValueError(f"unknown flavor {flavor!r}")
        if neg_q and flavor != "quantum":
            raise ValueError("q -> -q only makes sense for the quantum flavor")
        self.quiver = quiver
        self.flavor = flavor
        self.bound = bound
        self.order = order
        self.neg_q = neg_q
        self.ring = QQ if flavor == "classical" else QQ_q
        if relations is None:
            relations = _generate(quiver, bound, flavor, neg_q)
        for r in relations:
            if r.ring != self.ring:
                raise ValueError("relation ring does not match the presentation")
            r.degree(quiver)
        self.relations = list(relations)
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Presentation({self.quiver.vertices}, {self.flavor}, bound={self.bound})"

    def letter(self, vertex, level=1):
        return NCPoly.letter(self.quiver.index(vertex), level, self.ring)

    def unit(self):
        return NCPoly.unit(self.ring)

    def _check_degree(self, d):
        d = tuple(d)
        if len(d) != self.quiver.n or any(x < 0 for x in d):
            raise ValueError(f"bad dimension vector {d}")
        if sum(d) > self.bound:
            raise DegreeBoundError(f"degree {d} exceeds the presentation bound {self.bound}")
        return d

    def quotient(self, d):
        d = self._check_degree(d)
        with self._lock:
            hit = self._cache.get(d)
        if hit is not None:
            return hit
        m = ideal_graded_piece(self.relations, self.quiver, d, order=self.order, ring=self.ring)
        gq = GradedQuotient(d, m)
        with self._lock:
            return self._cache.setdefault(d, gq)

    def graded_dimension(self, d):
        return self.quotient(d).dim

    def normal_form(self, x):
        if x.ring != self.ring:
            raise ValueError("ring mismatch")
        if not x:
            return x
        if not x.is_homogeneous(self.quiver):
            raise ValueError("normal_form needs a homogeneous input")
        return self.quotient(x.degree(self.quiver)).reduce(x)

    def in_ideal(self, x):
        return not self.normal_form(x)

    def dimension_table(self, degrees):
        return [self.quotient(d).to_json() for d in degrees]


def graded_dimension(p, d):
    return p.graded_dimension(d)


def normal_form(p, x):
    return p.normal_form(x)


def degrees_up_to(n_vertices, max_degree, include_zero=False):
    """Dimension vectors up to a total degree (int) or a componentwise bound (tuple)."""
    if isinstance(max_degree, int):
        ranges = [range(max_degree + 1)] * n_vertices
        keep = lambda d: sum(d) <= max_degree  # noqa: E731
    else:
        ranges = [range(x + 1) for x in max_degree]
        keep = lambda d: True  # noqa: E731
    out = [d for d in product(*ranges) if keep(d) and (include_zero or any(d))]
    out.sort(key=lambda d: (sum(d), d))
    return out


def divided_power(p, vertex, n):
    v = p.quiver.index(vertex)
    if not p.quiver.is_real(v):
        raise ValueError(f"vertex {p.quiver.vertices[v]!r} is not real")
    if n < 0:
        raise ValueError("n must be >= 0")
    w = (GeneratorIndex(v, 1),) * n
    if p.flavor == "classical":
        c = Fraction(1, factorial(n))
    else:
        c = RatFunc(1) / RatFunc(q_factorial(n))
    return NCPoly({w: c}, p.ring)


def tilde_generator(p, vertex, n):
    """The modified generator: divided power at real vertices, image of S_n otherwise."""
    v = p.quiver.index(vertex)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > p.bound:
        raise DegreeBoundError(f"level {n} exceeds the presentation bound {p.bound}")
    if n == 0:
        return p.unit()
    if p.quiver.is_real(v):
        return divided_power(p, v, n)
    s = s_from_psi_recursive(n)
    return NCPoly(
        {tuple(GeneratorIndex(v, r) for r in comp): c for comp, c in s.terms.items()},
        p.ring,
    )


def _arrow_count(p, a, b, t):
    actual = p.quiver.arrows_between(a, b)
    if t is not None and t != actual:
        raise ValueError(f"given arrow count {t} but the quiver has {actual}")
    return actual


def tilde_serre_check(p, j, i_vertex, n, t=None, exponent_shift=0):
    """ad(e_j)^(1 - (j, (i', n)))(tilde e_(i', n)) must vanish in the quotient.

    ``exponent_shift=-1`` is the strictness control: it should *not* vanish.
    """
    q = p.quiver
    jv, iv = q.index(j), q.index(i_vertex)
    if not q.is_real(jv):
        raise ValueError("j must be a real vertex")
    _arrow_count(p, jv, iv, t)
    jl = GeneratorIndex(jv, 1)
    N = 1 - generator_pairing(q, jl, GeneratorIndex(iv, n)) + exponent_shift
    x = ad_power(p.letter(jv), N, tilde_generator(p, iv, n))
    nf = p.normal_form(x)
    return CheckResult(
        "tilde_serre",
        not nf,
        {
            "j": q.vertices[jv],
            "i": q.vertices[iv],
            "n": n,
            "exponent": N,
            "degree": list(x.degree(q)) if x else None,
            "normal_form_terms": len(nf),
        },
    )


def divided_serre_check(p, i_vertex, j_vertex, n, t=None):
    """sum_{p=0}^{nt+1} (-1)^p e_i^(p) F e_i^(nt+1-p) lies in the ideal.

    F is the divided power e_j^(n) when j is real and the generator e_(j, n)
    otherwise; t is the number of arrows between i and j.
    """
    q = p.quiver
    iv, jv = q.index(i_vertex), q.index(j_vertex)
    if not q.is_real(iv):
        raise ValueError("i must be a real vertex")
    if iv == jv:
        raise ValueError("i and j must differ")
    t = _arrow_count(p, iv, jv, t)
    if n == 0:
        F = p.unit()
    elif q.is_real(jv):
        F = divided_power(p, jv, n)
    else:
        F = NCPoly.letter(jv, n, p.ring)
    m = n * t + 1
    total = NCPoly({}, p.ring)
    for k in range(m + 1):
        term = multiply(multiply(divided_power(p, iv, k), F), divided_power(p, iv, m - k))
        total = total + (term if k % 2 == 0 else -term)
    nf = p.normal_form(total)
    return CheckResult(
        "divided_serre",
        not nf,
        {
            "i": q.vertices[iv],
            "j": q.vertices[jv],
            "n": n,
            "t": t,
            "degree": list(total.degree(q)) if total else None,
            "normal_form_terms": len(nf),
        },
    )


# integral forms

FORMS = ("plain", "divided", "tilde")


def integral_generators(p, form, max_level):
    """(weight, element) pairs generating the chosen Z-form up to a level."""
    if form not in FORMS:
        raise ValueError(f"unknown integral form {form!r}; choose from {FORMS}")
    q = p.quiver
    gens = []
    for v in range(q.n):
        if q.is_real(v):
            top = 1 if form == "plain" else max_level
            for n in range(1, top + 1):
                gens.append((q.basis(v) if n == 1 else tuple(n * x for x in q.basis(v)), divided_power(p, v, n)))
        else:
            for n in range(1, max_level + 1):
                g = tilde_generator(p, v, n) if form == "tilde" else NCPoly.letter(v, n, p.ring)
                gens.append((tuple(n * x for x in q.basis(v)), g))
    return gens


def _monomials_of_degree(gens, d):
    """All products of generators (ordered) with weights summing to d."""
    out = []

    def rec(rem, acc):
        if not any(rem):
            out.append(acc)
            return
        for w, g in gens:
            if all(a >= b for a, b in zip(rem, w)):
                rec(tuple(a - b for a, b in zip(rem, w)), multiply(acc, g))

    if gens:
        rec(tuple(d), NCPoly.unit(gens[0][1].ring))
    return out


@dataclass
class LatticeReport:
    form: str
    ok: bool
    degrees: list
    failures: list

    def to_json(self):
        return {"form": self.form, "ok": self.ok, "degrees": self.degrees, "failures": self.failures}


def _lattice(p, form, d, gens):
    gq = p.quotient(d)
    vecs = [gq.coordinates(m) for m in _monomials_of_degree(gens, d)]
    scale, ints = clear_denominators(vecs)
    return gq, scale, hermite_normal_form(ints)


def _member(scale, hnf, coords):
    scaled = [Fraction(c) * scale for c in coords]
    if any(x.denominator != 1 for x in scaled):
        return False
    return hnf_contains(hnf, [int(x) for x in scaled])


def integral_lattice_closure(p, form="divided", max_degree=4):
    """Per degree, the Z-span of generator monomials in quotient coordinates.

    Checks the lattice has full rank and that products of lattice bases in
    degrees d1, d2 land in the lattice of degree d1 + d2.
    """
    if p.flavor != "classical":
        raise ValueError("integral lattices are computed for the classical flavor")
    degrees = degrees_up_to(p.quiver.n, max_degree)
    if any(sum(d) > p.bound for d in degrees):
        raise DegreeBoundError("lattice degrees exceed the presentation bound")
    gens = integral_generators(p, form, max(sum(d) for d in degrees) if degrees else 1)
    lat = {d: _lattice(p, form, d, gens) for d in degrees}
    rows = []
    failures = []
    for d, (gq, scale, hnf) in lat.items():
        full = len(hnf) == gq.dim
        rows.append({"degree": list(d), "dim": gq.dim, "rank": len(hnf), "scale": scale, "full_rank": full})
        if not full:
            failures.append({"degree": list(d), "reason": "lattice rank below quotient dimension"})

    def basis_elements(d):
        gq, scale, hnf = lat[d]
        std = gq.standard_monomials
        return [
            NCPoly({w: Fraction(c, scale) for w, c in zip(std, row)}, p.ring) for row in hnf
        ]

    for d1 in degrees:
        for d2 in degrees:
            d = tuple(a + b for a, b in zip(d1, d2))
            if d not in lat:
                continue
            gq, scale, hnf = lat[d]
            for b1 in basis_elements(d1):
                for b2 in basis_elements(d2):
                    if not _member(scale, hnf, gq.coordinates(multiply(b1, b2))):
                        failures.append({"degree": list(d), "factors": [list(d1), list(d2)]})
    return LatticeReport(form, not failures, rows, failures)


def compare_integral_forms(p, form_a, form_b, max_degree):
    """Per-degree containment between two integral forms (basis independent via HNF)."""
    degrees = degrees_up_to(p.quiver.n, max_degree)
    top = max(sum(d) for d in degrees)
    ga, gb = integral_generators(p, form_a, top), integral_generators(p, form_b, top)
    out = []
    for d in degrees:
        gq, sa, ha = _lattice(p, form_a, d, ga)
        _, sb, hb = _lattice(p, form_b, d, gb)
        a_in_b = all(_member(sb, hb, [Fraction(c, sa) for c in row]) for row in ha)
        b_in_a = all(_member(sa, ha, [Fraction(c, sb) for c in row]) for row in hb)
        out.append({"degree": list(d), f"{form_a}_in_{form_b}": a_in_b, f"{form_b}_in_{form_a}": b_in_a, "equal": a_in_b and b_in_a})
    return out
