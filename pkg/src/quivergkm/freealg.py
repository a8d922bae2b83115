"""The graded free associative algebra on the generators (i', n).

Words are tuples of ``(vertex_position, level)`` letters.  Words compare by
length first, then lexicographically, which fixes the column order of every
per-degree matrix and therefore the standard monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .coeffs import QQ, scalar_to_json
from .linalg import Echelon
from .quiver import GeneratorIndex, weight

__all__ = [
    "NCPoly",
    "GradedMatrix",
    "DegreeBoundError",
    "word_key",
    "enumerate_words",
    "multiply",
    "ad_power",
    "commutator",
    "span_rank",
    "ideal_graded_piece",
    "MAX_TOTAL_DEGREE",
]

MAX_TOTAL_DEGREE = 12


class DegreeBoundError(ValueError):
    pass


def word_key(w):
    return (len(w), w)


def _rev_word_key(w):
    return (len(w), tuple((-v, -lvl) for v, lvl in w))


ORDERS = {"deglex": word_key, "revlex": _rev_word_key}


class NCPoly:
    """Finitely supported map word -> scalar in a fixed ring (QQ or QQ(q))."""

    __slots__ = ("terms", "ring")

    def __init__(self, terms=None, ring=QQ):
        self.ring = ring
        t = {}
        if terms:
            for w, c in dict(terms).items():
                c = ring.coerce(c)
                if c:
                    w = tuple(GeneratorIndex(*x) for x in w)
                    s = t.get(w)
                    s = c if s is None else s + c
                    if s:
                        t[w] = s
                    else:
                        t.pop(w, None)
        self.terms = t

    @classmethod
    def _raw(cls, terms, ring):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.ring = ring
        return obj

    @classmethod
    def unit(cls, ring=QQ):
        return cls({(): 1}, ring)

    @classmethod
    def letter(cls, vertex, level=1, ring=QQ):
        return cls({(GeneratorIndex(vertex, level),): 1}, ring)

    @classmethod
    def word(cls, w, coeff=1, ring=QQ):
        return cls({tuple(w): coeff}, ring)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _check(self, other):
        if not isinstance(other, NCPoly):
            raise TypeError(f"expected NCPoly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return NCPoly._raw(t, self.ring)

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = self.ring.coerce(s)
        if not s:
            return NCPoly._raw({}, self.ring)
        return NCPoly._raw({w: c * s for w, c in self.terms.items()}, self.ring)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def coeff(self, w):
        return self.terms.get(tuple(w), self.ring.zero)

    def degrees(self, q):
        return {weight(q, w) for w in self.terms}

    def degree(self, q):
        """The common weight of all terms; raises if inhomogeneous or zero."""
        ds = self.degrees(q)
        if len(ds) != 1:
            raise ValueError(f"polynomial is not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def is_homogeneous(self, q, d=None):
        ds = self.degrees(q)
        if not ds:
            return True
        return len(ds) == 1 and (d is None or tuple(d) in ds)

    def map_coeffs(self, f, ring=None):
        ring = ring or self.ring
        return NCPoly({w: f(c) for w, c in self.terms.items()}, ring)

    def sorted_terms(self, order=word_key):
        return sorted(self.terms.items(), key=lambda wc: order(wc[0]))

    def to_json(self, q=None):
        def letter(x):
            return [q.vertices[x[0]] if q else x[0], x[1]]

        return [
            {"word": [letter(x) for x in w], "coeff": scalar_to_json(c)}
            for w, c in self.sorted_terms()
        ]

    def pretty(self, q=None):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            if w:
                name = " ".join(
                    (q.letter_name(x) if q else f"e{x[0]}_{x[1]}") for x in w
                )
            else:
                name = "1"
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCPoly({self.pretty()})"


def _bounded(d, max_total):
    if any(x < 0 for x in d):
        raise ValueError(f"negative dimension vector {d}")
    if sum(d) > max_total:
        raise DegreeBoundError(f"total degree {sum(d)} exceeds the bound {max_total}")


def enumerate_words(q, d, max_total=MAX_TOTAL_DEGREE, order="deglex"):
    """All words of weight exactly d, each once, sorted by the word order."""
    d = tuple(d)
    if len(d) != q.n:
        raise ValueError(f"dimension vector {d} does not match {q.n} vertices")
    _bounded(d, max_total)
    real = [q.is_real(v) for v in range(q.n)]
    out = []

    def rec(rem, prefix):
        if not any(rem):
            out.append(tuple(prefix))
            return
        for v in range(q.n):
            if not rem[v]:
                continue
            top = 1 if real[v] else rem[v]
            for lvl in range(1, top + 1):
                rem[v] -= lvl
                prefix.append(GeneratorIndex(v, lvl))
                rec(rem, prefix)
                prefix.pop()
                rem[v] += lvl

    rec(list(d), [])
    out.sort(key=ORDERS[order])
    return out


def multiply(p, r):
    p._check(r)
    t = {}
    for w1, c1 in p.terms.items():
        for w2, c2 in r.terms.items():
            w = w1 + w2
            s = t.get(w)
            v = c1 * c2
            s = v if s is None else s + v
            if s:
                t[w] = s
            else:
                t.pop(w, None)
    return NCPoly._raw(t, p.ring)


def commutator(a, b):
    return multiply(a, b) - multiply(b, a)


def ad_power(a, k, b):
    if k < 0:
        raise ValueError("ad power must be nonnegative")
    x = b
    for _ in range(k):
        x = commutator(a, x)
    return x


def _vector(poly, col):
    try:
        return {col[w]: c for w, c in poly.terms.items()}
    except KeyError as exc:
        raise ValueError(f"word {exc.args[0]} is outside the degree") from None


def span_rank(polys, q, d, order="deglex"):
    """Rank, pivot words and RREF basis of homogeneous polynomials of degree d."""
    d = tuple(d)
    words = enumerate_words(q, d, order=order)
    col = {w: k for k, w in enumerate(words)}
    ech = Echelon()
    ring = None
    for p in polys:
        if not p.is_homogeneous(q, d):
            raise ValueError(f"input is not homogeneous of degree {d}")
        ring = ring or p.ring
        ech.add(_vector(p, col))
    ring = ring or QQ
    basis = [
        NCPoly._raw({words[k]: v for k, v in row.items()}, ring)
        for _, row in sorted(ech.reduced_rows().items())
    ]
    return ech.rank, [words[c] for c in ech.pivots], basis


@dataclass
class GradedMatrix:
    """Echelonised ideal piece in one degree."""

    degree: tuple
    words: list
    echelon: Echelon
    ring: object = QQ

    @property
    def rank(self):
        return self.echelon.rank

    @property
    def pivot_words(self):
        return [self.words[c] for c in self.echelon.pivots]

    @property
    def standard_monomials(self):
        piv = self.echelon.rows
        return [w for k, w in enumerate(self.words) if k not in piv]

    @property
    def free_dim(self):
        return len(self.words)

    @property
    def quotient_dim(self):
        return len(self.words) - self.rank

    def column(self):
        return {w: k for k, w in enumerate(self.words)}

    def reduce(self, poly):
        col = self.column()
        rem = self.echelon.reduce(_vector(poly, col))
        return NCPoly._raw({self.words[k]: v for k, v in rem.items()}, poly.ring)

    def contains(self, poly):
        return not self.reduce(poly)


def _sub_vectors(d, r):
    """All u with 0 <= u <= d - r componentwise, or None if r does not fit."""
    c = tuple(x - y for x, y in zip(d, r))
    if any(x < 0 for x in c):
        return None, None
    return c, list(product(*(range(x + 1) for x in c)))


def ideal_graded_piece(generators, q, d, order="deglex", ring=None, max_total=MAX_TOTAL_DEGREE):
    """Span of w*r*w' over generators r and words w, w' landing in degree d."""
    d = tuple(d)
    words = enumerate_words(q, d, max_total=max_total, order=order)
    col = {w: k for k, w in enumerate(words)}
    ech = Echelon()
    ring = ring or (generators[0].ring if generators else QQ)
    full = len(words)
    word_cache = {}

    def words_of(u):
        if u not in word_cache:
            word_cache[u] = enumerate_words(q, u, max_total=max_total)
        return word_cache[u]

    for r in generators:
        if not r:
            continue
        rd = r.degree(q)
        c, lefts = _sub_vectors(d, rd)
        if c is None:
            continue
        for u in lefts:
            v = tuple(x - y for x, y in zip(c, u))
            for wl in words_of(u):
                for wr in words_of(v):
                    if ech.rank == full:
                        break
                    ech.add({col[wl + w + wr]: coef for w, coef in r.terms.items()})
    return GradedMatrix(d, words, ech, ring)
