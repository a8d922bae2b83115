"""Noncommutative symmetric functions in the Lambda, S and Psi bases.

Elements are linear combinations of compositions: the composition
``(c1, ..., cm)`` in basis ``Psi`` stands for ``Psi_c1 ... Psi_cm``.  The
empty composition is the unit, so ``S_0 = Lambda_0 = 1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

__all__ = [
    "NcsfExpr",
    "s_from_psi_recursive",
    "s_from_psi_explicit",
    "quasidet_expand",
    "lambda_in_s",
    "psi_in_s",
    "s_in_lambda",
    "to_basis",
    "lambda_sigma_inverse_check",
    "ncsf_coproduct",
    "tensor_product",
    "comult_s_check",
    "coassociativity_check",
    "BASES",
]

BASES = ("Lambda", "S", "Psi")


class NcsfExpr:
    __slots__ = ("basis", "terms")

    def __init__(self, basis, terms=None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.terms = {}
        for c, v in (terms or {}).items():
            c = tuple(c)
            if any(x < 1 for x in c):
                raise ValueError(f"composition {c} has a nonpositive part")
            v = Fraction(v)
            if v:
                self.terms[c] = self.terms.get(c, 0) + v
        self.terms = {c: v for c, v in self.terms.items() if v}

    @classmethod
    def one(cls, basis):
        return cls(basis, {(): 1})

    @classmethod
    def gen(cls, basis, k):
        return cls.one(basis) if k == 0 else cls(basis, {(k,): 1})

    def _same(self, other):
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __add__(self, other):
        self._same(other)
        t = dict(self.terms)
        for c, v in other.terms.items():
            t[c] = t.get(c, 0) + v
        return NcsfExpr(self.basis, t)

    def __neg__(self):
        return NcsfExpr(self.basis, {c: -v for c, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, NcsfExpr):
            return NcsfExpr(self.basis, {c: v * Fraction(other) for c, v in self.terms.items()})
        self._same(other)
        t = {}
        for c1, v1 in self.terms.items():
            for c2, v2 in other.terms.items():
                t[c1 + c2] = t.get(c1 + c2, 0) + v1 * v2
        return NcsfExpr(self.basis, t)

    def __rmul__(self, s):
        return self * s

    def __eq__(self, other):
        return isinstance(other, NcsfExpr) and self.basis == other.basis and self.terms == other.terms

    def __hash__(self):
        return hash((self.basis, frozenset(self.terms.items())))

    def weights(self):
        return {sum(c) for c in self.terms}

    def sorted_terms(self):
        # by length, then lexicographic, like words
        return sorted(self.terms.items(), key=lambda cv: (len(cv[0]), cv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        sym = self.basis
        out = []
        for c, v in self.sorted_terms():
            if not c:
                mono = "1"
            else:
                pieces = []
                k = 0
                while k < len(c):
                    m = k
                    while m < len(c) and c[m] == c[k]:
                        m += 1
                    run = m - k
                    pieces.append(f"{sym}_{c[k]}" + (f"^{run}" if run > 1 else ""))
                    k = m
                mono = " ".join(pieces)
            coef = "" if v == 1 else "-" if v == -1 else f"{v} "
            out.append(f"{coef}{mono}")
        s = " + ".join(out)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"NcsfExpr({self.basis}: {self})"

    def to_json(self):
        return {
            "basis": self.basis,
            "terms": [{"composition": list(c), "coeff": str(v)} for c, v in self.sorted_terms()],
        }


@lru_cache(maxsize=None)
def _s_rec(n):
    if n == 0:
        return NcsfExpr.one("Psi")
    acc = NcsfExpr("Psi")
    for k in range(n):
        acc = acc + _s_rec(k) * NcsfExpr.gen("Psi", n - k)
    return acc * Fraction(1, n)


def s_from_psi_recursive(n):
    """S_n from n S_n = sum_{k<n} S_k Psi_{n-k}, S_0 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _s_rec(n)


def s_from_psi_explicit(n):
    """S_n summed over strictly increasing cut points 0 < j_1 < ... < j_k < n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = {}
    for k in range(n):
        for cuts in combinations(range(1, n), k):
            points = (0,) + cuts + (n,)
            comp = tuple(points[r + 1] - points[r] for r in range(len(points) - 1))
            coef = Fraction(1, n)
            for j in cuts:
                coef /= j
            t[comp] = t.get(comp, 0) + coef
    return NcsfExpr("Psi", t)


def quasidet_expand(n):
    """S_n from the quasi-determinant of the Psi/(-k) Hessenberg matrix.

    The quasi-determinant at the boxed (1, n) entry is
    ``Psi_n - row * B^{-1} * col`` where B (rows 2..n, columns 1..n-1) is upper
    triangular with scalar diagonal -1, ..., -(n-1).  Back substitution keeps
    every Psi on the left, so no commutativity is used.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    P = lambda k: NcsfExpr.gen("Psi", k)  # noqa: E731
    m = n - 1
    # solve B x = col, with B[r][r] = -r, B[r][c] = Psi_{c-r} for c > r (1-based)
    x = [None] * (m + 1)
    for r in range(m, 0, -1):
        acc = NcsfExpr("Psi") - P(n - r)
        for c in range(r + 1, m + 1):
            acc = acc + P(c - r) * x[c]
        x[r] = acc * Fraction(1, r)
    qd = P(n)
    for c in range(1, m + 1):
        qd = qd - P(c) * x[c]
    return qd * Fraction(1, n)


@lru_cache(maxsize=None)
def lambda_in_s(n):
    """Lambda_n in the S basis from sigma(t) lambda(-t) = 1 (right factor solved)."""
    if n == 0:
        return NcsfExpr.one("S")
    # sum_{k=0}^n S_{n-k} (-1)^k Lambda_k = 0
    acc = NcsfExpr("S")
    for k in range(n):
        acc = acc + NcsfExpr.gen("S", n - k) * lambda_in_s(k) * (-1) ** k
    return acc * (-((-1) ** n))


@lru_cache(maxsize=None)
def s_in_lambda(n):
    """S_n in the Lambda basis from lambda(-t) sigma(t) = 1."""
    if n == 0:
        return NcsfExpr.one("Lambda")
    acc = NcsfExpr("Lambda")
    for k in range(1, n + 1):
        acc = acc + NcsfExpr.gen("Lambda", k) * s_in_lambda(n - k) * (-(-1) ** k)
    return acc


@lru_cache(maxsize=None)
def psi_in_s(n):
    """Psi_n in the S basis by inverting n S_n = sum_k S_k Psi_{n-k}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    acc = NcsfExpr.gen("S", n) * n
    for k in range(1, n):
        acc = acc - NcsfExpr.gen("S", k) * psi_in_s(n - k)
    return acc


def _gen_in(src, k, target):
    if src == target:
        return NcsfExpr.gen(target, k)
    if (src, target) == ("S", "Psi"):
        return s_from_psi_recursive(k)
    if (src, target) == ("Psi", "S"):
        return psi_in_s(k)
    if (src, target) == ("Lambda", "S"):
        return lambda_in_s(k)
    if (src, target) == ("S", "Lambda"):
        return s_in_lambda(k)
    mid = "S"
    return to_basis(_gen_in(src, k, mid), target)


def to_basis(x, target):
    """Rewrite x in another basis by substituting each generator."""
    if x.basis == target:
        return x
    out = NcsfExpr(target)
    for comp, v in x.terms.items():
        term = NcsfExpr.one(target)
        for k in comp:
            term = term * _gen_in(x.basis, k, target)
        out = out + term * v
    return out


def lambda_sigma_inverse_check(N):
    """Check both lambda(-t) sigma(t) = 1 and sigma(t) lambda(-t) = 1 through degree N.

    Lambda_k is solved from one side; the other side is then a genuine check.
    Returns (ok, first failing degree or None, {k: Lambda_k in S}).
    """
    lam = {k: lambda_in_s(k) for k in range(N + 1)}
    for n in range(1, N + 1):
        left = NcsfExpr("S")
        right = NcsfExpr("S")
        for k in range(n + 1):
            sgn = (-1) ** k
            left = left + lam[k] * NcsfExpr.gen("S", n - k) * sgn
            right = right + NcsfExpr.gen("S", n - k) * lam[k] * sgn
        if left.terms or right.terms:
            return False, n, lam
    return True, None, lam


# coproduct: pairs of compositions -> coefficient

def tensor_product(a, b):
    """Elementary tensor a (x) b of two expressions in the same basis."""
    a._same(b)
    return {
        (c1, c2): v1 * v2 for c1, v1 in a.terms.items() for c2, v2 in b.terms.items()
    }


def _add_into(acc, t, scale=1):
    for k, v in t.items():
        s = acc.get(k, 0) + v * scale
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def ncsf_coproduct(x):
    """Extend Delta(Psi_k) = Psi_k (x) 1 + 1 (x) Psi_k multiplicatively."""
    if x.basis != "Psi":
        raise ValueError("coproduct is defined on the Psi basis")
    out = {}
    for comp, v in x.terms.items():
        m = len(comp)
        for mask in range(1 << m):
            left = tuple(comp[k] for k in range(m) if mask >> k & 1)
            right = tuple(comp[k] for k in range(m) if not mask >> k & 1)
            _add_into(out, {(left, right): v})
    return out


def comult_s_check(n):
    """Delta S_n == sum_{p+q=n} S_p (x) S_q, with S expanded in Psi."""
    lhs = ncsf_coproduct(s_from_psi_recursive(n))
    rhs = {}
    for p in range(n + 1):
        _add_into(rhs, tensor_product(s_from_psi_recursive(p), s_from_psi_recursive(n - p)))
    return lhs == rhs


def _apply_left(t):
    """(Delta (x) id) on a tensor dict of Psi compositions, giving triples."""
    out = {}
    for (a, b), v in t.items():
        for (a1, a2), w in ncsf_coproduct(NcsfExpr("Psi", {a: 1})).items():
            k = (a1, a2, b)
            out[k] = out.get(k, 0) + v * w
    return {k: v for k, v in out.items() if v}


def _apply_right(t):
    out = {}
    for (a, b), v in t.items():
        for (b1, b2), w in ncsf_coproduct(NcsfExpr("Psi", {b: 1})).items():
            k = (a, b1, b2)
            out[k] = out.get(k, 0) + v * w
    return {k: v for k, v in out.items() if v}


def coassociativity_check(comp):
    d = ncsf_coproduct(NcsfExpr("Psi", {tuple(comp): 1}))
    return _apply_left(d) == _apply_right(d)
