"""Exact linear algebra: sparse echelon forms over a field, Hermite normal form over Z."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

__all__ = ["Echelon", "hermite_normal_form", "hnf_contains", "clear_denominators"]


class Echelon:
    """Incremental row echelon form of sparse rows ``{column: scalar}``.

    Each stored row has pivot at its largest column with pivot coefficient 1,
    so reducing a vector sweeps from the top column down.
    """

    def __init__(self):
        self.rows = {}

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, vec):
        """Return (remainder, first non-pivot column seen or None).

        The remainder is supported on non-pivot columns only and is unique.
        """
        x = {c: v for c, v in vec.items() if v}
        out = {}
        while x:
            c = max(x)
            v = x.pop(c)
            row = self.rows.get(c)
            if row is None:
                out[c] = v
                continue
            for k, w in row.items():
                if k == c:
                    continue
                nv = x.get(k, 0) - v * w
                if nv:
                    x[k] = nv
                else:
                    x.pop(k, None)
        return out

    def add(self, vec):
        """Insert a row; return True if it increased the rank."""
        r = self.reduce(vec)
        if not r:
            return False
        c = max(r)
        inv = 1 / r[c] if not isinstance(r[c], int) else Fraction(1, r[c])
        self.rows[c] = {k: v * inv for k, v in r.items()}
        self.rows[c][c] = r[c] * inv
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    def reduced_rows(self):
        """Fully reduced rows (RREF), keyed by pivot, ascending."""
        out = {}
        for c in sorted(self.rows):
            row = dict(self.rows[c])
            for p in sorted(out, reverse=True):
                v = row.get(p)
                if v:
                    for k, w in out[p].items():
                        nv = row.get(k, 0) - v * w
                        if nv:
                            row[k] = nv
                        else:
                            row.pop(k, None)
            # eliminate this pivot from earlier rows
            for p, prow in out.items():
                v = prow.get(c)
                if v:
                    for k, w in row.items():
                        nv = prow.get(k, 0) - v * w
                        if nv:
                            prow[k] = nv
                        else:
                            prow.pop(k, None)
            out[c] = row
        return out


def clear_denominators(vectors):
    """Scale rational vectors by the lcm of all denominators; return (scale, int vectors)."""
    den = 1
    for v in vectors:
        for x in v:
            den = lcm(den, Fraction(x).denominator)
    return den, [[int(Fraction(x) * den) for x in v] for v in vectors]


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(rows):
    """Row-style HNF of an integer matrix; returns the nonzero rows.

    Pivots move strictly right, are positive, and entries above a pivot lie in
    [0, pivot).  The result is a canonical basis of the row lattice.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    out = []
    r = 0
    for c in range(ncols):
        # gcd-combine column c over rows r..end
        for k in range(r + 1, len(a)):
            if a[k][c]:
                if not a[r][c]:
                    a[r], a[k] = a[k], a[r]
                    continue
                g, x, y = _xgcd(a[r][c], a[k][c])
                p, s = a[r][c] // g, a[k][c] // g
                ar, ak = a[r], a[k]
                a[r] = [x * u + y * w for u, w in zip(ar, ak)]
                a[k] = [p * w - s * u for u, w in zip(ar, ak)]
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-u for u in a[r]]
            piv = a[r][c]
            for k in range(r):
                f = a[k][c] // piv
                if f:
                    a[k] = [u - f * w for u, w in zip(a[k], a[r])]
            r += 1
            if r == len(a):
                break
    out = [row for row in a[:r] if any(row)]
    return out


def hnf_contains(hnf, vec):
    """Membership of an integer vector in the lattice spanned by HNF rows."""
    v = list(vec)
    for row in hnf:
        c = next(k for k, u in enumerate(row) if u)
        if v[c] % row[c]:
            return False
        f = v[c] // row[c]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)
