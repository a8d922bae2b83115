"""Quivers, Euler forms, the generator index set and sign twists."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

__all__ = [
    "Quiver",
    "GeneratorIndex",
    "TwistForm",
    "QuiverError",
    "classify_vertices",
    "euler_form",
    "symmetrized_form",
    "generator_pairing",
    "weight",
    "default_twist",
    "validate_twist",
    "jordan_quiver",
    "loop_quiver",
    "a_n_quiver",
    "two_vertex_quiver",
]


class QuiverError(ValueError):
    pass


class GeneratorIndex(NamedTuple):
    """A letter (i', n) of the generating set.

    ``vertex`` is the position of i' in the quiver's vertex order, so the
    natural tuple order is (vertex position, level).
    """

    vertex: int
    level: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        vs = tuple(str(v) for v in self.vertices)
        if len(set(vs)) != len(vs):
            dup = next(v for v in vs if vs.count(v) > 1)
            raise QuiverError(f"duplicate vertex {dup!r}")
        index = {v: k for k, v in enumerate(vs)}
        arrows = []
        for a in self.arrows:
            s, t = (str(x) for x in a)
            for end in (s, t):
                if end not in index:
                    raise QuiverError(f"arrow ({s!r}, {t!r}) uses undeclared vertex {end!r}")
            arrows.append((s, t))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arrows", tuple(arrows))
        object.__setattr__(self, "_index", index)

    @property
    def n(self):
        return len(self.vertices)

    def index(self, v):
        if isinstance(v, int):
            if not 0 <= v < self.n:
                raise QuiverError(f"vertex position {v} out of range")
            return v
        try:
            return self._index[str(v)]
        except KeyError:
            raise QuiverError(f"unknown vertex {v!r}") from None

    def loops(self, v):
        name = self.vertices[self.index(v)]
        return sum(1 for s, t in self.arrows if s == t == name)

    def arrows_between(self, u, v):
        """Arrows in either direction between two distinct vertices."""
        a, b = self.vertices[self.index(u)], self.vertices[self.index(v)]
        return sum(1 for s, t in self.arrows if {s, t} == {a, b} and s != t)

    def is_real(self, v):
        return self.loops(v) == 0

    def euler_matrix(self):
        m = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        for s, t in self.arrows:
            m[self._index[s]][self._index[t]] -= 1
        return m

    def symmetrized_matrix(self):
        e = self.euler_matrix()
        return [[e[i][j] + e[j][i] for j in range(self.n)] for i in range(self.n)]

    def generators(self, max_level):
        """Letters of I_infinity with level <= max_level, in letter order."""
        out = []
        for v in range(self.n):
            top = 1 if self.is_real(v) else max_level
            out.extend(GeneratorIndex(v, lvl) for lvl in range(1, top + 1))
        return out

    def basis(self, v):
        k = self.index(v)
        return tuple(int(i == k) for i in range(self.n))

    def zero(self):
        return (0,) * self.n

    def letter_name(self, letter):
        return f"{self.vertices[letter[0]]}{letter[1]}" if not self.is_real(letter[0]) else self.vertices[letter[0]]

    def to_json(self):
        return {"vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "vertices" not in data:
            raise QuiverError("quiver JSON must be an object with a 'vertices' list")
        arrows = data.get("arrows", [])
        for a in arrows:
            if not (isinstance(a, (list, tuple)) and len(a) == 2):
                raise QuiverError(f"arrow {a!r} must be a [source, target] pair")
        return cls(tuple(data["vertices"]), tuple(tuple(a) for a in arrows))

    def dumps(self):
        return json.dumps(self.to_json())


def _check_dim(q, *vecs):
    for d in vecs:
        if len(d) != q.n:
            raise QuiverError(f"dimension vector {tuple(d)} has length {len(d)}, quiver has {q.n} vertices")


def classify_vertices(q):
    kinds = {}
    for v in q.vertices:
        g = q.loops(v)
        kinds[v] = "real" if g == 0 else "isotropic" if g == 1 else "hyperbolic"
    return kinds


def euler_form(q, d, e):
    _check_dim(q, d, e)
    total = sum(x * y for x, y in zip(d, e))
    for s, t in q.arrows:
        total -= d[q._index[s]] * e[q._index[t]]
    return total


def symmetrized_form(q, d, e):
    return euler_form(q, d, e) + euler_form(q, e, d)


def generator_pairing(q, i, j):
    sym = symmetrized_form(q, q.basis(i[0]), q.basis(j[0]))
    return i[1] * j[1] * sym


def weight(q, x):
    """Weight of a letter, or of a word (sum of letter weights)."""
    out = [0] * q.n
    if len(x) == 2 and isinstance(x[0], int) and isinstance(x[1], int):
        x = (x,)
    for v, lvl in x:
        out[v] += lvl
    return tuple(out)


@dataclass(frozen=True)
class TwistForm:
    """Sign form Psi(d, e) = (-1)^(d^T psi e); only psi mod 2 matters."""

    psi: tuple

    def __post_init__(self):
        object.__setattr__(self, "psi", tuple(tuple(int(x) for x in row) for row in self.psi))

    def exponent(self, d, e):
        return sum(d[i] * self.psi[i][j] * e[j] for i in range(len(d)) if d[i] for j in range(len(e)) if e[j])

    def __call__(self, d, e):
        return -1 if self.exponent(d, e) % 2 else 1


def default_twist(q):
    return TwistForm(tuple(tuple(r) for r in q.euler_matrix()))


def validate_twist(q, t):
    """None if psi(d,e)+psi(e,d) == (d,e) mod 2 on all basis pairs, else the first failing pair."""
    if len(t.psi) != q.n or any(len(r) != q.n for r in t.psi):
        raise QuiverError("twist matrix does not match the quiver size")
    sym = q.symmetrized_matrix()
    for i in range(q.n):
        for j in range(q.n):
            if (t.psi[i][j] + t.psi[j][i] - sym[i][j]) % 2:
                return (q.basis(i), q.basis(j))
    return None


# common test quivers

def loop_quiver(g, name="v"):
    return Quiver((name,), tuple((name, name) for _ in range(g)))


def jordan_quiver():
    return loop_quiver(1)


def a_n_quiver(n):
    names = tuple("abcdefghijklmnopqrstuvwxyz"[:n])
    return Quiver(names, tuple((names[k], names[k + 1]) for k in range(n - 1)))


def two_vertex_quiver(t, loops_a=0, loops_b=0):
    """Vertices a, b with t arrows a->b and the given loop counts."""
    arrows = [("a", "b")] * t + [("a", "a")] * loops_a + [("b", "b")] * loops_b
    return Quiver(("a", "b"), tuple(arrows))
