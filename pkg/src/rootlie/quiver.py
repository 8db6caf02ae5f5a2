"""Quivers, Euler forms, Cartan data, Weyl reflections and root systems."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Relation:
    """Signed combination of paths; each path lists arrow names in the order they are traversed."""

    terms: tuple  # of (coefficient, tuple of arrow names)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()
    relations: tuple = ()
    _index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(set(verts)) != len(verts):
            raise QuiverError("duplicate vertex label")
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*map(str, a)) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        names = [a.name for a in arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow name")
        vset = set(verts)
        for a in arrows:
            for v in (a.source, a.target):
                if v not in vset:
                    raise QuiverError(f"arrow {a.name} references unknown vertex {v}")
        rels = tuple(r if isinstance(r, Relation) else Relation(tuple((int(c), tuple(p)) for c, p in r))
                     for r in self.relations)
        amap = {a.name: a for a in arrows}
        for r in rels:
            for _, path in r.terms:
                for x in path:
                    if x not in amap:
                        raise QuiverError(f"relation uses unknown arrow {x}")
                for x, y in zip(path, path[1:]):
                    if amap[x].target != amap[y].source:
                        raise QuiverError(f"relation path {path} is not composable")
        object.__setattr__(self, "relations", rels)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(verts)})

    # basic data --------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v) -> int:
        try:
            return self._index[str(v)]
        except KeyError:
            raise QuiverError(f"unknown vertex {v}") from None

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise QuiverError(f"unknown arrow {name}")

    def arrow_indices(self):
        """List of (name, source index, target index)."""
        return [(a.name, self._index[a.source], self._index[a.target]) for a in self.arrows]

    def simple(self, v) -> tuple:
        d = [0] * self.n
        d[self.index(v)] = 1
        return tuple(d)

    def is_relation_free(self) -> bool:
        return not self.relations

    def has_loops(self) -> bool:
        return any(a.source == a.target for a in self.arrows)

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = deque(v for v, k in indeg.items() if k == 0)
        seen = 0
        while queue:
            v = queue.popleft()
            seen += 1
            for a in self.arrows:
                if a.source == v:
                    indeg[a.target] -= 1
                    if indeg[a.target] == 0:
                        queue.append(a.target)
        return seen == self.n

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_source(self, v) -> bool:
        return not any(a.target == str(v) for a in self.arrows)

    def is_sink(self, v) -> bool:
        return not any(a.source == str(v) for a in self.arrows)

    def reversed_at(self, v) -> "Quiver":
        """Reverse every arrow incident to ``v`` (the quiver sigma_v Q)."""
        v = str(v)
        arrows = []
        for a in self.arrows:
            if v in (a.source, a.target):
                arrows.append(Arrow(a.name, a.target, a.source))
            else:
                arrows.append(a)
        return Quiver(self.vertices, tuple(arrows))

    def content_key(self) -> str:
        """Order-insensitive canonical text used for hashing."""
        lines = [f"vertex {v}" for v in sorted(self.vertices)]
        lines += [f"arrow {a.name}: {a.source} -> {a.target}" for a in sorted(self.arrows, key=lambda a: a.name)]
        for r in sorted(self.relations, key=repr):
            lines.append("relation " + " ".join(f"{c:+d} " + ".".join(p) for c, p in sorted(r.terms)))
        return "\n".join(lines) + "\n"


# standard quivers ------------------------------------------------------
def linear_quiver(n: int) -> Quiver:
    """Type A_n with arrows i -> i+1."""
    verts = tuple(str(i) for i in range(1, n + 1))
    arrows = tuple(Arrow(f"a{i}", str(i), str(i + 1)) for i in range(1, n))
    return Quiver(verts, arrows)


def d4_quiver() -> Quiver:
    """Type D_4 with the three outer vertices mapping into the centre 4."""
    return Quiver(("1", "2", "3", "4"), (Arrow("a", "1", "4"), Arrow("b", "2", "4"), Arrow("c", "3", "4")))


def kronecker_quiver() -> Quiver:
    return Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))


# forms -------------------------------------------------------------------
def _require_hereditary(q: Quiver):
    if q.relations:
        raise QuiverError("relations present")


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """<d, e> = sum_i d_i e_i - sum over arrows of d_source * e_target."""
    _require_hereditary(q)
    if len(d) != q.n or len(e) != q.n:
        raise QuiverError("dimension vector has the wrong length")
    val = sum(x * y for x, y in zip(d, e))
    for _, s, t in q.arrow_indices():
        val -= d[s] * e[t]
    return val


def symmetric_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    return euler_form(q, d, e) + euler_form(q, e, d)


def cartan_matrix(q: Quiver):
    """Symmetric matrix a_ij = (alpha_i, alpha_j)."""
    _require_hereditary(q)
    n = q.n
    simples = [q.simple(v) for v in q.vertices]
    return tuple(tuple(symmetric_form(q, simples[i], simples[j]) for j in range(n)) for i in range(n))


def reflect(q: Quiver, i, d: Sequence[int]) -> tuple:
    """Simple reflection s_i(d) = d - (d, alpha_i) alpha_i."""
    if any(a.source == a.target == str(i) for a in q.arrows):
        raise QuiverError(f"vertex {i} carries a loop")
    ai = q.simple(i)
    c = symmetric_form(q, d, ai)
    k = q.index(i)
    out = list(d)
    out[k] -= c
    return tuple(out)


# root systems --------------------------------------------------------------
@dataclass(frozen=True)
class RootSystem:
    kind: str  # "finite", "affine" or "wild"
    positive_real: tuple
    delta: tuple | None = None
    imaginary: tuple = ()
    height_bound: int | None = None

    @property
    def positive(self) -> tuple:
        return tuple(sorted(self.positive_real + self.imaginary, key=_root_key))


def height(d: Sequence[int]) -> int:
    return sum(d)


def _root_key(d):
    return (sum(d), tuple(d))


def _rational_null_space(mat):
    rows = [[Fraction(x) for x in r] for r in mat]
    n = len(rows[0]) if rows else 0
    piv = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for k, c in enumerate(piv):
            v[c] = -rows[k][f]
        basis.append(v)
    return basis


def _det(mat):
    m = [[Fraction(x) for x in r] for r in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def quiver_type(q: Quiver) -> tuple:
    """Return (kind, delta) with kind in {finite, affine, wild}."""
    if not q.is_connected():
        raise QuiverError("disconnected quiver")
    a = cartan_matrix(q)
    n = q.n
    if all(_det([row[:k] for row in a[:k]]) > 0 for k in range(1, n + 1)):
        return "finite", None
    ker = _rational_null_space(a)
    if len(ker) == 1:
        v = ker[0]
        if all(x < 0 for x in v):
            v = [-x for x in v]
        if all(x > 0 for x in v):
            # proper principal submatrices must be positive definite (affine, not indefinite)
            ok = True
            for skip in range(n):
                idx = [i for i in range(n) if i != skip]
                sub = [[a[i][j] for j in idx] for i in idx]
                if not all(_det([r[:k] for r in sub[:k]]) > 0 for k in range(1, n)):
                    ok = False
                    break
            if ok:
                den = 1
                for x in v:
                    den = den * x.denominator // _gcd(den, x.denominator)
                ints = [int(x * den) for x in v]
                g = 0
                for x in ints:
                    g = _gcd(g, x)
                return "affine", tuple(x // g for x in ints)
    return "wild", None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def enumerate_roots(q: Quiver, height_bound: int | None = None) -> RootSystem:
    """Positive real roots (closure of the simples under reflections) and delta.

    Finite type returns every positive root regardless of the bound.
    """
    kind, delta = quiver_type(q)
    if kind != "finite" and height_bound is None:
        raise QuiverError("a height bound is required for infinite root systems")
    bound = height_bound if kind != "finite" else None
    simples = [q.simple(v) for v in q.vertices]
    found = set(simples)
    queue = deque(simples)
    while queue:
        r = queue.popleft()
        for v in q.vertices:
            s = reflect(q, v, r)
            if all(x >= 0 for x in s) and any(s) and s not in found:
                if bound is None or sum(s) <= bound:
                    found.add(s)
                    queue.append(s)
    real = tuple(sorted(found, key=_root_key))
    imaginary = ()
    if kind == "affine":
        k = 1
        im = []
        while sum(delta) * k <= bound:
            im.append(tuple(k * x for x in delta))
            k += 1
        imaginary = tuple(im)
    return RootSystem(kind, real, delta, imaginary, height_bound)
