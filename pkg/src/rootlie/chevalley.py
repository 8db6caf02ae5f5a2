"""An independent construction of a simply-laced Lie algebra from its Cartan
matrix (root spaces with +-1 structure constants from a bimultiplicative sign),
and explicit isomorphism matching between two tables."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Sequence

from rootlie.rootcat import LieTable, Report


def roots_from_cartan(a: Sequence[Sequence[int]]) -> list:
    """All roots of a finite simply-laced root system, as coordinate tuples."""
    n = len(a)
    simples = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    found = set(simples)
    queue = deque(simples)
    while queue:
        r = queue.popleft()
        for i in range(n):
            c = sum(r[j] * a[j][i] for j in range(n))
            s = tuple(r[j] - (c if j == i else 0) for j in range(n))
            if s not in found and (all(x >= 0 for x in s) or all(x <= 0 for x in s)):
                found.add(s)
                queue.append(s)
                if len(found) > 10_000:
                    raise ValueError("Cartan matrix is not of finite type")
    pos = sorted(r for r in found if all(x >= 0 for x in r))
    return pos + [tuple(-x for x in r) for r in pos]


def sign_cocycle(a, alpha, beta) -> int:
    """Bimultiplicative sign with eps(a_i, a_i) = -1 and eps(a_i, a_j) = -1 for linked i < j."""
    n = len(a)
    e = 0
    for i in range(n):
        for j in range(n):
            if i == j or (i < j and a[i][j] == -1):
                e += alpha[i] * beta[j]
    return -1 if e % 2 else 1


def _pair(a, x, y) -> int:
    n = len(a)
    return sum(x[i] * a[i][j] * y[j] for i in range(n) for j in range(n))


def chevalley_table(a: Sequence[Sequence[int]]) -> LieTable:
    """Basis h_1..h_n, E_alpha; [E_a, E_-a] = -a, [E_a, E_b] = eps(a,b) E_(a+b), [h, E_a] = (h|a) E_a."""
    n = len(a)
    roots = roots_from_cartan(a)
    rset = set(roots)
    basis = [("h", i) for i in range(n)] + [("E", r) for r in roots]
    idx = {b: k for k, b in enumerate(basis)}
    degrees = [(0,) * n] * n + list(roots)
    struct = {}
    for i in range(n):
        hi = tuple(1 if j == i else 0 for j in range(n))
        for r in roots:
            c = _pair(a, hi, r)
            if c:
                struct[(i, idx[("E", r)])] = {idx[("E", r)]: c}
                struct[(idx[("E", r)], i)] = {idx[("E", r)]: -c}
    for r in roots:
        for s in roots:
            t = tuple(x + y for x, y in zip(r, s))
            if not any(t):
                out = {i: -r[i] for i in range(n) if r[i]}
            elif t in rset:
                out = {idx[("E", t)]: sign_cocycle(a, r, s)}
            else:
                continue
            struct[(idx[("E", r)], idx[("E", s)])] = out
    gram = None
    return LieTable(None, basis, degrees, struct, gram, {"oracle": "chevalley"})


def oracle_generators(t: LieTable, n: int):
    e = [t.vec(("E", tuple(1 if j == i else 0 for j in range(n)))) for i in range(n)]
    f = [{k: -c for k, c in t.vec(("E", tuple(-1 if j == i else 0 for j in range(n)))).items()}
         for i in range(n)]
    h = [t.vec(("h", i)) for i in range(n)]
    return e, f, h


def _scale(v, c):
    return {k: x * c for k, x in v.items() if x * c}


def match_isomorphism(t1: LieTable, gens1: Sequence[dict], t2: LieTable, gens2: Sequence[dict]):
    """Extend generator images to every basis element of t1 through brackets and check
    that the result is a bijective homomorphism.  Returns (phi, report); phi maps
    basis indices of t1 to vectors of t2."""
    rep = Report("isomorphism")
    phi = {}
    for g1, g2 in zip(gens1, gens2):
        if len(g1) == 1:
            (k, c), = g1.items()
            phi[k] = _scale(g2, Fraction(1, c))
    changed = True
    while changed:
        changed = False
        for k in list(phi):
            for g1, g2 in zip(gens1, gens2):
                b = t1.bracket({k: 1}, g1)
                if len(b) != 1:
                    continue
                (m, c), = b.items()
                if m in phi:
                    continue
                phi[m] = _scale(t2.bracket(phi[k], g2), Fraction(1, c))
                changed = True
    rep.add(len(phi) == t1.dim, ("basis not generated", t1.dim - len(phi)))
    for k, v in phi.items():
        rep.add(all(Fraction(x).denominator == 1 for x in v.values()), ("non-integral image", t1.label(k)))
    if len(phi) == t1.dim:
        from rootlie.rootcat import rational_rank
        mat = [[phi[k].get(j, 0) for j in range(t2.dim)] for k in range(t1.dim)]
        rep.add(t1.dim == t2.dim and rational_rank(mat) == t2.dim, ("not bijective",))
        for i in range(t1.dim):
            for j in range(t1.dim):
                lhs = apply_map(phi, t1.bracket({i: 1}, {j: 1}))
                rhs = t2.bracket(phi[i], phi[j])
                rep.add(lhs == rhs, (t1.label(i), t1.label(j), lhs, rhs))
    return phi, rep


def apply_map(phi: dict, v: dict) -> dict:
    out = {}
    for k, c in v.items():
        for m, x in phi[k].items():
            out[m] = out.get(m, 0) + c * x
    return {m: x for m, x in out.items() if x}
