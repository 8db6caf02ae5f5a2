"""Bounded complexes of representations and of projectives, 2-periodic complexes,
homology, minimal models by cancelling contractible summands, and projective
resolutions built from pullbacks and projective covers.

Differentials raise degree: d_n : C_n -> C_(n+1), and H_n = ker d_n / im d_(n-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import random

from rootlie.fmatrix import FMatrix
from rootlie.quiver import Quiver
from rootlie.rep import (Rep, RepMorphism, direct_sum, kernel_cokernel, _coords, _matvec)


# paths and indecomposable projectives -------------------------------------------------
@lru_cache(maxsize=None)
def paths_from(q: Quiver, a: int) -> tuple:
    """All paths starting at vertex a as (start, arrow indices); the trivial path first."""
    arrows = q.arrow_indices()
    out = [(a, ())]
    frontier = [(a, ())]
    while frontier:
        nxt = []
        for start, arr in frontier:
            end = _end(q, start, arr)
            for k, (_, s, t) in enumerate(arrows):
                if s == end:
                    nxt.append((start, arr + (k,)))
        if len(out) > 10_000:
            raise ValueError("path algebra is infinite (oriented cycle)")
        out += nxt
        frontier = nxt
    return tuple(out)


def _end(q: Quiver, start: int, arr: tuple) -> int:
    return q.arrow_indices()[arr[-1]][2] if arr else start


@lru_cache(maxsize=None)
def _paths_at(q: Quiver, a: int, j: int) -> tuple:
    return tuple(pth for pth in paths_from(q, a) if _end(q, *pth) == j)


@lru_cache(maxsize=None)
def projective(q: Quiver, p: int, a: int) -> Rep:
    """P_a: basis at j = paths a -> j, arrows act by appending."""
    dims = tuple(len(_paths_at(q, a, j)) for j in range(q.n))
    mats = []
    for k, (_, s, t) in enumerate(q.arrow_indices()):
        rows_idx = {pth: r for r, pth in enumerate(_paths_at(q, a, t))}
        cols = _paths_at(q, a, s)
        entries = [[0] * len(cols) for _ in range(dims[t])]
        for c, (st, arr) in enumerate(cols):
            entries[rows_idx[(st, arr + (k,))]][c] = 1
        mats.append(FMatrix.from_rows(entries, p, cols=len(cols)) if dims[t] else FMatrix.zeros(0, len(cols), p))
    return Rep(q, p, dims, tuple(mats))


# elements of Hom(P_a, P_b) = paths b -> a, stored as sorted (path, coefficient) tuples
def elem(terms: dict, p: int) -> tuple:
    return tuple(sorted((k, v % p) for k, v in terms.items() if v % p))


def elem_add(x: tuple, y: tuple, p: int, c: int = 1) -> tuple:
    d = dict(x)
    for k, v in y:
        d[k] = d.get(k, 0) + c * v
    return elem(d, p)


def elem_compose(w: tuple, u: tuple, p: int) -> tuple:
    """psi o phi for psi given by paths c -> b and phi by paths b -> a."""
    d = {}
    for (ws, wa), cw in w:
        for (us, ua), cu in u:
            key = (ws, wa + ua)
            d[key] = d.get(key, 0) + cw * cu
    return elem(d, p)


def trivial_coefficient(x: tuple) -> int:
    for (s, arr), c in x:
        if not arr:
            return c
    return 0


def elem_identity(a: int) -> tuple:
    return (((a, ()), 1),)


def _morphism_matrix_at(q, p, a, b, x: tuple, j: int) -> list:
    """Vertex-j matrix of the map P_a -> P_b given by x (rows: paths b->j, cols: paths a->j)."""
    rows = _paths_at(q, b, j)
    cols = _paths_at(q, a, j)
    ridx = {pth: r for r, pth in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for (us, ua), cu in x:
        for c, (vs, va) in enumerate(cols):
            m[ridx[(us, ua + va)]][c] = (m[ridx[(us, ua + va)]][c] + cu) % p
    return m


def matrix_to_morphism(q: Quiver, p: int, src: tuple, tgt: tuple, mat, x_rep: Rep, y_rep: Rep) -> RepMorphism:
    comps = []
    for j in range(q.n):
        big = [[0] * x_rep.dim[j] for _ in range(y_rep.dim[j])]
        ro = 0
        for l, b in enumerate(tgt):
            nb = len(_paths_at(q, b, j))
            co = 0
            for k, a in enumerate(src):
                na = len(_paths_at(q, a, j))
                if mat[l][k]:
                    block = _morphism_matrix_at(q, p, a, b, mat[l][k], j)
                    for r in range(nb):
                        for c in range(na):
                            big[ro + r][co + c] = block[r][c]
                co += na
            ro += nb
        comps.append(FMatrix(y_rep.dim[j], x_rep.dim[j], p, tuple(v for row in big for v in row)))
    return RepMorphism(x_rep, y_rep, tuple(comps))


def projective_sum(q: Quiver, p: int, summands: tuple) -> Rep:
    if not summands:
        return Rep.from_lists(q, p, (0,) * q.n, {})
    return direct_sum(*[projective(q, p, a) for a in summands])


def mat_compose(q, p, d2, d1) -> tuple:
    """Matrix of d2 o d1."""
    rows = len(d2)
    inner = len(d1)
    cols = len(d1[0]) if d1 else 0
    out = []
    for l in range(rows):
        row = []
        for k in range(cols):
            acc = ()
            for m in range(inner):
                if d2[l][m] and d1[m][k]:
                    acc = elem_add(acc, elem_compose(d2[l][m], d1[m][k], p), p)
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _zero_mat(rows: int, cols: int) -> tuple:
    return tuple(tuple(() for _ in range(cols)) for _ in range(rows))


# general complexes ---------------------------------------------------------------------
@dataclass
class GeneralComplex:
    quiver: Quiver
    p: int
    terms: dict            # n -> Rep
    diffs: dict            # n -> RepMorphism C_n -> C_(n+1)

    def degrees(self):
        ks = [n for n, r in self.terms.items() if not r.is_zero()]
        return (min(ks), max(ks)) if ks else (0, -1)

    def term(self, n: int) -> Rep:
        r = self.terms.get(n)
        return r if r is not None else Rep.from_lists(self.quiver, self.p, (0,) * self.quiver.n, {})

    def diff(self, n: int) -> RepMorphism:
        d = self.diffs.get(n)
        return d if d is not None else RepMorphism.zero(self.term(n), self.term(n + 1))

    def check(self) -> bool:
        lo, hi = self.degrees()
        for n in range(lo - 1, hi + 1):
            if not self.diff(n).check():
                return False
            if not self.diff(n + 1).compose(self.diff(n)).is_zero():
                return False
        return True


@dataclass
class ChainMap:
    source: GeneralComplex
    target: GeneralComplex
    comps: dict  # n -> RepMorphism

    def comp(self, n: int) -> RepMorphism:
        c = self.comps.get(n)
        return c if c is not None else RepMorphism.zero(self.source.term(n), self.target.term(n))

    def check(self) -> bool:
        lo = min(self.source.degrees()[0], self.target.degrees()[0])
        hi = max(self.source.degrees()[1], self.target.degrees()[1])
        for n in range(lo - 1, hi + 1):
            a = self.target.diff(n).compose(self.comp(n))
            b = self.comp(n + 1).compose(self.source.diff(n))
            if not (a - b).is_zero():
                return False
        return True


def stalk(x: Rep, n: int = 0) -> GeneralComplex:
    return GeneralComplex(x.quiver, x.p, {n: x}, {})


def _factor_through(f: RepMorphism, incl: RepMorphism) -> RepMorphism:
    """g with incl o g = f, for f landing inside the image of the injective incl."""
    sub = incl.source
    comps = []
    for j in range(f.source.quiver.n):
        basis = [incl.comps[j].column(c) for c in range(sub.dim[j])]
        cols = [_coords(f.comps[j].column(c), basis, f.source.p) for c in range(f.source.dim[j])]
        comps.append(FMatrix.from_columns(cols, f.source.p, sub.dim[j]) if f.source.dim[j]
                     else FMatrix.zeros(sub.dim[j], 0, f.source.p))
    return RepMorphism(f.source, sub, tuple(comps))


def _homology_data(c: GeneralComplex, n: int):
    """(H_n, inclusion Z_n -> C_n, projection Z_n -> H_n)."""
    _, z_incl, _, _ = kernel_cokernel(c.diff(n))
    b = _factor_through(c.diff(n - 1), z_incl)
    _, _, h, proj = kernel_cokernel(b)
    return h, z_incl, proj


def homology(c) -> dict:
    if isinstance(c, TwoPeriodicComplex):
        return {0: c.homology(0), 1: c.homology(1)}
    lo, hi = c.degrees()
    return {n: _homology_data(c, n)[0] for n in range(lo, hi + 1)}


def is_quasi_iso(f: ChainMap) -> bool:
    lo = min(f.source.degrees()[0], f.target.degrees()[0])
    hi = max(f.source.degrees()[1], f.target.degrees()[1])
    for n in range(lo, hi + 1):
        hs, zs, _ = _homology_data(f.source, n)
        ht, zt, pt = _homology_data(f.target, n)
        if hs.dim != ht.dim:
            return False
        # Z_s -> C_s -> C_t factors through Z_t, then projects onto H_t
        g = pt.compose(_factor_through(f.comp(n).compose(zs), zt))
        if any(g.comps[j].rank() != ht.dim[j] for j in range(f.source.quiver.n)):
            return False
    return True


def identity_map(c: GeneralComplex) -> ChainMap:
    lo, hi = c.degrees()
    return ChainMap(c, c, {n: RepMorphism.identity(c.term(n)) for n in range(lo, hi + 1)})


def shift(c, k: int):
    """C[k]_n = C_(n+k) with differentials multiplied by (-1)^k."""
    if isinstance(c, TwoPeriodicComplex):
        return c.shift(k)
    s = -1 if k % 2 else 1
    terms = {n - k: r for n, r in c.terms.items()}
    diffs = {n - k: d.scale(s) for n, d in c.diffs.items()}
    return GeneralComplex(c.quiver, c.p, terms, diffs)


def _block(maps, rows, cols, p):
    """Assemble a RepMorphism between direct sums from a grid of component maps (None = 0)."""
    src = direct_sum(*cols) if cols else None
    tgt = direct_sum(*rows) if rows else None
    comps = []
    q = cols[0].quiver
    for j in range(q.n):
        big = [[0] * src.dim[j] for _ in range(tgt.dim[j])]
        ro = 0
        for r, row in enumerate(rows):
            co = 0
            for c, col in enumerate(cols):
                m = maps[r][c]
                if m is not None:
                    mm = m.comps[j]
                    for a in range(mm.rows):
                        for b in range(mm.cols):
                            big[ro + a][co + b] = mm[a, b]
                co += col.dim[j]
            ro += row.dim[j]
        comps.append(FMatrix(tgt.dim[j], src.dim[j], p, tuple(v for rr in big for v in rr)))
    return RepMorphism(src, tgt, tuple(comps))


def cone(f: ChainMap) -> GeneralComplex:
    """cone_n = X_(n+1) + Y_n with d = [[-d_X, 0], [f, d_Y]]."""
    x, y = f.source, f.target
    lo = min(x.degrees()[0] - 1, y.degrees()[0])
    hi = max(x.degrees()[1] - 1, y.degrees()[1])
    terms, diffs = {}, {}
    for n in range(lo, hi + 1):
        terms[n] = direct_sum(x.term(n + 1), y.term(n))
    for n in range(lo, hi + 1):
        rows = [x.term(n + 2), y.term(n + 1)]
        cols = [x.term(n + 1), y.term(n)]
        grid = [[x.diff(n + 1).scale(-1), None], [f.comp(n + 1), y.diff(n)]]
        diffs[n] = _block(grid, rows, cols, x.p)
    terms = {n: t for n, t in terms.items()}
    diffs[lo - 1] = RepMorphism.zero(GeneralComplex(x.quiver, x.p, terms, {}).term(lo - 1), terms[lo])
    return GeneralComplex(x.quiver, x.p, terms, {n: d for n, d in diffs.items() if n >= lo})


# projective complexes ------------------------------------------------------------------
@dataclass(frozen=True)
class ProjComplex:
    """Terms are tuples of vertex indices (one per summand P_i); d_n is a matrix of
    path-algebra elements, rows indexed by the summands of C_(n+1)."""

    quiver: Quiver
    p: int
    terms: tuple  # sorted (n, summands) pairs
    diffs: tuple  # sorted (n, matrix) pairs

    @classmethod
    def build(cls, q: Quiver, p: int, terms: dict, diffs: dict) -> "ProjComplex":
        t = tuple(sorted((n, tuple(s)) for n, s in terms.items() if s))
        d = []
        for n, m in sorted(diffs.items()):
            if terms.get(n) and terms.get(n + 1):
                d.append((n, tuple(tuple(elem(dict(e), p) if isinstance(e, dict) else e for e in row)
                                   for row in m)))
        return cls(q, p, t, tuple(d))

    def term(self, n: int) -> tuple:
        return dict(self.terms).get(n, ())

    def diff(self, n: int):
        m = dict(self.diffs).get(n)
        return m if m is not None else _zero_mat(len(self.term(n + 1)), len(self.term(n)))

    def degrees(self):
        ks = [n for n, _ in self.terms]
        return (min(ks), max(ks)) if ks else (0, -1)

    def dimension_sequence(self) -> dict:
        """n -> multiplicity vector over the indecomposable projectives."""
        return {n: tuple(s.count(i) for i in range(self.quiver.n)) for n, s in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def rep_term(self, n: int) -> Rep:
        return projective_sum(self.quiver, self.p, self.term(n))

    def to_general(self) -> GeneralComplex:
        terms = {n: self.rep_term(n) for n, _ in self.terms}
        diffs = {}
        for n, m in self.diffs:
            diffs[n] = matrix_to_morphism(self.quiver, self.p, self.term(n), self.term(n + 1), m,
                                          self.rep_term(n), self.rep_term(n + 1))
        return GeneralComplex(self.quiver, self.p, terms, diffs)

    def check(self) -> bool:
        lo, hi = self.degrees()
        for n in range(lo, hi):
            if any(any(e for e in row) for row in mat_compose(self.quiver, self.p, self.diff(n + 1), self.diff(n))):
                return False
        return True

    def is_minimal(self) -> bool:
        """Every differential lands in the radical (no trivial-path coefficients)."""
        return all(trivial_coefficient(e) == 0 for _, m in self.diffs for row in m for e in row)


def direct_sum_complexes(a: ProjComplex, b: ProjComplex) -> ProjComplex:
    q, p = a.quiver, a.p
    degs = sorted({n for n, _ in a.terms} | {n for n, _ in b.terms})
    terms = {n: a.term(n) + b.term(n) for n in degs}
    diffs = {}
    for n in degs:
        ma, mb = a.diff(n), b.diff(n)
        ra, ca = len(a.term(n + 1)), len(a.term(n))
        rb, cb = len(b.term(n + 1)), len(b.term(n))
        rows = [tuple(ma[l]) + ((),) * cb for l in range(ra)] + [((),) * ca + tuple(mb[l]) for l in range(rb)]
        diffs[n] = tuple(rows)
    return ProjComplex.build(q, p, terms, diffs)


def _strip(pc: ProjComplex):
    """Cancel invertible entries one at a time.

    Returns (minimal, cancelled pieces as (degree, vertex), inclusion matrices
    minimal -> input per degree)."""
    q, p = pc.quiver, pc.p
    terms = {n: list(s) for n, s in pc.terms}
    diffs = {n: [list(r) for r in m] for n, m in pc.diffs}
    # inclusion of the current complex into the input: per degree, a matrix with rows
    # indexed by input summands and columns by current summands
    incl = {n: [[elem_identity(a) if r == c else () for c in range(len(s))] for r, a in enumerate(s)]
            for n, s in terms.items()}
    pieces = []
    while True:
        hit = None
        for n in sorted(diffs):
            for l, row in enumerate(diffs[n]):
                for k, e in enumerate(row):
                    if trivial_coefficient(e):
                        hit = (n, l, k)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        n, l, k = hit
        d = diffs[n]
        a = trivial_coefficient(d[l][k])
        ainv = pow(a, -1, p)
        vertex = terms[n][k]
        pieces.append((n, vertex))
        # new d_n on the remaining summands: d - c a^-1 b
        new = []
        for l2 in range(len(d)):
            if l2 == l:
                continue
            row = []
            for k2 in range(len(d[0])):
                if k2 == k:
                    continue
                e = d[l2][k2]
                if d[l2][k] and d[l][k2]:
                    e = elem_add(e, elem_compose(d[l2][k], d[l][k2], p), p, -ainv)
                row.append(e)
            new.append(row)
        # inclusion at degree n: the removed summand k receives -a^-1 b
        inc = incl[n]
        new_inc = []
        for r in range(len(inc)):
            row = []
            for k2 in range(len(d[0])):
                if k2 == k:
                    continue
                e = inc[r][k2]
                if inc[r][k] and d[l][k2]:
                    e = elem_add(e, elem_compose(inc[r][k], d[l][k2], p), p, -ainv)
                row.append(e)
            new_inc.append(row)
        incl[n] = new_inc
        incl[n + 1] = [[e for c, e in enumerate(r) if c != l] for r in incl[n + 1]]
        diffs[n] = new
        if n - 1 in diffs:
            diffs[n - 1] = [r for i, r in enumerate(diffs[n - 1]) if i != k]
        if n + 1 in diffs:
            diffs[n + 1] = [[e for c, e in enumerate(r) if c != l] for r in diffs[n + 1]]
        del terms[n][k]
        del terms[n + 1][l]
    minimal = ProjComplex.build(q, p, {n: tuple(s) for n, s in terms.items()},
                                {n: tuple(tuple(r) for r in m) for n, m in diffs.items()})
    return minimal, pieces, incl


def contractible(q: Quiver, p: int, pieces) -> ProjComplex:
    out = ProjComplex(q, p, (), ())
    for n, v in pieces:
        out = direct_sum_complexes(out, ProjComplex.build(q, p, {n: (v,), n + 1: (v,)},
                                                         {n: ((elem_identity(v),),)}))
    return out


def strip_contractibles(pc: ProjComplex):
    """(minimal complex, contractible summand) with minimal + contractible ~ input."""
    minimal, pieces, _ = _strip(pc)
    return minimal, contractible(pc.quiver, pc.p, pieces)


def strip_with_inclusion(pc: ProjComplex):
    """Minimal complex together with its inclusion into pc as a ChainMap."""
    minimal, _, incl = _strip(pc)
    src, tgt = minimal.to_general(), pc.to_general()
    comps = {}
    for n, m in incl.items():
        if pc.term(n) and minimal.term(n):
            comps[n] = matrix_to_morphism(pc.quiver, pc.p, minimal.term(n), pc.term(n), m,
                                          src.term(n), tgt.term(n))
    return minimal, ChainMap(src, tgt, comps)


# resolutions ---------------------------------------------------------------------------
def projective_cover(x: Rep):
    """(summands, map to x as generator vectors): a minimal surjection sum P_i -> x."""
    q, p = x.quiver, x.p
    summands, gens = [], []
    for i in range(q.n):
        if not x.dim[i]:
            continue
        # radical at i: images of all arrows ending at i
        cols = []
        for k, (_, s, t) in enumerate(q.arrow_indices()):
            if t == i:
                cols += x.mats[k].columns()
        rows = [list(c) for c in cols if any(c)]
        from rootlie import _kernels
        red, piv = _kernels.rref(rows, x.dim[i], p) if rows else ([], [])
        for j in range(x.dim[i]):
            if j in piv:
                continue
            v = [1 if r == j else 0 for r in range(x.dim[i])]
            summands.append(i)
            gens.append(v)
    return tuple(summands), gens


def _generator_map(x: Rep, summands, gens) -> RepMorphism:
    """The map sum P_i -> x sending the trivial path of summand k to gens[k]."""
    q, p = x.quiver, x.p
    src = projective_sum(q, p, summands)
    comps = []
    for j in range(q.n):
        cols = []
        for a, g in zip(summands, gens):
            for (st, arr) in _paths_at(q, a, j):
                v = list(g)
                for k in arr:
                    v = _matvec(x.mats[k], v)
                cols.append(v)
        comps.append(FMatrix.from_columns(cols, p, x.dim[j]) if cols else FMatrix.zeros(x.dim[j], 0, p))
    return RepMorphism(src, x, tuple(comps))


def _as_path_matrix(f: RepMorphism, src_summands, tgt_summands) -> tuple:
    """Read a map between sums of projectives as a matrix of path-algebra elements."""
    q, p = f.source.quiver, f.source.p
    # offsets of each target summand inside the vertex spaces of the target
    offs = []
    acc = [0] * q.n
    for b in tgt_summands:
        offs.append(list(acc))
        for j in range(q.n):
            acc[j] += len(_paths_at(q, b, j))
    src_off = [0] * q.n
    rows = [[() for _ in src_summands] for _ in tgt_summands]
    for k, a in enumerate(src_summands):
        col = src_off[a]
        for j in range(q.n):
            src_off[j] += len(_paths_at(q, a, j))
        v = f.comps[a].column(col)  # image of the trivial path of summand k
        for l, b in enumerate(tgt_summands):
            terms = {}
            for r, pth in enumerate(_paths_at(q, b, a)):
                c = v[offs[l][a] + r]
                if c:
                    terms[pth] = c
            rows[l][k] = elem(terms, p)
    return tuple(tuple(r) for r in rows)


def projective_resolve(m: GeneralComplex, with_map: bool = False):
    """Minimal projective complex quasi-isomorphic to m.

    Degree by degree from the top: P_n covers the pullback of d: M_n -> M_(n+1)
    and the cycles of P_(n+1) over M_(n+1).  Projective covers make the
    process stop one degree below m (submodules of projectives are projective).
    """
    q, p = m.quiver, m.p
    if q.relations:
        raise ValueError("relations present")
    lo, hi = m.degrees()
    if lo > hi:
        empty = ProjComplex(q, p, (), ())
        return (empty, ChainMap(empty.to_general(), m, {})) if with_map else empty
    P_terms: dict = {}
    P_diffs: dict = {}
    P_reps: dict = {}
    pis: dict = {}
    n = hi
    while True:
        Mn = m.term(n)
        if n + 1 in P_terms:
            Pn1 = P_reps[n + 1]
            dnext = P_diffs.get(n + 1)
            if dnext is None:
                _, zi, _, _ = kernel_cokernel(RepMorphism.zero(Pn1, Pn1))
            else:
                _, zi, _, _ = kernel_cokernel(matrix_to_morphism(q, p, P_terms[n + 1], P_terms.get(n + 2, ()),
                                                                 dnext, Pn1, P_reps.get(n + 2, projective_sum(q, p, ()))))
            pi1 = pis[n + 1]
        else:
            zi = None
        # pullback X = {(x, z) in M_n + Z : d_M x = pi(z)} inside M_n + P_(n+1)
        if zi is None:
            X_incl = RepMorphism.identity(Mn)
            to_M = X_incl
            to_P = None
        else:
            Z = zi.source
            amb = direct_sum(Mn, Z)
            diff = _block([[m.diff(n), pi1.compose(zi).scale(-1)]], [m.term(n + 1)], [Mn, Z], p)
            diff = RepMorphism(amb, m.term(n + 1), diff.comps)
            _, X_incl, _, _ = kernel_cokernel(diff)
            proj_M = _block([[RepMorphism.identity(Mn), None]], [Mn], [Mn, Z], p)
            proj_Z = _block([[None, RepMorphism.identity(Z)]], [Z], [Mn, Z], p)
            to_M = RepMorphism(X_incl.source, Mn, proj_M.compose(RepMorphism(X_incl.source, proj_M.source, X_incl.comps)).comps)
            to_Z = RepMorphism(X_incl.source, Z, proj_Z.compose(RepMorphism(X_incl.source, proj_Z.source, X_incl.comps)).comps)
            to_P = zi.compose(to_Z)
        X = X_incl.source
        if X.is_zero():
            if n < lo:
                break
            n -= 1
            continue
        summands, gens = projective_cover(X)
        cover = _generator_map(X, summands, gens)
        Pn = cover.source
        P_terms[n] = summands
        P_reps[n] = Pn
        pis[n] = to_M.compose(cover)
        if to_P is not None:
            P_diffs[n] = _as_path_matrix(to_P.compose(cover), summands, P_terms[n + 1])
        n -= 1
    pc = ProjComplex.build(q, p, P_terms, P_diffs)
    minimal, incl = strip_with_inclusion(pc)
    if not with_map:
        return minimal
    big = pc.to_general()
    aug = ChainMap(big, m, {k: RepMorphism(big.term(k), m.term(k), pis[k].comps) for k in pis})
    comps = {k: aug.comp(k).compose(incl.comp(k)) for k in incl.comps}
    return minimal, ChainMap(incl.source, m, comps)


# 2-periodic complexes --------------------------------------------------------------------
@dataclass
class TwoPeriodicComplex:
    c0: Rep
    c1: Rep
    d0: RepMorphism  # C0 -> C1
    d1: RepMorphism  # C1 -> C0

    def check(self) -> bool:
        return self.d1.compose(self.d0).is_zero() and self.d0.compose(self.d1).is_zero()

    def homology(self, i: int) -> Rep:
        if i % 2 == 0:
            d_out, d_in = self.d0, self.d1
        else:
            d_out, d_in = self.d1, self.d0
        _, z, _, _ = kernel_cokernel(d_out)
        b = _factor_through(d_in, z)
        return kernel_cokernel(b)[2]

    def shift(self, k: int) -> "TwoPeriodicComplex":
        if k % 2 == 0:
            return self
        return TwoPeriodicComplex(self.c1, self.c0, self.d1.scale(-1), self.d0.scale(-1))


def to_two_periodic(pc) -> TwoPeriodicComplex:
    """Fold a bounded complex: C0 = sum of even terms, C1 = sum of odd terms."""
    g = pc.to_general() if isinstance(pc, ProjComplex) else pc
    q, p = g.quiver, g.p
    lo, hi = g.degrees()
    zero = Rep.from_lists(q, p, (0,) * q.n, {})
    even = [n for n in range(lo, hi + 1) if n % 2 == 0] or [None]
    odd = [n for n in range(lo, hi + 1) if n % 2] or [None]
    ev = [g.term(n) if n is not None else zero for n in even]
    od = [g.term(n) if n is not None else zero for n in odd]

    def fold(srcs, tgts, src_reps, tgt_reps):
        grid = [[(g.diff(s) if s is not None and t is not None and t == s + 1 else None) for s in srcs]
                for t in tgts]
        return _block(grid, tgt_reps, src_reps, p)

    c0, c1 = direct_sum(*ev), direct_sum(*od)
    d0 = fold(even, odd, ev, od)
    d1 = fold(odd, even, od, ev)
    return TwoPeriodicComplex(c0, c1, RepMorphism(c0, c1, d0.comps), RepMorphism(c1, c0, d1.comps))


# random inputs for property tests --------------------------------------------------------------
def random_proj_complex(q: Quiver, p: int, rng: random.Random, pieces: int = 4, mix: int = 6) -> ProjComplex:
    """Direct sum of elementary pieces, scrambled by elementary basis changes."""
    out = ProjComplex(q, p, (), ())
    for _ in range(pieces):
        n = rng.randint(-2, 1)
        kind = rng.random()
        a = rng.randrange(q.n)
        if kind < 0.35:
            piece = ProjComplex.build(q, p, {n: (a,), n + 1: (a,)}, {n: ((elem_identity(a),),)})
        elif kind < 0.8:
            # nonzero radical map P_b -> P_a given by a path a -> b of positive length
            longer = [pth for pth in paths_from(q, a) if pth[1]]
            if not longer:
                piece = ProjComplex.build(q, p, {n: (a,)}, {})
            else:
                pth = rng.choice(longer)
                b = _end(q, *pth)
                piece = ProjComplex.build(q, p, {n: (b,), n + 1: (a,)}, {n: ((((pth, rng.randrange(1, p)),),),)})
        else:
            piece = ProjComplex.build(q, p, {n: (a,)}, {})
        out = direct_sum_complexes(out, piece)
    return scramble(out, rng, mix)


def _elementary(q, p, summands, r, c, e):
    """Identity plus e in position (r, c); inverse is identity minus e."""
    size = len(summands)
    rows = [[elem_identity(summands[i]) if i == j else () for j in range(size)] for i in range(size)]
    rows[r][c] = elem_add(rows[r][c], e, p)
    return tuple(tuple(x) for x in rows)


def scramble(pc: ProjComplex, rng: random.Random, steps: int) -> ProjComplex:
    q, p = pc.quiver, pc.p
    terms = {n: s for n, s in pc.terms}
    diffs = {n: pc.diff(n) for n in terms}
    for _ in range(steps):
        n = rng.choice(sorted(terms))
        s = terms[n]
        if len(s) < 2:
            continue
        r, c = rng.sample(range(len(s)), 2)
        # a map from summand c into summand r: paths s[r] -> s[c]
        choices = [pth for pth in paths_from(q, s[r]) if _end(q, *pth) == s[c]]
        if not choices:
            continue
        e = ((rng.choice(choices), rng.randrange(1, p)),)
        g = _elementary(q, p, s, r, c, e)
        ginv = _elementary(q, p, s, r, c, elem(dict(e), p) and tuple((k, -v % p) for k, v in e))
        # d_n -> d_n g^-1, d_(n-1) -> g d_(n-1)
        if n in diffs and terms.get(n + 1):
            diffs[n] = mat_compose(q, p, diffs[n], ginv)
        if n - 1 in diffs and terms.get(n - 1):
            diffs[n - 1] = mat_compose(q, p, g, diffs[n - 1])
    return ProjComplex.build(q, p, terms, diffs)


def random_complex(q: Quiver, p: int, rng: random.Random, max_total: int = 8, tries: int = 20) -> GeneralComplex:
    """Random bounded complex of representations (relation-free quiver), d d = 0.

    Draws are repeated (up to ``tries``) until some differential is nonzero, so
    the sample is not dominated by split complexes.
    """
    best = None
    for _ in range(tries):
        c = _random_complex_once(q, p, rng, max_total)
        best = c
        if any(not d.is_zero() for d in c.diffs.values()):
            return c
    return best


def _random_complex_once(q, p, rng, max_total):
    from rootlie.rep import hom_space, combine
    length = rng.randint(2, 3)
    budget = max_total
    terms = {}
    for n in range(length):
        dim = [0] * q.n
        for _ in range(rng.randint(1, max(1, min(budget, 4)))):
            if budget <= 0:
                break
            dim[rng.randrange(q.n)] += 1
            budget -= 1
        mats = {}
        for a, (_, s, t) in zip(q.arrows, q.arrow_indices()):
            mats[a.name] = [[rng.randrange(p) for _ in range(dim[s])] for _ in range(dim[t])]
        terms[n] = Rep.from_lists(q, p, tuple(dim), mats)
    diffs = {}
    prev = None
    for n in range(length - 1):
        x, y = terms[n], terms[n + 1]
        if prev is None:
            src, proj = x, None
        else:
            # vanish on the image of the previous differential
            _, _, src, proj = kernel_cokernel(prev)
        basis = hom_space(src, y)
        g = RepMorphism.zero(src, y)
        for _ in range(4):
            if not basis:
                break
            g = combine(basis, [rng.randrange(p) for _ in basis], src, y)
            if not g.is_zero():
                break
        diffs[n] = g if proj is None else g.compose(proj)
        prev = diffs[n]
    return GeneralComplex(q, p, terms, diffs)
