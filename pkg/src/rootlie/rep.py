"""Representations of quivers over prime fields and their morphisms."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from rootlie import _kernels
from rootlie.field import PrimeField
from rootlie.fmatrix import FMatrix, null_space
from rootlie.quiver import Quiver


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"budget exceeded: {what} needs {size} steps, budget {budget}")
        self.size = size
        self.budget = budget


DEFAULT_BUDGET = 2_000_000


def _matvec(m: FMatrix, v: Sequence[int]) -> list:
    c = m.cols
    e = m.entries
    p = m.p
    return [sum(e[i * c + j] * v[j] for j in range(c) if v[j]) % p for i in range(m.rows)]


def _path_matrix(q: Quiver, mats: dict, path, dim, p) -> FMatrix:
    first = q.arrow(path[0])
    out = FMatrix.identity(dim[q.index(first.source)], p)
    for name in path:
        out = mats[name] @ out
    return out


@dataclass(frozen=True)
class Rep:
    quiver: Quiver
    p: int
    dim: tuple
    mats: tuple  # FMatrix per arrow, in quiver.arrows order, shape d_target x d_source

    def __post_init__(self):
        q = self.quiver
        object.__setattr__(self, "dim", tuple(self.dim))
        if len(self.dim) != q.n or any(x < 0 for x in self.dim):
            raise ValueError("bad dimension vector")
        if len(self.mats) != len(q.arrows):
            raise ValueError("one matrix per arrow required")
        for (name, s, t), m in zip(q.arrow_indices(), self.mats):
            if m.shape != (self.dim[t], self.dim[s]) or m.p != self.p:
                raise ValueError(f"matrix for arrow {name} has shape {m.shape}, "
                                 f"expected {(self.dim[t], self.dim[s])} over F{self.p}")
        named = dict(zip((a.name for a in q.arrows), self.mats))
        for rel in q.relations:
            total = None
            for coef, path in rel.terms:
                term = _path_matrix(q, named, path, self.dim, self.p).scale(coef)
                total = term if total is None else total + term
            if total is not None and not total.is_zero():
                raise ValueError("relation equations do not hold")

    # constructors ----------------------------------------------------------
    @classmethod
    def from_lists(cls, q: Quiver, p: int, dim: Sequence[int], mats: dict) -> "Rep":
        out = []
        for name, s, t in q.arrow_indices():
            rows = mats.get(name)
            if rows is None:
                out.append(FMatrix.zeros(dim[t], dim[s], p))
            else:
                out.append(FMatrix.from_rows(rows, p, cols=dim[s]) if dim[t] else FMatrix.zeros(0, dim[s], p))
        return cls(q, p, tuple(dim), tuple(out))

    @classmethod
    def zero(cls, q: Quiver, p: int) -> "Rep":
        return cls(q, p, (0,) * q.n, tuple(FMatrix.zeros(0, 0, p) for _ in q.arrows))

    @classmethod
    def simple(cls, q: Quiver, p: int, v) -> "Rep":
        d = q.simple(v)
        return cls.from_lists(q, p, d, {})

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def mat(self, name: str) -> FMatrix:
        for a, m in zip(self.quiver.arrows, self.mats):
            if a.name == name:
                return m
        raise KeyError(name)

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def key(self) -> tuple:
        """Hashable description of the matrices (not an isomorphism invariant)."""
        return (self.dim, tuple(m.entries for m in self.mats))

    def __hash__(self):
        return hash((self.p, self.key()))

    def __eq__(self, other):
        return isinstance(other, Rep) and self.quiver == other.quiver and self.p == other.p \
            and self.key() == other.key()

    def __repr__(self):
        body = ", ".join(f"{a.name}={m.row_lists()}" for a, m in zip(self.quiver.arrows, self.mats))
        return f"Rep(dim={self.dim}, F{self.p}, {body})"


def direct_sum(*reps: Rep) -> Rep:
    reps = [r for r in reps]
    if not reps:
        raise ValueError("need at least one summand")
    q, p = reps[0].quiver, reps[0].p
    dim = tuple(sum(r.dim[i] for r in reps) for i in range(q.n))
    mats = []
    for k, (_, s, t) in enumerate(q.arrow_indices()):
        rows = [[0] * dim[s] for _ in range(dim[t])]
        ro = co = 0
        for r in reps:
            m = r.mats[k]
            for i in range(m.rows):
                for j in range(m.cols):
                    rows[ro + i][co + j] = m[i, j]
            ro += r.dim[t]
            co += r.dim[s]
        mats.append(FMatrix.from_rows(rows, p, cols=dim[s]) if dim[t] else FMatrix.zeros(0, dim[s], p))
    return Rep(q, p, dim, tuple(mats))


def base_change(x: Rep, gs: Sequence[FMatrix]) -> Rep:
    """Transport x along invertible g_i: new x_h = g_t x_h g_s^{-1}."""
    q = x.quiver
    inv = [g.inverse() for g in gs]
    mats = tuple(gs[t] @ m @ inv[s] for (_, s, t), m in zip(q.arrow_indices(), x.mats))
    return Rep(q, x.p, x.dim, mats)


@dataclass(frozen=True)
class RepMorphism:
    source: Rep
    target: Rep
    comps: tuple  # FMatrix per vertex, shape target.dim[i] x source.dim[i]

    def check(self) -> bool:
        for (_, s, t), a, b in zip(self.source.quiver.arrow_indices(), self.source.mats, self.target.mats):
            if not (self.comps[t] @ a == b @ self.comps[s]):
                return False
        return True

    @classmethod
    def identity(cls, x: Rep) -> "RepMorphism":
        return cls(x, x, tuple(FMatrix.identity(d, x.p) for d in x.dim))

    @classmethod
    def zero(cls, x: Rep, y: Rep) -> "RepMorphism":
        return cls(x, y, tuple(FMatrix.zeros(b, a, x.p) for a, b in zip(x.dim, y.dim)))

    def compose(self, other: "RepMorphism") -> "RepMorphism":
        """self after other."""
        return RepMorphism(other.source, self.target, tuple(a @ b for a, b in zip(self.comps, other.comps)))

    def __add__(self, other):
        return RepMorphism(self.source, self.target, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "RepMorphism":
        return RepMorphism(self.source, self.target, tuple(a.scale(c) for a in self.comps))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def is_invertible(self) -> bool:
        return all(c.rows == c.cols and c.is_invertible() for c in self.comps)

    def is_nilpotent(self) -> bool:
        for c in self.comps:
            m = c
            for _ in range(c.rows):
                m = m @ c
            if not m.is_zero():
                return False
        return True

    def ranks(self) -> tuple:
        return tuple(c.rank() for c in self.comps)

    def flat(self) -> tuple:
        out = []
        for c in self.comps:
            out.extend(c.entries)
        return tuple(out)


# Hom spaces --------------------------------------------------------------------
def _hom_layout(x: Rep, y: Rep):
    offs = []
    n = 0
    for a, b in zip(x.dim, y.dim):
        offs.append(n)
        n += a * b
    return offs, n


def hom_equations(x: Rep, y: Rep):
    """Linear equations (rows) on the flattened vertex components of phi: x -> y."""
    p = x.p
    offs, n = _hom_layout(x, y)
    rows = []
    for (_, s, t), mx, my in zip(x.quiver.arrow_indices(), x.mats, y.mats):
        ds, dt, es, et = x.dim[s], x.dim[t], y.dim[s], y.dim[t]
        ex, ey = mx.entries, my.entries
        # (phi_t x_h - y_h phi_s)[r, c] for r < et, c < ds
        for r in range(et):
            for c in range(ds):
                row = [0] * n
                for k in range(dt):
                    v = ex[k * ds + c]
                    if v:
                        idx = offs[t] + r * dt + k
                        row[idx] = (row[idx] + v) % p
                for k in range(es):
                    v = ey[r * es + k]
                    if v:
                        idx = offs[s] + k * ds + c
                        row[idx] = (row[idx] - v) % p
                if any(row):
                    rows.append(row)
    return rows, n


def _unflatten(x: Rep, y: Rep, vec) -> tuple:
    offs, _ = _hom_layout(x, y)
    comps = []
    for i, (a, b) in enumerate(zip(x.dim, y.dim)):
        o = offs[i]
        comps.append(FMatrix(b, a, x.p, tuple(vec[o:o + a * b])))
    return tuple(comps)


def hom_space(x: Rep, y: Rep) -> list:
    """Basis of Hom(x, y) as RepMorphisms."""
    if x.quiver != y.quiver or x.p != y.p:
        raise ValueError("representations of different quivers or fields")
    rows, n = hom_equations(x, y)
    if n == 0:
        return []
    basis = null_space(rows, n, x.p)
    return [RepMorphism(x, y, _unflatten(x, y, v)) for v in basis]


def hom_dim(x: Rep, y: Rep) -> int:
    rows, n = hom_equations(x, y)
    if n == 0:
        return 0
    if not rows:
        return n
    return n - _kernels.rank(rows, n, x.p)


def end_dim(x: Rep) -> int:
    return hom_dim(x, x)


def combine(basis: Sequence[RepMorphism], coeffs: Sequence[int], x: Rep, y: Rep) -> RepMorphism:
    p = x.p
    comps = []
    for i, (a, b) in enumerate(zip(x.dim, y.dim)):
        acc = [0] * (a * b)
        for c, f in zip(coeffs, basis):
            if c:
                e = f.comps[i].entries
                for k in range(a * b):
                    if e[k]:
                        acc[k] += c * e[k]
        comps.append(FMatrix(b, a, p, tuple(v % p for v in acc)))
    return RepMorphism(x, y, tuple(comps))


def all_combinations(basis, x: Rep, y: Rep, budget: int = DEFAULT_BUDGET):
    size = x.p ** len(basis)
    if size > budget:
        raise BudgetExceeded("enumerating a morphism space", size, budget)
    # basis vectors first, so cheap witnesses are found early
    for coeffs in itertools.product(range(x.p), repeat=len(basis)):
        yield combine(basis, coeffs, x, y)


# kernels and cokernels -------------------------------------------------------
def _col_space_rref(m: FMatrix):
    """Row-reduced basis (as rows) of the column space of m, with pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return [], []
    return _kernels.rref(m.transpose().row_lists(), m.rows, m.p)


def _reduce(v, basis_rows, pivots, p):
    v = list(v)
    for r, c in zip(basis_rows, pivots):
        f = v[c]
        if f:
            v = [(a - f * b) % p for a, b in zip(v, r)]
    return v


def kernel_cokernel(f: RepMorphism):
    """Return (ker, ker_incl, coker, coker_proj) for f: X -> Y."""
    x, y = f.source, f.target
    q, p = x.quiver, x.p
    ker_bases = []  # column vectors spanning ker f_i
    for i, c in enumerate(f.comps):
        if x.dim[i] == 0:
            ker_bases.append([])
            continue
        rows = c.row_lists() if c.rows else []
        ker_bases.append(null_space(rows, x.dim[i], p) if rows else
                         [[1 if a == b else 0 for a in range(x.dim[i])] for b in range(x.dim[i])])
    kdim = tuple(len(b) for b in ker_bases)
    # restricted maps: x_h k_j expressed in the kernel basis at the target
    ker_mats = []
    for (_, s, t), m in zip(q.arrow_indices(), x.mats):
        cols = []
        tb = ker_bases[t]
        for v in ker_bases[s]:
            w = _matvec(m, v)
            cols.append(_coords(w, tb, p))
        ker_mats.append(FMatrix.from_columns(cols, p, kdim[t]) if kdim[s] else FMatrix.zeros(kdim[t], 0, p))
    ker = Rep(q, p, kdim, tuple(ker_mats))
    incl = RepMorphism(ker, x, tuple(
        FMatrix.from_columns(ker_bases[i], p, x.dim[i]) if kdim[i] else FMatrix.zeros(x.dim[i], 0, p)
        for i in range(q.n)))
    # cokernel: quotient of y_i by the image, coordinates on non-pivot positions
    img = [_col_space_rref(c) for c in f.comps]
    cdim = []
    nonpiv = []
    for i in range(q.n):
        rows, piv = img[i]
        np_ = [j for j in range(y.dim[i]) if j not in set(piv)]
        nonpiv.append(np_)
        cdim.append(len(np_))
    cdim = tuple(cdim)
    proj = []
    for i in range(q.n):
        rows, piv = img[i]
        cols = []
        for j in range(y.dim[i]):
            e = [1 if k == j else 0 for k in range(y.dim[i])]
            r = _reduce(e, rows, piv, p)
            cols.append([r[k] for k in nonpiv[i]])
        proj.append(FMatrix.from_columns(cols, p, cdim[i]) if y.dim[i] else FMatrix.zeros(cdim[i], 0, p))
    coker_mats = []
    for (_, s, t), m in zip(q.arrow_indices(), y.mats):
        rows_t, piv_t = img[t]
        cols = []
        for j in nonpiv[s]:
            e = m.column(j)
            r = _reduce(e, rows_t, piv_t, p)
            cols.append([r[k] for k in nonpiv[t]])
        coker_mats.append(FMatrix.from_columns(cols, p, cdim[t]) if cdim[s] else FMatrix.zeros(cdim[t], 0, p))
    coker = Rep(q, p, cdim, tuple(coker_mats))
    return ker, incl, coker, RepMorphism(y, coker, tuple(proj))


def _coords(w, basis_cols, p):
    """Coordinates of w in the span of basis_cols (assumed to contain w)."""
    k = len(basis_cols)
    if k == 0:
        return []
    n = len(w)
    rows = [[basis_cols[j][i] for j in range(k)] + [w[i]] for i in range(n)]
    red, piv = _kernels.rref(rows, k + 1, p)
    if piv and piv[-1] == k:
        raise ValueError("vector is not in the span")
    out = [0] * k
    for r, c in enumerate(piv):
        out[c] = red[r][k]
    return out


def image(f: RepMorphism) -> Rep:
    """Image of f, computed as the source modulo the kernel."""
    _, incl, _, _ = kernel_cokernel(f)
    return kernel_cokernel(incl)[2]


# isomorphism, decomposition ----------------------------------------------------
_RNG_SEED = 20240531


def _quick_invariants(x: Rep):
    return (x.dim, tuple(m.rank() for m in x.mats))


def find_isomorphism(x: Rep, y: Rep, budget: int = DEFAULT_BUDGET, trials: int = 24):
    if x.quiver != y.quiver or x.p != y.p or x.dim != y.dim:
        return None
    if x.is_zero():
        return RepMorphism.identity(x)
    if _quick_invariants(x) != _quick_invariants(y):
        return None
    basis = hom_space(x, y)
    if not basis:
        return None
    if len(basis) != end_dim(y) or hom_dim(y, x) != len(basis):
        # isomorphic modules have Hom(x,y) ~ End(y) ~ Hom(y,x)
        if len(basis) != end_dim(x):
            return None
    rng = random.Random(_RNG_SEED ^ hash(x.key()) ^ hash(y.key()))
    for f in basis:
        if f.is_invertible():
            return f
    for _ in range(trials):
        coeffs = [rng.randrange(x.p) for _ in basis]
        f = combine(basis, coeffs, x, y)
        if f.is_invertible():
            return f
    for f in all_combinations(basis, x, y, budget):
        if f.is_invertible():
            return f
    return None


def is_isomorphic(x: Rep, y: Rep, budget: int = DEFAULT_BUDGET) -> bool:
    return find_isomorphism(x, y, budget) is not None


def _power(f: RepMorphism, k: int) -> RepMorphism:
    out = RepMorphism.identity(f.source)
    for _ in range(k):
        out = f.compose(out)
    return out


def _splitting_endomorphism(x: Rep, budget: int):
    """An endomorphism that is neither invertible nor nilpotent, or None (x indecomposable)."""
    basis = hom_space(x, x)
    if len(basis) <= 1:
        return None
    for f in basis:
        if not f.is_invertible() and not f.is_nilpotent():
            return f
    rng = random.Random(_RNG_SEED ^ hash(x.key()))
    for _ in range(16):
        f = combine(basis, [rng.randrange(x.p) for _ in basis], x, x)
        if not f.is_invertible() and not f.is_nilpotent():
            return f
    for f in all_combinations(basis, x, x, budget):
        if not f.is_invertible() and not f.is_nilpotent():
            return f
    return None


def is_indecomposable(x: Rep, budget: int = DEFAULT_BUDGET) -> bool:
    """End(x) is local: every non-invertible endomorphism is nilpotent."""
    if x.is_zero():
        return False
    return _splitting_endomorphism(x, budget) is None


def _restrict(x: Rep, f: RepMorphism):
    """Fitting splitting x = Im f^N + Ker f^N as two representations."""
    n = x.total_dim
    g = _power(f, n)
    _, incl, _, _ = kernel_cokernel(g)
    ker = incl.source
    # image of g: representation on the column space of g
    q, p = x.quiver, x.p
    bases = []
    for c in g.comps:
        rows, piv = _col_space_rref(c)
        bases.append(rows)
    dim = tuple(len(b) for b in bases)
    mats = []
    for (_, s, t), m in zip(q.arrow_indices(), x.mats):
        cols = [_coords(_matvec(m, v), bases[t], p) for v in bases[s]]
        mats.append(FMatrix.from_columns(cols, p, dim[t]) if dim[s] else FMatrix.zeros(dim[t], 0, p))
    im = Rep(q, p, dim, tuple(mats))
    return im, ker


def decompose(x: Rep, budget: int = DEFAULT_BUDGET) -> list:
    """Krull-Schmidt decomposition as a list of (indecomposable Rep, multiplicity)."""
    pieces = []
    stack = [x]
    while stack:
        r = stack.pop()
        if r.is_zero():
            continue
        f = _splitting_endomorphism(r, budget)
        if f is None:
            pieces.append(r)
        else:
            stack.extend(_restrict(r, f))
    classes = []
    for r in pieces:
        for c in classes:
            if is_isomorphic(c[0], r, budget):
                c[1] += 1
                break
        else:
            classes.append([r, 1])
    classes.sort(key=lambda c: (c[0].dim, c[0].key()))
    return [(r, m) for r, m in classes]


def aut_order(x: Rep, budget: int = DEFAULT_BUDGET) -> int:
    basis = hom_space(x, x)
    if x.is_zero():
        return 1
    return sum(1 for f in all_combinations(basis, x, x, budget) if f.is_invertible())


# enumeration -------------------------------------------------------------------
def all_reps(q: Quiver, d: Sequence[int], p: int, budget: int = DEFAULT_BUDGET) -> Iterable[Rep]:
    shapes = [(d[t], d[s]) for _, s, t in q.arrow_indices()]
    n = sum(a * b for a, b in shapes)
    size = p ** n
    if size > budget:
        raise BudgetExceeded("enumerating matrix tuples", size, budget)
    for vals in itertools.product(range(p), repeat=n):
        mats = []
        o = 0
        for a, b in shapes:
            mats.append(FMatrix(a, b, p, tuple(vals[o:o + a * b])))
            o += a * b
        yield Rep(q, p, tuple(d), tuple(mats))


def enumerate_indecomposables(q: Quiver, d: Sequence[int], field, budget: int = DEFAULT_BUDGET) -> list:
    """One representative per isomorphism class of indecomposables of dimension d.

    Representatives are the lexicographically first matrix tuples of their class.
    """
    p = field.p if isinstance(field, PrimeField) else int(field)
    d = tuple(d)
    if not any(d):
        return []
    reps = []
    seen_invariants = {}
    for x in all_reps(q, d, p, budget):
        if not is_indecomposable(x, budget):
            continue
        inv = (_quick_invariants(x), end_dim(x))
        cands = seen_invariants.setdefault(inv, [])
        if any(is_isomorphic(c, x, budget) for c in cands):
            continue
        cands.append(x)
        reps.append(x)
    return reps


# subspaces and subrepresentations -------------------------------------------------
def subspaces(n: int, k: int, p: int):
    """All k-dimensional subspaces of F_p^n as (rref rows, pivot columns)."""
    if k == 0:
        yield [], ()
        return
    for piv in itertools.combinations(range(n), k):
        free = []
        for r, c in enumerate(piv):
            for j in range(c + 1, n):
                if j not in piv:
                    free.append((r, j))
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, c in enumerate(piv):
                rows[r][c] = 1
            for (r, j), v in zip(free, vals):
                rows[r][j] = v
            yield rows, piv


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _subquotient(x: Rep, spaces):
    """Sub and quotient representations for a tuple of invariant subspaces (rref rows, pivots)."""
    q, p = x.quiver, x.p
    sdim = tuple(len(r) for r, _ in spaces)
    qdim = tuple(x.dim[i] - sdim[i] for i in range(q.n))
    nonpiv = [[j for j in range(x.dim[i]) if j not in set(spaces[i][1])] for i in range(q.n)]
    sub_m, quo_m = [], []
    for (_, s, t), m in zip(q.arrow_indices(), x.mats):
        rows_t, piv_t = spaces[t]
        cols = []
        for r in spaces[s][0]:
            w = _matvec(m, r)
            cols.append([w[c] for c in piv_t])
        sub_m.append(FMatrix.from_columns(cols, p, sdim[t]) if sdim[s] else FMatrix.zeros(sdim[t], 0, p))
        cols = []
        for j in nonpiv[s]:
            w = _reduce(m.column(j), rows_t, piv_t, p)
            cols.append([w[c] for c in nonpiv[t]])
        quo_m.append(FMatrix.from_columns(cols, p, qdim[t]) if qdim[s] else FMatrix.zeros(qdim[t], 0, p))
    return Rep(q, p, sdim, tuple(sub_m)), Rep(q, p, qdim, tuple(quo_m))


def _invariant(x: Rep, spaces, arrows_done) -> bool:
    p = x.p
    for k in arrows_done:
        name, s, t = x.quiver.arrow_indices()[k]
        m = x.mats[k]
        rows_t, piv_t = spaces[t]
        for r in spaces[s][0]:
            w = _matvec(m, r)
            if any(_reduce(w, rows_t, piv_t, p)):
                return False
    return True


def subrepresentations(x: Rep, sub_dim: Sequence[int], budget: int = DEFAULT_BUDGET):
    """Yield (sub, quotient) for every subrepresentation of x with dimension vector sub_dim."""
    q, p = x.quiver, x.p
    sub_dim = tuple(sub_dim)
    if any(a > b or a < 0 for a, b in zip(sub_dim, x.dim)):
        return
    size = 1
    for i in range(q.n):
        size *= gaussian_binomial(x.dim[i], sub_dim[i], p)
    if size > budget:
        raise BudgetExceeded("enumerating subspace tuples", size, budget)
    arrows = q.arrow_indices()
    # check each arrow as soon as both of its endpoints are chosen
    ready = [[k for k, (_, s, t) in enumerate(arrows) if max(s, t) == i] for i in range(q.n)]
    choices = [list(subspaces(x.dim[i], sub_dim[i], p)) for i in range(q.n)]
    spaces = [None] * q.n

    def rec(i):
        if i == q.n:
            yield _subquotient(x, spaces)
            return
        for sp in choices[i]:
            spaces[i] = sp
            if _invariant(x, spaces, ready[i]):
                yield from rec(i + 1)
        spaces[i] = None

    yield from rec(0)
