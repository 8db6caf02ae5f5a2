"""Isomorphism-class labels and their realization as matrices over F_p.

Wire syntax: ``S(1,0)`` is the unique indecomposable with that dimension vector
(any letter prefix is accepted, so ``P(1,1)`` reads the same), ``R(z=0,l=1,i=0)``
a regular Kronecker module on the tube at z, ``2*S(1,0)+S(0,1)`` a direct sum,
``0`` the zero module and a trailing ``[1]`` a shift.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from rootlie.fmatrix import FMatrix
from rootlie.quiver import Quiver, symmetric_form
from rootlie.rep import Rep, decompose, direct_sum, end_dim, all_reps, DEFAULT_BUDGET


class LabelError(ValueError):
    pass


class NotFieldStable(LabelError):
    def __init__(self, label, p):
        super().__init__(f"class not field-stable: {label} has no realization over F{p}")


@dataclass(frozen=True, order=True)
class IndecLabel:
    dim: tuple
    z: str | None = None  # tube point for regular Kronecker modules
    length: int = 0
    socle: int = 0

    @property
    def regular(self) -> bool:
        return self.z is not None

    def __str__(self):
        if self.z is None:
            return "S(" + ",".join(map(str, self.dim)) + ")"
        return f"R(z={self.z},l={self.length},i={self.socle})"


@dataclass(frozen=True, order=True)
class IsoLabel:
    """A module up to isomorphism: sorted (IndecLabel, multiplicity) pairs."""

    parts: tuple = ()

    @classmethod
    def of(cls, *labels) -> "IsoLabel":
        counts = {}
        for lab in labels:
            if isinstance(lab, IsoLabel):
                for l, m in lab.parts:
                    counts[l] = counts.get(l, 0) + m
            else:
                counts[lab] = counts.get(lab, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @property
    def dim(self) -> tuple:
        if not self.parts:
            return ()
        n = len(self.parts[0][0].dim)
        return tuple(sum(l.dim[i] * m for l, m in self.parts) for i in range(n))

    def dim_for(self, n: int) -> tuple:
        return self.dim if self.parts else (0,) * n

    @property
    def is_indecomposable(self) -> bool:
        return len(self.parts) == 1 and self.parts[0][1] == 1

    @property
    def indec(self) -> IndecLabel:
        if not self.is_indecomposable:
            raise LabelError(f"{self} is not indecomposable")
        return self.parts[0][0]

    def __str__(self):
        if not self.parts:
            return "0"
        return "+".join((f"{m}*{l}" if m > 1 else str(l)) for l, m in self.parts)


@dataclass(frozen=True, order=True)
class Shifted:
    """An indecomposable object of the root category: a module or its shift."""

    label: IndecLabel
    shift: int = 0

    def __str__(self):
        return str(self.label) + ("[1]" if self.shift else "")

    @property
    def degree(self) -> tuple:
        s = -1 if self.shift else 1
        return tuple(s * x for x in self.label.dim)

    def shifted(self) -> "Shifted":
        return Shifted(self.label, 1 - self.shift)


_ROOT_RE = re.compile(r"^[A-Za-z]\w*\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)$")
_REG_RE = re.compile(r"^R\(\s*z\s*=\s*([^,]+?)\s*,\s*l\s*=\s*(\d+)\s*(?:,\s*i\s*=\s*(\d+)\s*)?\)$")


def parse_indec(text: str) -> IndecLabel:
    t = text.strip()
    m = _REG_RE.match(t)
    if m:
        l = int(m.group(2))
        return IndecLabel((l, l), m.group(1), l, int(m.group(3) or 0))
    m = _ROOT_RE.match(t)
    if m:
        return IndecLabel(tuple(int(x) for x in m.group(1).split(",")))
    raise LabelError(f"cannot parse label {text!r}")


def parse_iso(text: str) -> IsoLabel:
    t = text.strip()
    if t == "0":
        return IsoLabel()
    labels = []
    for part in _split_sum(t):
        mult = 1
        m = re.match(r"^(\d+)\s*\*\s*(.+)$", part)
        if m:
            mult, part = int(m.group(1)), m.group(2)
        labels += [parse_indec(part)] * mult
    return IsoLabel.of(*labels)


def _split_sum(t: str):
    depth, cur, out = 0, "", []
    for ch in t:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    out.append(cur.strip())
    return out


def parse_object(text: str) -> Shifted:
    t = text.strip()
    shift = 0
    if t.endswith("[1]"):
        shift, t = 1, t[:-3]
    return Shifted(parse_indec(t), shift)


# realization -----------------------------------------------------------------
def is_kronecker(q: Quiver) -> bool:
    return q.n == 2 and len(q.arrows) == 2 and len({(a.source, a.target) for a in q.arrows}) == 1


def _jordan(l: int, lam: int, p: int) -> FMatrix:
    rows = [[(lam if i == j else (1 if j == i + 1 else 0)) % p for j in range(l)] for i in range(l)]
    return FMatrix.from_rows(rows, p, cols=l)


def _companion_block(poly, l: int, p: int) -> FMatrix:
    """Matrix with characteristic and minimal polynomial poly^l (poly monic irreducible)."""
    f = [1]
    for _ in range(l):
        f = poly_mul(f, poly, p)
    n = len(f) - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = (-f[i]) % p
    return FMatrix.from_rows(rows, p, cols=n)


def _regular_rep(q: Quiver, lab: IndecLabel, p: int) -> Rep:
    l = lab.length
    src = q.arrows[0].source
    names = [a.name for a in q.arrows]
    if src != q.vertices[0]:
        raise LabelError("regular labels expect arrows out of the first vertex")
    z = lab.z
    if z == "inf":
        a, b = _jordan(l, 0, p), FMatrix.identity(l, p)
    elif re.fullmatch(r"-?\d+", z):
        lam = int(z)
        if not 0 <= lam < p:
            raise NotFieldStable(lab, p)
        a, b = FMatrix.identity(l, p), _jordan(l, lam, p)
    else:
        poly = parse_poly(z)
        d = len(poly) - 1
        if l % d or not is_irreducible(poly, p) or any(c >= p for c in poly):
            raise NotFieldStable(lab, p)
        b = _companion_block(poly, l // d, p)
        a = FMatrix.identity(l, p)
    return Rep(q, p, (l, l), (a, b) if names[0] < names[1] else (b, a))


@lru_cache(maxsize=None)
def _brick_of_dim(q: Quiver, dim: tuple, p: int) -> Rep:
    for x in all_reps(q, dim, 2, DEFAULT_BUDGET):
        # 0/1 matrices read over F_p; a brick over F_p is indecomposable
        y = Rep(q, p, dim, tuple(FMatrix(m.rows, m.cols, p, m.entries) for m in x.mats))
        if end_dim(y) == 1:
            return y
    raise LabelError(f"no brick with dimension vector {dim} among 0/1 matrices")


def realize_indec(q: Quiver, lab: IndecLabel, p: int) -> Rep:
    if lab.regular:
        if not is_kronecker(q):
            raise LabelError("regular labels are only defined for the Kronecker quiver")
        return _regular_rep(q, lab, p)
    if len(lab.dim) != q.n:
        raise LabelError(f"label {lab} has the wrong number of coordinates")
    if symmetric_form(q, lab.dim, lab.dim) != 2:
        raise LabelError(f"{lab}: dimension vector is not a real root, the class is not unique")
    return _brick_of_dim(q, lab.dim, p)


def realize(q: Quiver, label, p: int) -> Rep:
    if isinstance(label, IndecLabel):
        return realize_indec(q, label, p)
    if not label.parts:
        return Rep.zero(q, p) if q.n == 0 else Rep.from_lists(q, p, (0,) * q.n, {})
    pieces = []
    for lab, m in label.parts:
        pieces += [realize_indec(q, lab, p)] * m
    return direct_sum(*pieces)


# identification ------------------------------------------------------------------
def label_indec(x: Rep) -> IndecLabel:
    """Label of an indecomposable representation."""
    q = x.quiver
    if symmetric_form(q, x.dim, x.dim) == 2:
        return IndecLabel(x.dim)
    if is_kronecker(q) and x.dim[0] == x.dim[1]:
        return _tube_label(x)
    raise LabelError(f"no canonical label for an indecomposable of dimension {x.dim}")


def label_of(x: Rep) -> IsoLabel:
    if x.is_zero():
        return IsoLabel()
    parts = []
    for r, m in decompose(x):
        parts += [label_indec(r)] * m
    return IsoLabel.of(*parts)


def _tube_label(x: Rep) -> IndecLabel:
    p = x.p
    q = x.quiver
    names = sorted(a.name for a in q.arrows)
    a, b = x.mat(names[0]), x.mat(names[1])
    l = x.dim[0]
    if not a.is_invertible():
        return IndecLabel((l, l), "inf", l, 0)
    m = a.inverse() @ b
    for lam in range(p):
        n = m - FMatrix.identity(l, p).scale(lam)
        if (_mpow(n, l)).is_zero():
            return IndecLabel((l, l), str(lam), l, 0)
    mp = minimal_polynomial(m)
    for d in range(2, l + 1):
        if l % d:
            continue
        for f in monic_polys(d, p):
            if is_irreducible(f, p) and poly_pow(f, l // d, p) == mp:
                return IndecLabel((l, l), format_poly(f), l, 0)
    raise LabelError("representation is not a single regular indecomposable")


def _mpow(m: FMatrix, k: int) -> FMatrix:
    out = FMatrix.identity(m.rows, m.p)
    for _ in range(k):
        out = out @ m
    return out


# small polynomial helpers over F_p (coefficient lists, constant term first) ---------
def poly_mul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return out


def poly_pow(f, k, p):
    out = [1]
    for _ in range(k):
        out = poly_mul(out, f, p)
    return out


def monic_polys(d, p):
    for coeffs in itertools.product(range(p), repeat=d):
        yield list(coeffs) + [1]


def is_irreducible(f, p) -> bool:
    d = len(f) - 1
    if d <= 0:
        return False
    for e in range(1, d // 2 + 1):
        for g in monic_polys(e, p):
            if not any(_poly_rem(f, g, p)):
                return False
    return True


def _poly_rem(f, g, p):
    f = list(f)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        s = len(f) - len(g)
        for i, b in enumerate(g):
            f[s + i] = (f[s + i] - c * b) % p
        f.pop()
    return f


def minimal_polynomial(m: FMatrix):
    from rootlie.fmatrix import null_space
    p = m.p
    n = m.rows
    powers = [FMatrix.identity(n, p)]
    for k in range(1, n + 1):
        powers.append(powers[-1] @ m)
        cols = [list(pw.entries) for pw in powers]
        rows = [[c[i] for c in cols] for i in range(n * n)]
        ker = null_space(rows, k + 1, p)
        if ker:
            v = ker[0]
            inv = pow(v[-1], -1, p) if v[-1] else None
            if inv is None:
                continue
            return [x * inv % p for x in v]
    raise AssertionError("unreachable")


def format_poly(f) -> str:
    return "p" + "_".join(map(str, f))


def parse_poly(z: str):
    if not z.startswith("p"):
        raise LabelError(f"bad tube point {z!r}")
    return [int(c) for c in z[1:].split("_")]


def tube_points(p: int, degree: int = 1):
    """Closed points of the projective line of the given degree, as label strings."""
    if degree == 1:
        return [str(i) for i in range(p)] + ["inf"]
    return [format_poly(f) for f in monic_polys(degree, p) if is_irreducible(f, p)]


def indecomposable_labels(q: Quiver, height_bound: int | None = None):
    """Labels of the real-root indecomposables (all of them in finite type)."""
    from rootlie.quiver import enumerate_roots
    rs = enumerate_roots(q, height_bound)
    return [IndecLabel(d) for d in rs.positive_real]
