"""Dense matrices over F_p with rank, kernel and affine solving."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from rootlie import _kernels
from rootlie.field import PrimeField


class Inconsistent(ValueError):
    """Raised by :func:`solve_affine` when the right-hand side is not in the image."""

    def __init__(self):
        super().__init__("inconsistent")


@dataclass(frozen=True)
class FMatrix:
    rows: int
    cols: int
    p: int
    entries: tuple  # row-major, values in [0, p)

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    # construction ------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> "FMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        flat = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(v % p for v in r)
        return cls(len(rows), cols, p, tuple(flat))

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FMatrix":
        return cls(rows, cols, p, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int, p: int) -> "FMatrix":
        return cls(n, n, p, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], p: int, rows: int) -> "FMatrix":
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], p, cols=len(columns))

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def shape(self):
        return (self.rows, self.cols)

    # access ------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_lists(self):
        c = self.cols
        e = self.entries
        return [list(e[i * c:(i + 1) * c]) for i in range(self.rows)]

    def column(self, j: int):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    # algebra -----------------------------------------------------------
    def _check(self, other: "FMatrix"):
        if self.p != other.p:
            raise ValueError("matrices over different fields")

    def __add__(self, other: "FMatrix") -> "FMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.p
        return FMatrix(self.rows, self.cols, p, tuple((a + b) % p for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "FMatrix":
        p = self.p
        return FMatrix(self.rows, self.cols, p, tuple((-a) % p for a in self.entries))

    def __sub__(self, other: "FMatrix") -> "FMatrix":
        return self + (-other)

    def scale(self, c: int) -> "FMatrix":
        p = self.p
        return FMatrix(self.rows, self.cols, p, tuple((c * a) % p for a in self.entries))

    def __matmul__(self, other: "FMatrix") -> "FMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.p
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            ai = a[i * k:(i + 1) * k]
            for j in range(m):
                s = 0
                for t in range(k):
                    if ai[t]:
                        s += ai[t] * b[t * m + j]
                out.append(s % p)
        return FMatrix(n, m, p, tuple(out))

    def transpose(self) -> "FMatrix":
        return FMatrix(self.cols, self.rows, self.p,
                       tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def hstack(self, other: "FMatrix") -> "FMatrix":
        self._check(other)
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return FMatrix.from_rows([a + b for a, b in zip(self.row_lists(), other.row_lists())], self.p,
                                 cols=self.cols + other.cols)

    def vstack(self, other: "FMatrix") -> "FMatrix":
        self._check(other)
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return FMatrix(self.rows + other.rows, self.cols, self.p, self.entries + other.entries)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "FMatrix":
        return FMatrix.from_rows([[self[i, j] for j in cols] for i in rows], self.p, cols=len(cols))

    # linear algebra ----------------------------------------------------
    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return _kernels.rank(self.row_lists(), self.cols, self.p)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "FMatrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        n = self.rows
        if n == 0:
            return self
        aug = [r + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.row_lists())]
        red, piv = _kernels.rref(aug, 2 * n, self.p)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return FMatrix.from_rows([r[n:] for r in red[:n]], self.p)

    def __eq__(self, other):
        return isinstance(other, FMatrix) and self.shape == other.shape and self.p == other.p \
            and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.p, self.entries))

    def __repr__(self):
        return f"FMatrix({self.row_lists()}, p={self.p})"


def _kernel_from_rref(red, pivots, ncols, p):
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r][f]) % p
        basis.append(v)
    return basis


def rank_kernel(m: FMatrix):
    """Return ``(rank, K)`` where the columns of ``K`` span the null space of ``m``."""
    if m.rows == 0:
        return 0, FMatrix.identity(m.cols, m.p)
    red, piv = _kernels.rref(m.row_lists(), m.cols, m.p) if m.cols else ([], [])
    basis = _kernel_from_rref(red, piv, m.cols, m.p)
    return len(piv), FMatrix.from_columns(basis, m.p, m.cols)


def null_space(rows, ncols: int, p: int):
    """Null-space basis vectors of a list-of-rows matrix (plain lists, hot path)."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, piv = _kernels.rref(rows, ncols, p)
    return _kernel_from_rref(red, piv, ncols, p)


@dataclass(frozen=True)
class AffineSolution:
    particular: tuple
    kernel: FMatrix

    def dimension(self) -> int:
        return self.kernel.cols


def solve_affine(a: FMatrix, b: Sequence[int]) -> AffineSolution:
    """Solve ``a x = b``; raise :class:`Inconsistent` if there is no solution."""
    if len(b) != a.rows:
        raise ValueError("right-hand side has the wrong length")
    p = a.p
    n = a.cols
    _, kern = rank_kernel(a)
    if a.rows == 0:
        return AffineSolution(tuple([0] * n), kern)
    aug = [r + [v % p] for r, v in zip(a.row_lists(), b)]
    red, piv = _kernels.rref(aug, n + 1, p)
    if piv and piv[-1] == n:
        raise Inconsistent()
    x = [0] * n
    for r, c in enumerate(piv):
        x[c] = red[r][n]
    return AffineSolution(tuple(x), kern)
