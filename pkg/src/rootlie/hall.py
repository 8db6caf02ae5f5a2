"""Hall numbers by submodule counting, Hall polynomials by interpolation over
several primes, the Ringel bracket at q=1 and the twisted Hall algebra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from rootlie.field import primes_from
from rootlie.labels import (IndecLabel, IsoLabel, is_kronecker, realize, indecomposable_labels)
from rootlie.poly import IntPolynomial, LaurentPolynomial, interpolate, quantum_binomial
from rootlie.quiver import Quiver, euler_form, cartan_matrix, quiver_type
from rootlie.rep import Rep, is_isomorphic, is_indecomposable, subrepresentations, DEFAULT_BUDGET


@dataclass(frozen=True)
class Aggregate:
    """Every indecomposable of a given dimension vector, counted together."""

    dim: tuple

    def __str__(self):
        return "E(" + ",".join(map(str, self.dim)) + ")"


def class_dim(q: Quiver, c) -> tuple:
    if isinstance(c, Aggregate):
        return c.dim
    if isinstance(c, IndecLabel):
        return c.dim
    return c.dim_for(q.n)


def matcher(q: Quiver, c, p: int) -> Callable[[Rep], bool]:
    """Predicate deciding membership of a representation in the class c over F_p."""
    d = class_dim(q, c)
    if isinstance(c, Aggregate):
        return lambda w: w.dim == d and is_indecomposable(w)
    r = realize(q, c, p)
    return lambda w: w.dim == d and is_isomorphic(w, r)


def count_submodules(L: Rep, quot, sub, budget: int = DEFAULT_BUDGET) -> int:
    """#{W <= L : W in class sub, L/W in class quot}."""
    q, p = L.quiver, L.p
    ds, dq = class_dim(q, sub), class_dim(q, quot)
    if tuple(a + b for a, b in zip(ds, dq)) != L.dim:
        raise ValueError("dimension vectors of sub and quotient do not add up to dim L")
    is_sub, is_quot = matcher(q, sub, p), matcher(q, quot, p)
    return sum(1 for w, c in subrepresentations(L, ds, budget) if is_sub(w) and is_quot(c))


def hall_number(q: Quiver, target, quot, sub, p: int, budget: int = DEFAULT_BUDGET) -> int:
    return count_submodules(realize(q, target, p), quot, sub, budget)


@dataclass(frozen=True)
class HallPolynomial:
    target: object
    quot: object
    sub: object
    poly: IntPolynomial
    primes_used: tuple
    held_out: int
    degree_bound: int

    def __call__(self, q):
        return self.poly(q)


def primes_for(bound: int, start: int = 2) -> tuple:
    """Ascending primes, enough for bound+1 fitting points and one held out."""
    return tuple(itertools.islice(primes_from(start), bound + 2))


def fit_counts(counter: Callable[[int], int], bound: int, primes: Sequence[int] | None = None):
    """Interpolate counter(p) over primes; returns (poly, primes_used, held_out)."""
    ps = tuple(primes) if primes else primes_for(bound)
    if len(ps) < bound + 2:
        raise ValueError(f"need {bound + 2} primes for degree bound {bound}, got {len(ps)}")
    points = [(p, counter(p)) for p in ps]
    poly = interpolate(points, bound)
    return poly, ps[:-1], ps[-1]


_HALL_MEMO: dict = {}


def hall_polynomial(q: Quiver, target, quot, sub, primes: Sequence[int] | None = None,
                    budget: int = DEFAULT_BUDGET) -> HallPolynomial:
    key = (q, target, quot, sub, tuple(primes) if primes else None)
    hit = _HALL_MEMO.get(key)
    if hit is not None:
        return hit
    bound = sum(class_dim(q, target))
    poly, used, held = fit_counts(lambda p: hall_number(q, target, quot, sub, p, budget), bound, primes)
    out = HallPolynomial(target, quot, sub, poly, used, held, bound)
    _HALL_MEMO[key] = out
    return out


def ringel_bracket_constant(q: Quiver, target, a, b) -> int:
    """Coefficient of u_target in [u_a, u_b] = u_a u_b - u_b u_a at q = 1."""
    if a == b:
        return 0
    return hall_polynomial(q, target, a, b).poly(1) - hall_polynomial(q, target, b, a).poly(1)


# iso classes of a dimension vector --------------------------------------------------
def _indec_types(q: Quiver, d: tuple):
    """Indecomposable class types that fit inside d.

    Real-root classes are unique.  For the Kronecker quiver the regular classes of
    dimension k*delta are represented by the tube at z=0; the arrow-mixing symmetry
    moves any rational tube point there, so counts that only involve simples agree.
    """
    kind, delta = quiver_type(q)
    bound = sum(d)
    out = [lab for lab in indecomposable_labels(q, None if kind == "finite" else bound)
           if all(x <= y for x, y in zip(lab.dim, d))]
    if kind == "affine":
        if not is_kronecker(q):
            raise ValueError("regular classes are modelled for the Kronecker quiver only")
        k = 1
        while all(k * x <= y for x, y in zip(delta, d)):
            out.append(IndecLabel(tuple(k * x for x in delta), "0", k, 0))
            k += 1
    elif kind == "wild":
        raise ValueError("iso classes of a wild quiver are not enumerated")
    return out


def class_types(q: Quiver, d: Sequence[int]) -> list:
    """IsoLabels whose dimension is d, built as multisets of indecomposable types."""
    d = tuple(d)
    types = sorted(_indec_types(q, d))
    out = []

    def rec(i, rest, acc):
        if not any(rest):
            out.append(IsoLabel.of(*acc))
            return
        if i == len(types):
            return
        t = types[i]
        m = 0
        r = rest
        while all(x >= 0 for x in r):
            if t.regular and m > 1:
                break  # two summands from one tube family are not field-stable types
            rec(i + 1, r, acc + [t] * m)
            m += 1
            r = tuple(x - y for x, y in zip(r, t.dim))

    rec(0, d, [])
    regular_parts = [sum(m for l, m in lab.parts if l.regular) for lab in out]
    return [lab for lab, r in zip(out, regular_parts) if r <= 1]


# the twisted Hall algebra -------------------------------------------------------------
class HallElement:
    """Finitely supported combination of u_lambda with Laurent coefficients in v."""

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not _as_l(v).is_zero()}
        self.terms = {k: _as_l(v) for k, v in self.terms.items()}

    @classmethod
    def basis(cls, label: IsoLabel) -> "HallElement":
        return cls({label: LaurentPolynomial.monomial(0)})

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return HallElement(t)

    def __neg__(self):
        return HallElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HallElement":
        c = _as_l(c)
        return HallElement({k: v * c for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, HallElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({v})u[{k}]" for k, v in sorted(self.terms.items()))


def _as_l(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    return LaurentPolynomial.monomial(0, int(x))


def hall_product_polys(q: Quiver, a: IsoLabel, b: IsoLabel) -> dict:
    """lambda -> g^lambda_{a b}(q) over all class types of dimension dim a + dim b."""
    d = tuple(x + y for x, y in zip(a.dim_for(q.n), b.dim_for(q.n)))
    out = {}
    for lam in class_types(q, d):
        g = hall_polynomial(q, lam, a, b).poly
        if not g.is_zero():
            out[lam] = g
    return out


def twisted_product(q: Quiver, f: HallElement, g: HallElement) -> HallElement:
    """u_a * u_b = v^<a,b> sum_lambda g^lambda_{ab}(v^2) u_lambda, extended bilinearly."""
    out = HallElement()
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            e = euler_form(q, a.dim_for(q.n), b.dim_for(q.n))
            coeff = ca * cb * LaurentPolynomial.monomial(e)
            terms = {lam: coeff * LaurentPolynomial.from_q_poly(poly)
                     for lam, poly in hall_product_polys(q, a, b).items()}
            out = out + HallElement(terms)
    return out


# quantum Serre via composition-series counts -----------------------------------------
def _composition_series(L: Rep, seq: Sequence[int], budget: int) -> int:
    """Chains L = W_0 > W_1 > ... > 0 with W_{k-1}/W_k simple at vertex seq[k-1]."""
    if not seq:
        return 1 if L.is_zero() else 0
    i = seq[0]
    sub = tuple(x - (1 if k == i else 0) for k, x in enumerate(L.dim))
    if min(sub) < 0:
        return 0
    return sum(_composition_series(w, seq[1:], budget) for w, _ in subrepresentations(L, sub, budget))


@lru_cache(maxsize=None)
def _monomial_poly(q: Quiver, lam: IsoLabel, seq: tuple) -> IntPolynomial:
    bound = len(seq)
    poly, _, _ = fit_counts(lambda p: _composition_series(realize(q, lam, p), seq, DEFAULT_BUDGET), bound)
    return poly


def monomial_coefficients(q: Quiver, seq: Sequence[int]) -> dict:
    """Coefficients of u_{S_seq[0]} * ... * u_{S_seq[-1]} on every class type."""
    seq = tuple(seq)
    n = q.n
    d = tuple(sum(1 for s in seq if s == k) for k in range(n))
    e = 0
    for x, y in itertools.combinations(seq, 2):
        e += euler_form(q, q.simple(q.vertices[x]), q.simple(q.vertices[y]))
    out = {}
    for lam in class_types(q, d):
        poly = _monomial_poly(q, lam, seq)
        if not poly.is_zero():
            out[lam] = LaurentPolynomial.from_q_poly(poly) * LaurentPolynomial.monomial(e)
    return out


def serre_element(q: Quiver, i, j) -> HallElement:
    """sum_k (-1)^k [N choose k]_v u_i^k u_j u_i^(N-k) with N = 1 - a_ij."""
    ii, jj = q.index(i), q.index(j)
    a = cartan_matrix(q)[ii][jj]
    n = 1 - a
    total = HallElement()
    for k in range(n + 1):
        seq = (ii,) * k + (jj,) + (ii,) * (n - k)
        c = quantum_binomial(n, k) * LaurentPolynomial.monomial(0, (-1) ** k)
        total = total + HallElement(monomial_coefficients(q, seq)).scale(c)
    return total


def quantum_serre_check(q: Quiver, i, j) -> bool:
    if str(i) == str(j):
        raise ValueError("quantum Serre relations need two distinct vertices")
    return serre_element(q, i, j).is_zero()
