"""Integer and Laurent polynomials, plus exact Lagrange interpolation."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class InterpolationError(ValueError):
    pass


def _trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Polynomial in q with integer coefficients, ascending degree."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int] = ()):
        coeffs = tuple(coefficients)
        if any(not isinstance(c, int) for c in coeffs):
            raise TypeError("coefficients must be integers")
        self.coefficients = _trim(coeffs)

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * q + c
        return acc

    def __add__(self, other):
        other = _as_int_poly(other)
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        return self + (-_as_int_poly(other))

    def __rsub__(self, other):
        return _as_int_poly(other) - self

    def __mul__(self, other):
        other = _as_int_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return isinstance(other, IntPolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(("IntPolynomial", self.coefficients))

    def __str__(self):
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mon = "q" if k == 1 else f"q^{k}"
                body = mon if mag == 1 else f"{mag}*{mon}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"IntPolynomial({list(self.coefficients)})"


def _as_int_poly(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial.constant(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to IntPolynomial")


def interpolate(points: Sequence[tuple[int, int]], degree_bound: int) -> IntPolynomial:
    """Fit the integer polynomial of degree <= ``degree_bound`` through ``points``.

    The first ``degree_bound + 1`` points determine the fit; any further
    points must agree with it.
    """
    points = [(int(q), int(v)) for q, v in points]
    if len(points) < degree_bound + 1:
        raise ValueError(f"need at least {degree_bound + 1} points, got {len(points)}")
    if len({q for q, _ in points}) != len(points):
        raise ValueError("interpolation nodes must be distinct")
    fit = points[:degree_bound + 1]
    # Newton divided differences in exact rationals
    xs = [q for q, _ in fit]
    coef = [Fraction(v) for _, v in fit]
    n = len(fit)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form into monomial coefficients
    poly = [Fraction(0)] * n
    basis = [Fraction(1)]
    for k in range(n):
        for d, b in enumerate(basis):
            poly[d] += coef[k] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for d, b in enumerate(basis):
            nxt[d + 1] += b
            nxt[d] -= xs[k] * b
        basis = nxt
    if any(c.denominator != 1 for c in poly):
        raise InterpolationError("non-integral fit")
    result = IntPolynomial(int(c) for c in poly)
    for q, v in points[degree_bound + 1:]:
        if result(q) != v:
            raise InterpolationError("over-determined mismatch")
    return result


class LaurentPolynomial:
    """Element of Z[v, v^-1]: integer coefficients starting at ``min_exp``."""

    __slots__ = ("coefficients", "min_exp")

    def __init__(self, coefficients: Iterable[int] = (), min_exp: int = 0):
        c = list(coefficients)
        lo = 0
        while lo < len(c) and c[lo] == 0:
            lo += 1
        c = c[lo:]
        while c and c[-1] == 0:
            c.pop()
        self.coefficients = tuple(c)
        self.min_exp = min_exp + lo if c else 0

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls((coeff,), exp)

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPolynomial":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    @classmethod
    def from_q_poly(cls, poly: IntPolynomial) -> "LaurentPolynomial":
        """Substitute q = v^2."""
        terms = {2 * k: c for k, c in enumerate(poly.coefficients)}
        return cls.from_dict(terms)

    def terms(self) -> dict:
        return {self.min_exp + i: c for i, c in enumerate(self.coefficients) if c}

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other):
        other = _as_laurent(other)
        t = self.terms()
        for e, c in other.terms().items():
            t[e] = t.get(e, 0) + c
        return LaurentPolynomial.from_dict(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial((-c for c in self.coefficients), self.min_exp)

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        other = _as_laurent(other)
        if self.is_zero() or other.is_zero():
            return LaurentPolynomial()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return LaurentPolynomial(out, self.min_exp + other.min_exp)

    __rmul__ = __mul__

    def exact_div(self, other) -> "LaurentPolynomial":
        """Divide when the quotient is again a Laurent polynomial."""
        other = _as_laurent(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        num = list(self.coefficients)
        den = other.coefficients
        if not num:
            return LaurentPolynomial()
        lead = den[-1]
        qlen = len(num) - len(den) + 1
        if qlen <= 0:
            raise ValueError("not divisible")
        quo = [0] * qlen
        for k in range(qlen - 1, -1, -1):
            top = num[k + len(den) - 1]
            if top % lead:
                raise ValueError("not divisible")
            c = top // lead
            quo[k] = c
            for j, d in enumerate(den):
                num[k + j] -= c * d
        if any(num):
            raise ValueError("not divisible")
        return LaurentPolynomial(quo, self.min_exp - other.min_exp)

    def evaluate(self, v):
        """Evaluate at a rational or integer v (Fraction result if needed)."""
        total = Fraction(0)
        for e, c in self.terms().items():
            total += c * Fraction(v) ** e
        return total

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.monomial(0, other)
        return isinstance(other, LaurentPolynomial) and self.coefficients == other.coefficients \
            and self.min_exp == other.min_exp

    def __hash__(self):
        return hash(("Laurent", self.coefficients, self.min_exp))

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for e in sorted(self.terms(), reverse=True):
            c = self.terms()[e]
            mon = "" if e == 0 else ("v" if e == 1 else f"v^{e}")
            mag = abs(c)
            body = str(mag) if not mon else (mon if mag == 1 else f"{mag}*{mon}")
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"LaurentPolynomial({list(self.coefficients)}, min_exp={self.min_exp})"


def _as_laurent(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial.monomial(0, x)
    raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPolynomial")


def quantum_integer(n: int) -> LaurentPolynomial:
    """[n]_v = v^{n-1} + v^{n-3} + ... + v^{1-n}."""
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPolynomial.from_dict({n - 1 - 2 * k: 1 for k in range(n)})


def quantum_factorial(n: int) -> LaurentPolynomial:
    out = LaurentPolynomial.monomial(0)
    for k in range(1, n + 1):
        out = out * quantum_integer(k)
    return out


def quantum_binomial(n: int, k: int) -> LaurentPolynomial:
    if k < 0 or k > n:
        return LaurentPolynomial()
    return quantum_factorial(n).exact_div(quantum_factorial(k) * quantum_factorial(n - k))
