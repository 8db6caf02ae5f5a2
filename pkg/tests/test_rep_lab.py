import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from rootlie.field import PrimeField
from rootlie.fmatrix import FMatrix
from rootlie.hall import hall_number
from rootlie.labels import label_of, parse_iso, realize
from rootlie.quiver import enumerate_roots, euler_form, linear_quiver
from rootlie.rep import (BudgetExceeded, Rep, RepMorphism, all_reps, aut_order, base_change, decompose,
                         direct_sum, enumerate_indecomposables, hom_dim, hom_space, is_indecomposable,
                         is_isomorphic, kernel_cokernel)


def rep(q, p, label):
    return realize(q, parse_iso(label), p)


def test_hom_space_examples(a2):
    P, S1, S2 = rep(a2, 2, "S(1,1)"), rep(a2, 2, "S(1,0)"), rep(a2, 2, "S(0,1)")
    assert hom_dim(P, S1) == 1
    assert hom_dim(P, S2) == 0
    for x in (P, S1, S2):
        assert hom_dim(x, x) >= 1


def test_kernel_cokernel_examples(a2):
    P, S1 = rep(a2, 2, "S(1,1)"), rep(a2, 2, "S(1,0)")
    ker, _, coker, _ = kernel_cokernel(RepMorphism.zero(P, S1))
    assert is_isomorphic(ker, P) and is_isomorphic(coker, S1)
    ker, _, coker, _ = kernel_cokernel(RepMorphism.identity(P))
    assert ker.is_zero() and coker.is_zero()
    (f,) = hom_space(P, S1)
    ker, _, coker, _ = kernel_cokernel(f)
    assert str(label_of(ker)) == "S(0,1)" and coker.is_zero()


def test_is_isomorphic_examples(a2):
    x = Rep.from_lists(a2, 2, (1, 1), {"a1": [[1]]})
    y = Rep.from_lists(a2, 2, (1, 1), {"a1": [[0]]})
    assert is_isomorphic(x, x)
    assert not is_isomorphic(rep(a2, 2, "S(1,0)"), rep(a2, 2, "S(0,1)"))
    assert not is_isomorphic(x, y)


def test_decompose_examples(a2):
    P, S1 = rep(a2, 2, "S(1,1)"), rep(a2, 2, "S(1,0)")
    assert [(str(label_of(r)), m) for r, m in decompose(P)] == [("S(1,1)", 1)]
    got = sorted((str(label_of(r)), m) for r, m in decompose(direct_sum(S1, P)))
    assert got == [("S(1,0)", 1), ("S(1,1)", 1)]
    got = [(str(label_of(r)), m) for r, m in decompose(direct_sum(S1, S1))]
    assert got == [("S(1,0)", 2)]


def test_enumerate_examples(a2, kron):
    assert len(enumerate_indecomposables(a2, (1, 1), PrimeField(2))) == 1
    assert enumerate_indecomposables(a2, (2, 0), PrimeField(2)) == []
    assert len(enumerate_indecomposables(kron, (1, 1), PrimeField(2))) == 3


def test_budget_exceeded(kron):
    with pytest.raises(BudgetExceeded, match="budget exceeded"):
        enumerate_indecomposables(kron, (3, 3), PrimeField(5), budget=1000)


def test_aut_order_examples(a2):
    for p in (2, 3):
        S1 = rep(a2, p, "S(1,0)")
        assert aut_order(S1) == p - 1
        assert aut_order(direct_sum(S1, S1)) == (p * p - 1) * (p * p - p)
    assert aut_order(rep(a2, 3, "S(1,1)")) == 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_kac_count(kron, p):
    assert len(enumerate_indecomposables(kron, (1, 1), PrimeField(p))) == p + 1


@pytest.mark.parametrize("n", [2, 3])
def test_gabriel(n):
    q = linear_quiver(n)
    roots = set(enumerate_roots(q).positive_real)
    for d in itertools.product(range(5), repeat=n):
        if 0 < sum(d) <= 4:
            assert len(enumerate_indecomposables(q, d, PrimeField(2))) == (1 if d in roots else 0)


def _brute_hom_count(x, y):
    """Count intertwiners by trying every tuple of vertex matrices."""
    q, p = x.quiver, x.p
    shapes = [(y.dim[i], x.dim[i]) for i in range(q.n)]
    sizes = [r * c for r, c in shapes]
    count = 0
    for flat in itertools.product(range(p), repeat=sum(sizes)):
        comps, o = [], 0
        for (r, c), s in zip(shapes, sizes):
            comps.append(FMatrix(r, c, p, tuple(flat[o:o + s])))
            o += s
        if RepMorphism(x, y, tuple(comps)).check():
            count += 1
    return count


@pytest.mark.parametrize("p", [2, 3])
def test_hom_count_matches_dimension(a2, p):
    reps = [r for d in [(1, 0), (0, 1), (1, 1), (2, 1)] for r in all_reps(a2, d, p)][:12]
    for x, y in itertools.product(reps[:6], reps[:6]):
        if sum(a * b for a, b in zip(x.dim, y.dim)) <= 4:
            assert _brute_hom_count(x, y) == p ** hom_dim(x, y)


def _ext_count(x, y):
    """|Ext^1(x, y)| from Hall numbers: sum over L of g^L_{xy} |Aut x||Aut y||Hom(x,y)| / |Aut L|."""
    q, p = x.quiver, x.p
    d = tuple(a + b for a, b in zip(x.dim, y.dim))
    classes = []
    for L in all_reps(q, d, p):
        if not any(is_isomorphic(L, c) for c in classes):
            classes.append(L)
    total = 0
    hx, hy = label_of(x), label_of(y)
    for L in classes:
        g = hall_number(q, label_of(L), hx, hy, p)
        num = g * aut_order(x) * aut_order(y) * p ** hom_dim(x, y)
        assert num % aut_order(L) == 0
        total += num // aut_order(L)
    return total


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_homological_identity(n, p):
    q = linear_quiver(n)
    labs = [parse_iso("S" + str(r).replace(" ", "")) for r in enumerate_roots(q).positive_real]
    objs = [realize(q, l, p) for l in labs]
    for x, y in itertools.product(objs, objs):
        ext = _ext_count(x, y)
        e = 0
        while p ** e < ext:
            e += 1
        assert p ** e == ext
        assert hom_dim(x, y) - e == euler_form(q, x.dim, y.dim)


def test_kernel_exactness_random():
    rng = random.Random(3)
    q = linear_quiver(3)
    for _ in range(20):
        p = rng.choice([2, 3])
        xs = [rng.choice(list(all_reps(q, d, p))) for d in [(1, 1, 0), (0, 1, 1)]]
        x, y = xs
        basis = hom_space(x, y)
        if not basis:
            continue
        f = basis[rng.randrange(len(basis))]
        ker, incl, coker, proj = kernel_cokernel(f)
        assert f.compose(incl).is_zero() and proj.compose(f).is_zero()
        for j in range(q.n):
            assert x.dim[j] == ker.dim[j] + f.comps[j].rank()
            assert y.dim[j] == coker.dim[j] + f.comps[j].rank()


def _random_invertible(n, p, rng):
    while True:
        m = FMatrix(n, n, p, tuple(rng.randrange(p) for _ in range(n * n)))
        if m.is_invertible():
            return m


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_krull_schmidt_invariant_under_base_change(seed, p):
    rng = random.Random(seed)
    q = linear_quiver(3)
    roots = enumerate_roots(q).positive_real
    parts = [realize(q, parse_iso("S" + str(rng.choice(roots)).replace(" ", "")), p) for _ in range(2)]
    x = direct_sum(*parts)
    if x.total_dim > 5:
        return
    y = base_change(x, [_random_invertible(d, p, rng) for d in x.dim])
    key = lambda r: sorted((str(label_of(a)), m) for a, m in decompose(r))
    assert key(x) == key(y)
    assert all(is_indecomposable(a) for a, _ in decompose(y))
