from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rigidity_kit.algebra import GF, QQ, MultiPoly, linear_form, variables
from rigidity_kit.quadform import QuadForm, from_degree2, matrix_rank, rank, rank_on_hyperplane

F101 = GF(101)


def test_from_degree2_examples():
    x1, x2 = variables(QQ, 2)
    q = from_degree2(x1 * x1 + x1 * x2)
    assert q.entries == ((1, Fraction(1, 2)), (Fraction(1, 2), 0))
    assert from_degree2(MultiPoly.zero(QQ, 3)).entries == ((0, 0, 0),) * 3
    xs = variables(QQ, 10)
    q = from_degree2(sum((x * x for x in xs[:8]), MultiPoly.zero(QQ, 10)))
    assert [q.entries[i][i] for i in range(10)] == [1] * 8 + [0, 0]
    assert rank(q) == 8


def test_from_degree2_rejects_bad_input():
    x, y = variables(QQ, 2)
    with pytest.raises(ValueError):
        from_degree2(x * x + y)
    with pytest.raises(ValueError):
        from_degree2(x * x * y)


def test_rank_examples():
    ident = tuple(tuple(int(i == j) for j in range(8)) for i in range(8))
    assert rank(QuadForm(QQ, ident)) == 8
    x1, x2, _ = variables(F101, 3)
    assert rank(from_degree2(x1 * x2)) == 2


def test_rank_on_hyperplane_examples():
    n = 6
    xs = variables(QQ, n)
    q = from_degree2(sum((x * x for x in xs), MultiPoly.zero(QQ, n)))
    assert rank_on_hyperplane(q, xs[0]) == n - 1
    a, b = variables(QQ, 2)
    assert rank_on_hyperplane(from_degree2(a * b), a) == 0
    with pytest.raises(ValueError):
        rank_on_hyperplane(q, MultiPoly.zero(QQ, n))


def _random_invertible(field, n, rng):
    while True:
        if field is QQ:
            g = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        else:
            g = [[field(rng.randrange(field.p)) for _ in range(n)] for _ in range(n)]
        if matrix_rank(g, field) == n:
            return g


def _diag_rank(field, n, r, rng):
    d = [[field(0)] * n for _ in range(n)]
    for i in range(r):
        v = 0
        while v == 0:
            v = field(rng.randint(1, 50))
        d[i][i] = v
    return QuadForm(field, tuple(tuple(row) for row in d))


@pytest.mark.parametrize("field", [F101, GF(3), QQ], ids=["F101", "F3", "Q"])
def test_rank_is_congruence_invariant(field):
    rng = random.Random(17)
    for trial in range(200):
        n = rng.randint(1, 7)
        r = rng.randint(0, n)
        q = _diag_rank(field, n, r, rng)
        g = _random_invertible(field, n, rng)
        assert rank(q.congruent(g)) == r == rank(q)


def test_congruent_rank5_example():
    rng = random.Random(3)
    q = _diag_rank(QQ, 8, 5, rng)
    assert rank(q.congruent(_random_invertible(QQ, 8, rng))) == 5


@pytest.mark.parametrize("field", [F101, GF(5), QQ], ids=["F101", "F5", "Q"])
def test_hyperplane_rank_drop_at_most_two(field):
    rng = random.Random(29)
    for trial in range(300):
        n = rng.randint(2, 7)
        q = _diag_rank(field, n, rng.randint(0, n), rng)
        q = q.congruent(_random_invertible(field, n, rng))
        lam = linear_form(field, [rng.randint(-3, 3) for _ in range(n)])
        if lam.is_zero():
            continue
        r, h = rank(q), rank_on_hyperplane(q, lam)
        assert r - 2 <= h <= r


@pytest.mark.parametrize("field", [F101, QQ], ids=["F101", "Q"])
def test_form_evaluation_reproduces_polynomial(field):
    rng = random.Random(5)
    n = 5
    terms = {}
    for i in range(n):
        for j in range(i, n):
            e = [0] * n
            e[i] += 1
            e[j] += 1
            terms[tuple(e)] = field(rng.randint(-9, 9))
    f = MultiPoly(field, n, terms)
    q = from_degree2(f)
    assert q.to_poly() == f
    for _ in range(100):
        pt = [field(rng.randint(-20, 20)) for _ in range(n)]
        assert q.evaluate(pt) == f.evaluate(pt)


def test_characteristic_two_never_reaches_quadform():
    with pytest.raises(ValueError):
        GF(2)
    with pytest.raises(ValueError):
        QuadForm(F101, ((1, 2), (3, 1)))
