from __future__ import annotations

import itertools
import random

import pytest

from rigidity_kit.algebra import GF, MultiPoly, monomials_of_degree, variables
from rigidity_kit.ideals import (
    INDETERMINATE,
    NOT_REGULAR,
    REGULAR,
    groebner,
    is_regular_sequence,
    is_regular_sequence_affine,
    linear_part_dimension,
    projective_dimension,
)
from rigidity_kit.mps import random_form

F101 = GF(101)
F3 = GF(3)


def _leading_ideal_contains(basis, mono):
    return any(all(a <= b for a, b in zip(lt, mono)) for lt in basis.leading_exponents())


def test_groebner_examples():
    x1, x2, x3 = variables(F101, 3)
    b = groebner([x1, x2])
    assert set(b.groebner) == {x1, x2}
    a, c = variables(F101, 2)
    b = groebner([a * a - c * c, a * c])
    for mono in [(2, 0), (1, 1), (0, 3)]:
        assert _leading_ideal_contains(b, mono)
    assert not _leading_ideal_contains(b, (0, 2))
    with pytest.raises(ValueError):
        groebner([])
    with pytest.raises(ValueError):
        groebner([x1 + x2 * x2])


def test_projective_dimension_examples():
    x1, x2, x3 = variables(F101, 3)
    assert projective_dimension(groebner([x1])) == 1
    assert projective_dimension(groebner([x1, x2, x3])) == -1
    assert projective_dimension(groebner([x1 * x2])) == 1


def test_is_regular_sequence_examples():
    x1, x2, x3 = variables(F101, 3)
    assert is_regular_sequence([x1 ** 2, x2 ** 3, x3 ** 2]).status == REGULAR
    res = is_regular_sequence([x1 * x2, x1 * x3])
    assert res.status == NOT_REGULAR and res.index == 2
    with pytest.raises(ValueError):
        is_regular_sequence([x1, x2, x3, x1 + x2])


def test_dense_forms_degrees_2_to_5_are_regular():
    rng = random.Random(101)
    for _ in range(3):
        seq = [random_form(F101, 4, k, rng) for k in (2, 3, 4, 5)]
        res = is_regular_sequence(seq)
        assert res.status == REGULAR
        assert res.dims == (2, 1, 0, -1)


def _f3_points(seq, n):
    for v in itertools.product(range(3), repeat=n):
        if any(v) and next(x for x in v if x) == 1:
            if all(f.evaluate(v) == 0 for f in seq):
                yield v


def test_dense_forms_cross_checked_by_f3_points():
    # three-variable shrunken instance: a regular triple has no projective
    # zeros at all, so an F_3-rational zero would refute the verdict
    rng = random.Random(3)
    regular = 0
    for _ in range(40):
        seq = [random_form(F3, 3, k, rng) for k in (1, 2, 2)]
        if any(f.is_zero() for f in seq):
            continue
        res = is_regular_sequence(seq)
        if res.status == REGULAR:
            regular += 1
            assert not list(_f3_points(seq, 3))
    assert regular > 10


def _subset_oracle_dimension(monos, n):
    """Largest coordinate subspace inside V: evaluate at 0/1 indicator vectors."""
    best = -1
    for bits in itertools.product((0, 1), repeat=n):
        # a monomial survives at the indicator iff its support sits inside it
        if not any(all(b or not e for b, e in zip(bits, m)) for m in monos):
            best = max(best, sum(bits) - 1)
    return best


def test_monomial_ideals_match_subset_oracle():
    rng = random.Random(8)
    for _ in range(300):
        n = rng.randint(1, 5)
        k = rng.randint(1, 4)
        monos = []
        for _ in range(k):
            e = tuple(rng.randint(0, 2) for _ in range(n))
            if sum(e) == 0:
                e = (1,) + e[1:]
            monos.append(e)
        gens = [MultiPoly(F101, n, {m: 1}) for m in monos]
        assert projective_dimension(groebner(gens)) == _subset_oracle_dimension(monos, n), monos


def test_regular_sequences_are_permutation_stable():
    rng = random.Random(50)
    found = 0
    while found < 50:
        n = rng.randint(2, 4)
        k = rng.randint(1, n)
        seq = [random_form(F101, n, rng.randint(1, 3), rng) for _ in range(k)]
        if any(f.is_zero() for f in seq) or is_regular_sequence(seq).status != REGULAR:
            continue
        found += 1
        for perm in itertools.permutations(seq):
            assert is_regular_sequence(list(perm)).status == REGULAR


def test_generic_full_length_is_empty():
    rng = random.Random(4)
    for n in (2, 3, 4):
        seq = [random_form(F101, n, 2, rng) for _ in range(n)]
        res = is_regular_sequence(seq)
        assert res.status == REGULAR and res.dims[-1] == -1
        assert projective_dimension(groebner(seq)) == -1


def test_appending_after_empty_set():
    x1, x2, x3 = variables(F101, 3)
    # the set is empty after three forms: a fourth is rejected by length
    with pytest.raises(ValueError):
        is_regular_sequence([x1, x2, x3, x1 * x2])
    # in a bigger ring the same generators keep dimension -1 after the append
    y = variables(F101, 4)
    res = is_regular_sequence([y[0], y[1], y[2], y[3]])
    assert res.dims[-1] == -1
    assert projective_dimension(groebner([y[0], y[1], y[2], y[3], y[0] * y[1]])) == -1


def test_truncated_basis_gives_indeterminate():
    rng = random.Random(6)
    seq = [random_form(F101, 4, 2, rng) for _ in range(3)]
    assert is_regular_sequence(seq).status == REGULAR
    res = is_regular_sequence(seq, degree_cap=2)
    assert res.status == INDETERMINATE and res.truncated
    basis = groebner(seq, degree_cap=2)
    assert basis.truncated
    with pytest.raises(ValueError):
        projective_dimension(basis)


def test_zero_element_is_not_regular():
    x1, x2 = variables(F101, 2)
    res = is_regular_sequence([x1, MultiPoly.zero(F101, 2)])
    assert res.status == NOT_REGULAR and res.index == 2


def test_affine_diagnostic():
    z1, z2, z3 = variables(F101, 3)
    one = MultiPoly.constant(F101, 3, 1)
    # z1 + z2^2, z2 + z3^3: regular at the origin, certified after homogenizing
    assert is_regular_sequence_affine([z1 + z2 * z2, z2 + z3 ** 3]).status == REGULAR
    # z1 and z1*(1 + z2): the second element is a unit multiple of the first
    res = is_regular_sequence_affine([z1, z1 * (one + z2)])
    assert res.status == INDETERMINATE


def test_linear_part_dimension():
    x = variables(F101, 4)
    assert linear_part_dimension([x[0], x[0] + x[1], x[2] * x[3]]) == 2
    assert linear_part_dimension([x[0] * x[1]]) == 0


def test_rejects_rational_coefficients():
    from rigidity_kit.algebra import QQ

    (a,) = variables(QQ, 1)
    with pytest.raises(TypeError):
        groebner([a])
