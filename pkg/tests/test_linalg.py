import random
from fractions import Fraction

import pytest

from frobq.errors import ValidationError
from frobq.linalg import QQ, FpElement, PrimeField, SparseMatrix, kernel_basis, rank, rref


def dense(rows, field=QQ):
    entries = {}
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            if value:
                entries[(i, j)] = field.scalar(value)
    return SparseMatrix(len(rows), len(rows[0]) if rows else 0, entries, field)


class TestRref:
    def test_identity_fixed(self):
        m = dense([[1, 0], [0, 1]])
        reduced, pivots = rref(m)
        assert reduced == m and pivots == [0, 1]

    def test_single_row(self):
        m = dense([[1, 1]])
        reduced, pivots = rref(m)
        assert reduced == m and pivots == [0]

    def test_zero_matrix(self):
        m = SparseMatrix(2, 3, {})
        reduced, pivots = rref(m)
        assert reduced.entries == {} and pivots == []

    def test_mixed_scalar_kinds_rejected(self):
        with pytest.raises(ValidationError):
            SparseMatrix(1, 1, {(0, 0): FpElement(1, 5)}, QQ)
        with pytest.raises(ValidationError):
            SparseMatrix(1, 1, {(0, 0): FpElement(1, 5)}, PrimeField(7))


class TestRank:
    def test_identity(self):
        assert rank(dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3

    def test_dependent_rows(self):
        assert rank(dense([[2, 4], [1, 2]])) == 1

    def test_zero(self):
        assert rank(SparseMatrix(3, 3, {})) == 0


class TestKernel:
    def test_identity_trivial_kernel(self):
        assert kernel_basis(dense([[1, 0], [0, 1]])).dimension == 0

    def test_one_relation(self):
        kb = kernel_basis(dense([[1, 1]]))
        assert kb.dimension == 1
        assert kb.vectors == [{1: Fraction(1), 0: Fraction(-1)}]

    def test_zero_matrix_full_kernel(self):
        assert kernel_basis(SparseMatrix(2, 3, {})).dimension == 3


def random_matrix(rng, field):
    nrows = rng.randint(1, 6)
    ncols = rng.randint(1, 6)
    entries = {}
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < 0.5:
                value = field.scalar(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
                entries[(i, j)] = value
    return SparseMatrix(nrows, ncols, entries, field)


@pytest.mark.parametrize("field", [QQ, PrimeField(5)])
def test_rank_nullity_and_annihilation(field):
    rng = random.Random(20240 if field is QQ else 20241)
    count = 200 if field is QQ else 50
    for _ in range(count):
        m = random_matrix(rng, field)
        kb = kernel_basis(m)
        assert rank(m) + kb.dimension == m.ncols
        for vec in kb.vectors:
            assert m.apply(vec) == {}


def test_rref_idempotent():
    rng = random.Random(99)
    for _ in range(60):
        m = random_matrix(rng, QQ)
        reduced, pivots = rref(m)
        again, pivots2 = rref(reduced)
        assert again == reduced and pivots2 == pivots


def test_rational_arithmetic_sanity():
    rng = random.Random(7)
    for _ in range(50):
        a = Fraction(rng.randint(1, 30), rng.randint(1, 30))
        b = Fraction(rng.randint(1, 30), rng.randint(1, 30))
        assert (a / b) * (b / a) == 1
        assert (a / b).denominator > 0


def test_prime_field_requires_prime():
    with pytest.raises(ValidationError):
        PrimeField(6)
    PrimeField(2)
    PrimeField(97)
