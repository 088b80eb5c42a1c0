from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from borelkit.errors import GuardExceeded, InvalidInput
from borelkit.linalg import (Field, complement_basis, kernel_basis, matmul, rank, rref,
                             row_space_basis, solve, transpose)

GF = Field(32003)
Q = Field(None)


def test_field_parse():
    assert Field.parse("rational").is_rational
    assert Field.parse("prime:7").p == 7
    assert str(Field.parse("prime:32003")) == "prime:32003"
    with pytest.raises(InvalidInput):
        Field.parse("prime:8")
    with pytest.raises(InvalidInput):
        Field.parse("reals")


def test_default_prime_env(monkeypatch):
    monkeypatch.setenv("BORELKIT_PRIME", "101")
    assert Field.default().p == 101
    monkeypatch.delenv("BORELKIT_PRIME")
    assert Field.default().p == 32003


def test_field_conversion():
    assert GF(-1) == 32002
    assert GF(Fraction(1, 2)) * 2 % 32003 == 1
    assert Q(3) == Fraction(3)


def test_rank_and_kernel():
    a = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(a, Q) == 2
    ker = kernel_basis(a, Q)
    assert len(ker) == 1
    assert all(x == 0 for row in matmul(a, [[v] for v in ker[0]], Q) for x in row)
    assert kernel_basis([], Q, cols=2) == [[1, 0], [0, 1]]


def test_rank_depends_on_characteristic():
    a = [[1, 1], [1, 3]]
    assert rank(a, Q) == 2
    assert rank(a, Field(2)) == 1


def test_solve():
    a = [[1, 1], [0, 1]]
    assert solve(a, [3, 1], Q) == [2, 1]
    assert solve([[1, 1], [1, 1]], [0, 1], Q) is None


def test_row_space_and_complement():
    rows = [[1, 1, 0], [2, 2, 0]]
    assert row_space_basis(rows, Q) == [[1, 1, 0]]
    assert complement_basis(rows, 3, Q) == [1, 2]


def test_matmul_shapes():
    assert matmul([], [[1, 2]], Q, inner=1) == []
    assert matmul([[1]], [[]], Q) == [[]]
    with pytest.raises(InvalidInput):
        matmul([[1, 2]], [[1]], Q)
    assert transpose([], cols=2) == [[], []]


def test_guard():
    with pytest.raises(GuardExceeded):
        rref([[0] * 3000], Q)


mat = st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4)


@given(mat)
def test_rank_nullity(a):
    for field in (Q, GF):
        assert rank(a, field) + len(kernel_basis(a, field)) == 3
        assert rank(a, field) == rank(transpose(a), field)
