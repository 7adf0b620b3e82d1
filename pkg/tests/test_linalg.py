import random

import pytest
from hypothesis import given, settings, strategies as st

from reflexdga.errors import NotAComplexError
from reflexdga.linalg import (QQ, FieldSpec, SparseMatrix, check_complex, homology_at, homology_basis,
                              inverse, is_invertible, kernel_basis, rank, solve)

F2 = FieldSpec.prime(2)
F5 = FieldSpec.prime(5)


def test_rank_examples():
    assert rank(SparseMatrix.zeros(0, 0)) == 0
    assert rank(SparseMatrix.identity(3)) == 3
    m = [[1, 2], [2, 4]]
    assert rank(SparseMatrix.from_dense(m, QQ)) == 1
    assert rank(SparseMatrix.from_dense(m, F2)) == 1


def test_kernel_examples():
    assert kernel_basis(SparseMatrix.identity(2)) == []
    assert len(kernel_basis(SparseMatrix.zeros(2, 3))) == 3
    ker = kernel_basis(SparseMatrix.from_dense([[1, 1, 0]], F2))
    assert len(ker) == 2
    m = SparseMatrix.from_dense([[1, 1, 0]], F2)
    assert all(not m.apply(v) for v in ker)


def test_homology_examples():
    z = SparseMatrix.zeros(1, 2)
    assert homology_at(SparseMatrix.zeros(2, 0), SparseMatrix.zeros(0, 2)) == 2
    assert homology_at(SparseMatrix.identity(1), None) == 0
    one = SparseMatrix.identity(1)
    assert homology_at(None, one) == 0 and homology_at(one, None) == 0
    assert z.shape == (1, 2)


def test_not_a_complex():
    d = SparseMatrix.identity(1)
    with pytest.raises(NotAComplexError):
        check_complex(d, d)


def test_fp_arithmetic_and_coercion():
    assert F5.coerce("1/2") == 3
    with pytest.raises(ArithmeticError):
        F2.coerce("1/2")
    with pytest.raises(ValueError):
        FieldSpec.prime(4)


def test_solve_inverse():
    m = SparseMatrix.from_dense([[2, 1], [1, 1]])
    x = solve(m, {0: 1})
    assert m.apply(x) == {0: 1}
    assert inverse(m) @ m == SparseMatrix.identity(2)
    assert solve(SparseMatrix.from_dense([[1, 1], [1, 1]]), {0: 1}) is None
    assert not is_invertible(SparseMatrix.zeros(2, 2))


def _random_matrix(rng, rows, cols, field, density=0.3):
    ent = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < density:
                ent[(r, c)] = rng.randint(-4, 4)
    return SparseMatrix(rows, cols, ent, field)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 10_000), st.sampled_from([QQ, F2, F5]))
def test_rank_nullity_and_transpose(rows, cols, seed, field):
    m = _random_matrix(random.Random(seed), rows, cols, field)
    assert rank(m) == rank(m.transpose())
    assert rank(m) + len(kernel_basis(m)) == cols


def test_large_rank_transpose():
    rng = random.Random(3)
    m = _random_matrix(rng, 200, 150, F5, density=0.02)
    assert rank(m) == rank(m.transpose())


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_homology_invariant_under_change_of_basis(seed):
    rng = random.Random(seed)
    a, b, c = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5)
    # d1 d0 = 0 by construction: d1 = P, d0 = Q with P Q = 0 via a kernel
    d0 = _random_matrix(rng, b, a, QQ, 0.5)
    ker = kernel_basis(d0.transpose())  # rows annihilating the image of d0
    rows = [ker[i % len(ker)] for i in range(c)] if ker else []
    d1 = SparseMatrix.from_rows(rows, b, QQ) if rows else SparseMatrix.zeros(c, b, QQ)
    check_complex(d0, d1)
    h = homology_at(d0, d1)

    def rand_inv(n):
        while True:
            m = _random_matrix(rng, n, n, QQ, 0.6)
            if is_invertible(m):
                return m
    pa, pb, pc = rand_inv(a), rand_inv(b), rand_inv(c)
    e0 = inverse(pb) @ d0 @ pa
    e1 = inverse(pc) @ d1 @ pb
    assert homology_at(e0, e1) == h
    assert homology_basis(e0, e1, b, QQ).rank == h


def test_deterministic_kernel():
    m = SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6]])
    assert kernel_basis(m) == kernel_basis(SparseMatrix.from_dense([[1, 2, 3], [2, 4, 6]]))
