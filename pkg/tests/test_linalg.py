import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from arnoldring.linalg import (
    Quotient,
    echelon,
    identity,
    in_row_lattice,
    is_unimodular,
    left_kernel,
    matmul,
    rank,
    smith_normal_form,
    solve_left,
)


def random_matrix(rng, m, n, lo=-6, hi=6, density=0.6):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)]


def sympy_factors(a, n):
    if not a:
        return []
    d = sympy_snf(Matrix(a), domain=ZZ)
    return sorted(abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0)


@pytest.mark.parametrize("seed", range(60))
def test_snf_against_sympy(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    a = random_matrix(rng, m, n)
    if seed % 5 == 0:  # force torsion
        a = [[2 * x for x in row] for row in a]
    f = smith_normal_form(a, n)
    assert sorted(f.invariant_factors) == sympy_factors(a, n)
    for x, y in zip(f.invariant_factors, f.invariant_factors[1:]):
        assert y % x == 0
    assert matmul(f.V, f.Vinv, n) == identity(n)


def test_snf_known_values():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3).invariant_factors == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]], 2).invariant_factors == []
    assert smith_normal_form([], 3).invariant_factors == []


def test_echelon_preserves_lattice():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(1, 6)
        a = random_matrix(rng, rng.randint(1, 8), n)
        basis, rest = echelon(a, n)
        assert not rest
        pivots = [next(i for i, x in enumerate(r) if x) for r in basis]
        assert pivots == sorted(set(pivots))
        for row in a:
            assert in_row_lattice(basis, row)
        for row in basis:
            assert solve_left(a, row, n) is not None
        assert rank(a, n) == Matrix(a).rank()


def test_left_kernel_and_solve():
    rng = random.Random(2)
    for _ in range(40):
        m, n = rng.randint(1, 7), rng.randint(1, 5)
        a = random_matrix(rng, m, n)
        ker = left_kernel(a, n)
        assert len(ker) == m - Matrix(a).rank()
        for y in ker:
            assert matmul([y], a, n)[0] == [0] * n
        y = [rng.randint(-3, 3) for _ in range(m)]
        b = matmul([y], a, n)[0]
        sol = solve_left(a, b, n)
        assert sol is not None and matmul([sol], a, n)[0] == b
    assert solve_left([[2, 0]], [1, 0], 2) is None
    assert solve_left([[1, 0]], [0, 1], 2) is None


def test_quotient_projection():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(2, 6)
        rel = random_matrix(rng, rng.randint(0, n), n, -2, 2)
        q = Quotient.of(rel, n)
        for r in rel:
            assert q.project(r) == [0] * q.free_rank
            assert q.contains(r)
        for j in range(q.free_rank):
            assert q.project(q.lift(j)) == [int(i == j) for i in range(q.free_rank)]
    q = Quotient.of([[2, 0], [0, 1]], 2)
    assert q.torsion == [2] and q.free_rank == 0 and not q.is_free


def test_unimodular():
    assert is_unimodular([[1, 1], [0, 1]])
    assert not is_unimodular([[2, 0], [0, 1]])
    assert not is_unimodular([[1, 2, 3]])
