import random

import pytest

from odequiv.rat import Q, ZERO, ONE
from odequiv import linalg
from odequiv.linalg import (rref, rank, nullspace, solve, solve_unique,
                            solve2, matvec, annihilator, PivotError)
from odequiv.dual import Dual


def rand_matrix(rng, rows, cols):
    return [[Q(rng.randint(-5, 5)) for _ in range(cols)] for _ in range(rows)]


def test_rref_is_canonical_for_the_row_space():
    rng = random.Random(1)
    for _ in range(10):
        m = rand_matrix(rng, 4, 5)
        red, piv = rref(m)
        # shuffling and rescaling rows must not change the output
        m2 = [list(r) for r in m]
        rng.shuffle(m2)
        m2[0] = [Q(3) * v for v in m2[0]]
        red2, piv2 = rref(m2)
        assert red == red2 and piv == piv2


def test_rref_pivots_are_unit_columns():
    red, piv = rref([[Q(2), Q(4)], [Q(1), Q(3)]])
    for r, c in enumerate(piv):
        assert red[r][c] == ONE
        assert all(red[i][c] == ZERO for i in range(len(red)) if i != r)


def test_nullspace_vectors_solve_the_system():
    rng = random.Random(2)
    for _ in range(10):
        m = rand_matrix(rng, 3, 6)
        null = nullspace(m, 6)
        assert len(null) == 6 - rank(m)
        for v in null:
            assert all(not s for s in matvec(m, v))


def test_solve_and_unique_solution():
    m = [[Q(1), Q(2)], [Q(3), Q(5)]]
    rhs = [Q(4), Q(9)]
    sol = solve_unique(m, rhs)
    assert matvec(m, sol) == rhs
    with pytest.raises(ValueError):
        solve([[Q(1), Q(1)], [Q(1), Q(1)]], [Q(0), Q(1)])
    with pytest.raises(ValueError):
        solve_unique([[Q(1), Q(1)]], [Q(1)])


def test_solve_particular_plus_nullspace():
    m = [[Q(1), Q(1), Q(0)], [Q(0), Q(1), Q(1)]]
    rhs = [Q(2), Q(3)]
    sol, null = solve(m, rhs)
    assert matvec(m, sol) == rhs
    assert len(null) == 1
    shifted = [a + b for a, b in zip(sol, null[0])]
    assert matvec(m, shifted) == rhs


def test_solve2():
    x, y = solve2(Q(2), Q(1), Q(1), Q(1), Q(5), Q(3))
    assert x == 2 and y == 1
    with pytest.raises(PivotError):
        solve2(Q(1), Q(2), Q(2), Q(4), Q(0), Q(0))


def test_annihilator_pairs_to_zero():
    basis = [[Q(1), Q(0), Q(2)], [Q(0), Q(1), Q(-1)]]
    ann = annihilator(basis, 3)
    assert len(ann) == 1
    for b in basis:
        assert not sum((a * v for a, v in zip(ann[0], b)), ZERO)


def test_dual_pivot_needs_invertible_value():
    eps = Dual(ZERO, {"e": ONE})
    with pytest.raises(PivotError):
        rref([[eps, Dual(ZERO)], [Dual(ZERO), Dual(ZERO)]])


def test_rref_over_duals_tracks_gradients():
    # rank of a matrix with dual entries equals the rank at the value part
    a = Dual(Q(2), {"e": Q(1)})
    red, piv = rref([[a, a], [a, a]])
    assert len(piv) == 1
