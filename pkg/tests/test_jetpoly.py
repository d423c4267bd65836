import random

import pytest

from odequiv.rat import Q
from odequiv import jetpoly
from odequiv.jetpoly import (JetPolynomial, SectionJet, poly, uvar, xvar,
                             build_F1F2, build_F3, build_Psi)

from conftest import rand_jet


def test_polynomial_arithmetic_basics():
    u = JetPolynomial.var(uvar(1, 0, 0))
    x = JetPolynomial.var(xvar(1))
    p = (u + 2) * (u - 2)
    q = u * u - 4
    assert p == q
    assert (p - q).terms == {}
    assert (x * u).terms != (x + u).terms


def test_total_derivative_leibniz():
    rng = random.Random(2)
    vars = [uvar(1, 0, 0), uvar(2, 1, 0), xvar(1), xvar(2)]
    for _ in range(10):
        p = poly(*[(rng.randint(-3, 3), rng.choice(vars), rng.choice(vars))
                   for _ in range(3)])
        q = poly(*[(rng.randint(-3, 3), rng.choice(vars)) for _ in range(3)])
        for j in (1, 2):
            lhs = (p * q).total_derivative(j)
            rhs = p.total_derivative(j) * q + p * q.total_derivative(j)
            assert lhs == rhs


def test_total_derivatives_commute():
    p = build_F1F2()[0]
    d12 = p.total_derivative(1).total_derivative(2)
    d21 = p.total_derivative(2).total_derivative(1)
    assert d12 == d21


def test_total_derivative_of_base_variable():
    x1 = JetPolynomial.var(xvar(1))
    assert x1.total_derivative(1) == JetPolynomial.constant(1)
    assert x1.total_derivative(2).terms == {}
    u = JetPolynomial.var(uvar(3, 1, 0))
    assert u.total_derivative(2) == JetPolynomial.var(uvar(3, 1, 1))


def test_partial_derivative():
    u = uvar(1, 0, 0)
    p = poly((1, u, u), (2, u), (5,))
    d = p.partial(u)
    assert d == poly((2, u), (2,))


def test_section_jet_evaluation_order_guard():
    theta = SectionJet((Q(0), Q(0)), 1, {(1, 1, 0): Q(2)})
    with pytest.raises(ValueError):
        theta.evaluate(build_F1F2()[0])


def test_mirror_is_an_involution():
    rng = random.Random(4)
    theta = rand_jet(rng, 3, base=(Q(1), Q(2)))
    assert theta.mirror().mirror() == theta


def test_mirror_swaps_relative_invariants():
    # under (x, y) -> (y, x) the pair (F1, F2) goes to (-F2, -F1)
    rng = random.Random(6)
    F1, F2 = build_F1F2()
    for _ in range(5):
        theta = rand_jet(rng, 2)
        m = theta.mirror()
        assert m.evaluate(F1) == -theta.evaluate(F2)
        assert m.evaluate(F2) == -theta.evaluate(F1)


def test_relative_invariant_polynomials_are_second_and_third_order():
    F1, F2 = build_F1F2()
    assert F1.max_u_order() == 2 and F2.max_u_order() == 2
    assert build_F3().max_u_order() == 3
    p1, p2 = build_Psi()
    assert p1.max_u_order() == 3 and p2.max_u_order() == 3


def test_coframe_polynomial_identity():
    # F1*Psi2 - F2*Psi1 + 3*F3 expands to the zero polynomial
    F1, F2 = build_F1F2()
    Psi1, Psi2 = build_Psi()
    F3 = build_F3()
    assert (F1 * Psi2 - F2 * Psi1 + 3 * F3).terms == {}


def test_worked_second_order_values():
    # the jet with u1_(0,2) = 2 and u4 = 1 has F = (6, 0) and F3 = 648
    theta = SectionJet((Q(0), Q(0)), 3, {(1, 0, 2): Q(2), (4, 0, 0): Q(1)})
    F1, F2 = build_F1F2()
    assert theta.evaluate(F1) == 6
    assert theta.evaluate(F2) == 0
    assert theta.evaluate(build_F3()) == 648
    Psi1, Psi2 = build_Psi()
    assert theta.evaluate(Psi1) == 0
    assert theta.evaluate(Psi2) == -324


def test_deformation_velocity_is_linear_in_x_variables():
    rng = random.Random(8)
    theta = rand_jet(rng, 1)
    assignment = theta.assignment()
    for p in jetpoly.psi_polys():
        row = p.x_linear_row(assignment)
        for v in row:
            assert v[0] == "X"
