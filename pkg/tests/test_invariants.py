import random

import pytest

from odequiv.rat import Q, ZERO, ONE
from odequiv.jetpoly import SectionJet
from odequiv.expr import parse_coeff, section_jet
from odequiv.tensors import ScaledRational, TensorComp
from odequiv.invariants import (DegenerateJetError, derived2, derived3,
                                f_invariants, frame, lie_derivatives,
                                lie_derivatives_from_jet, omega2,
                                omega2_construction, omega3,
                                omega3_construction, psi_invariants,
                                scalar_invariants, _EXPONENTS, _XI_EXP)

from conftest import rand_jet


WORKED = SectionJet((Q(0), Q(0)), 3, {(1, 0, 2): Q(2), (4, 0, 0): Q(1)})


def test_worked_values_closed_form():
    f1, f2, f3 = f_invariants(WORKED)
    assert (f1, f2, f3) == (Q(6), Q(0), Q(648))
    assert psi_invariants(WORKED) == (Q(0), Q(-324))
    nu = derived3(WORKED)[2]
    assert nu == TensorComp(0, 0, 5, {(0, 0, 0): Q(648)})


def test_worked_values_geometric_construction():
    assert omega2_construction(WORKED) == omega2(WORKED)
    assert omega3_construction(WORKED) == omega3(WORKED)


def test_order_2_jet_has_no_third_invariant():
    theta = SectionJet((Q(0), Q(0)), 2, {(1, 0, 2): Q(2)})
    f1, f2, f3 = f_invariants(theta)
    assert (f1, f2) == (Q(6), Q(0)) and f3 is None
    with pytest.raises(ValueError):
        psi_invariants(theta)


def test_omega2_matches_construction_on_random_jets():
    rng = random.Random(31)
    for _ in range(10):
        theta = rand_jet(rng, 2)
        assert omega2_construction(theta) == omega2(theta)


def test_omega3_matches_construction_on_random_jets():
    rng = random.Random(32)
    for _ in range(6):
        theta = rand_jet(rng, 3)
        assert omega3_construction(theta) == omega3(theta)


def test_omega3_construction_free_parameters_cancel():
    rng = random.Random(33)
    theta = rand_jet(rng, 3)
    want = omega3(theta)
    choices = [
        {"h11_1": Q(1), "h11_2": Q(-2)},
        {"h11_1": Q(5, 3), "h11_2": Q(7, 2)},
        {"h11_1": ZERO, "h11_2": ZERO, "XY": ((Q(2), Q(1)), (Q(1), Q(1)))},
    ]
    for kw in choices:
        assert omega3_construction(theta, **kw) == want


def test_omega3_construction_mirrored_chart():
    # a jet with F1 = 0 forces the construction through the swapped chart
    theta = WORKED.mirror()
    f1, f2, _ = f_invariants(theta)
    assert f1 == 0 and f2 != 0
    assert omega3_construction(theta) == omega3(theta)


def test_degenerate_jets_are_rejected():
    flat = SectionJet((Q(0), Q(0)), 4, {})
    with pytest.raises(DegenerateJetError):
        omega3(flat)
    with pytest.raises(DegenerateJetError):
        scalar_invariants(flat)
    # F3 = 0 but (F1, F2) != 0: the frame does not exist
    theta = SectionJet((Q(0), Q(0)), 4, {(1, 0, 2): Q(2)})
    assert f_invariants(theta)[2] == 0
    with pytest.raises(DegenerateJetError):
        frame(theta)


def test_frame_components():
    rng = random.Random(34)
    theta = rand_jet(rng, 3)
    f1, f2, f3 = f_invariants(theta)
    assert f3 != 0
    psi1, psi2 = psi_invariants(theta)
    fr = frame(theta)
    assert fr.xi1 == (ScaledRational(f2, -2), ScaledRational(-f1, -2))
    assert fr.xi2 == (ScaledRational(psi2, -4), ScaledRational(-psi1, -4))


def test_derived2_contractions():
    rng = random.Random(35)
    theta = rand_jet(rng, 2)
    f1, f2, _ = f_invariants(theta)
    alpha, beta = derived2(theta)
    assert alpha == TensorComp(0, 1, 1, {(0, 1, 0): f1, (0, 0, 1): f2})
    assert beta == TensorComp(1, 0, 2, {(1, 0, 0): f2, (2, 0, 0): -f1})


def test_scalar_invariant_exponents():
    rng = random.Random(36)
    theta = rand_jet(rng, 4)
    inv = scalar_invariants(theta)
    assert len(inv) == 6
    assert tuple(v.e for v in inv) == _EXPONENTS == (-4, -2, -6, -8, -8, -10)


def test_scalar_pipeline_runs_on_many_random_jets():
    # the two internal decomposition identities are asserted per run
    rng = random.Random(37)
    for _ in range(8):
        scalar_invariants(rand_jet(rng, 4))


def test_lie_derivative_wrapper_agrees_with_jet_pipeline():
    coeffs = tuple(parse_coeff(s) for s in
                   ("x*y - 1", "y^2/3", "x + 2", "x^2*y"))
    p = (Q(1, 2), Q(-1, 3))
    theta5 = section_jet(coeffs, p, 5)
    invs, derivs, f3 = lie_derivatives_from_jet(theta5)
    flat = lie_derivatives(coeffs, p)
    assert flat == tuple(derivs[(j, k)] for j in (1, 2) for k in range(1, 7))
    assert invs == scalar_invariants(theta5.truncate(4))
    assert f3 == f_invariants(theta5.truncate(3))[2]
    for j in (1, 2):
        for k in range(1, 7):
            assert derivs[(j, k)].e in (0,) or \
                derivs[(j, k)].e == _EXPONENTS[k - 1] + _XI_EXP[j - 1]


def test_lie_derivatives_vanish_for_homogeneous_equation():
    # coefficients c_i / y give an equation preserved by x-translations
    # and the joint scaling, so the invariants are constant and every
    # frame derivative vanishes
    coeffs = tuple(parse_coeff(s) for s in ("1/y", "2/y", "-1/y", "1/y"))
    for p in ((Q(1), Q(2)), (Q(-1), Q(1)), (Q(1, 3), Q(2, 5))):
        for d in lie_derivatives(coeffs, p):
            assert d.is_zero()


def test_scaled_rational_fifth_power_key():
    f3 = Q(32)
    a = ScaledRational(Q(3), -2)
    assert a.fifth_power_key(f3) == Q(243) / Q(1024)
    assert ScaledRational(ZERO, 7) == ScaledRational(ZERO, 0)
    with pytest.raises(ValueError):
        ScaledRational(ONE, 1) + ScaledRational(ONE, 2)
