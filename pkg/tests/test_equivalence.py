import pytest

from odequiv.rat import Q
from odequiv.expr import parse_coeff
from odequiv.transform import PointMap
from odequiv.equivalence import (CASE_MISMATCH, FAIL, PASS, ExprEquation,
                                 Grid, InvariantSignature,
                                 NonRegularPointError, PushforwardEquation,
                                 check_equivalence, classify_regular_case,
                                 signature, tag_name, TAGS)


GENERIC = ("x*y - 1", "y^2/3", "x + 2", "x^2*y")
X_ONLY = ("x", "x", "1", "x^2+1")
HOMOGENEOUS = ("1/y", "2/y", "-1/y", "1/y")

P = (Q(1, 2), Q(-1, 3))
GRID = "0,0:1,1:2,2"


def _push(coeffs, f1, f2):
    return PushforwardEquation(ExprEquation(coeffs),
                               PointMap(parse_coeff(f1), parse_coeff(f2)))


def test_grid_parsing_and_lattice():
    g = Grid.parse("0,0:1,2:3,2")
    pts = g.points()
    assert len(pts) == 6
    assert (Q(0), Q(0)) in pts and (Q(1), Q(2)) in pts
    assert (Q(1, 2), Q(2)) in pts
    with pytest.raises(ValueError):
        Grid.parse("0,0:1,1")
    with pytest.raises(ValueError):
        Grid.parse("0,0:1,1:0,2").points if False else Grid(0, 0, 1, 1, 0, 2)


def test_case_trichotomy_fixtures():
    assert classify_regular_case(HOMOGENEOUS, (Q(1), Q(2)), "1,1:2,2:2,2") \
        == InvariantSignature.CONSTANT
    assert classify_regular_case(X_ONLY, P, GRID) == InvariantSignature.ONE
    assert classify_regular_case(GENERIC, P, GRID) == InvariantSignature.TWO


def test_tag_order_and_names():
    assert len(TAGS) == 18
    assert tag_name(TAGS[0]) == "I1"
    assert tag_name(TAGS[6]) == "xi1(I1)"
    assert tag_name(TAGS[-1]) == "xi2(I6)"


def test_pushforward_of_an_equation_passes():
    pushed = _push(GENERIC, "x + y^2/10", "y + x^2/10")
    report = check_equivalence(GENERIC, P, pushed, P, GRID)
    assert report.verdict == PASS
    assert not report.inconclusive
    assert report.sig1.case == report.sig2.case == InvariantSignature.TWO


def test_check_is_symmetric():
    pushed = _push(GENERIC, "x + y^2/10", "y + x^2/10")
    fwd = check_equivalence(GENERIC, P, pushed, P, GRID)
    bwd = check_equivalence(pushed, P, GENERIC, P, GRID)
    assert fwd.verdict == bwd.verdict == PASS


def test_perturbed_equation_fails():
    perturbed = ("x*y - 1 + 5/7*x^3",) + GENERIC[1:]
    report = check_equivalence(GENERIC, P, perturbed, P, GRID)
    assert report.verdict == FAIL
    assert "generator" in report.reason or "dependency" in report.reason


def test_case_mismatch_is_reported():
    report = check_equivalence(GENERIC, P, X_ONLY, P, GRID)
    assert report.verdict == CASE_MISMATCH
    assert not report.passed


def test_constant_case_compares_values():
    same = check_equivalence(HOMOGENEOUS, (Q(1), Q(2)), HOMOGENEOUS,
                             (Q(3), Q(5)), "1,1:2,2:2,2")
    assert same.verdict == PASS
    other = ("2/y",) + HOMOGENEOUS[1:]
    diff = check_equivalence(HOMOGENEOUS, (Q(1), Q(2)), other,
                             (Q(1), Q(2)), "1,1:2,2:2,2")
    assert diff.verdict == FAIL and "constant invariant" in diff.reason


def test_case_is_preserved_by_transformation():
    pushed = _push(X_ONLY, "x + y^2/10", "y + x^2/10")
    assert classify_regular_case(pushed, P, GRID) == InvariantSignature.ONE


def test_one_generator_note_is_attached():
    pushed = _push(X_ONLY, "x + y^2/10", "y + x^2/10")
    report = check_equivalence(X_ONLY, P, pushed, P, GRID)
    assert report.verdict == PASS
    assert any("marked point" in n for n in report.notes)


def test_non_regular_points_are_rejected():
    flat = ("0", "0", "0", "0")
    with pytest.raises(NonRegularPointError):
        signature(flat, P, GRID)
    # a pole of a coefficient inside the grid is also non-regular
    with pytest.raises(NonRegularPointError):
        signature(("1/x", "0", "1", "x"), P, GRID)


def test_sample_keys_are_transformation_invariant():
    pushed = _push(GENERIC, "x + y^2/10", "y + x^2/10")
    s1 = signature(GENERIC, P, GRID)
    s2 = signature(pushed, P, GRID)
    assert s1.keys == s2.keys
    assert s1.samples == s2.samples
