import random

import pytest

from odequiv.rat import Q, ZERO, ONE
from odequiv import jetpoly, linalg
from odequiv.jetpoly import SectionJet
from odequiv.isotropy import (LinearSubspace, OrbitLabel, a_space,
                              classify_orbit, graded_piece, isotropy_algebra,
                              prolong_subspace, spencer_operator, x_vars)

from conftest import rand_jet


def _level_keys(r):
    return [(v[1], v[2], v[3]) for v in x_vars(r, r)]


def _dense(sym, keys):
    return [sym.get(k, ZERO) for k in keys]


def test_isotropy_dimension_table():
    # 6, 6, then 4 or 0 at higher order depending on the invariants
    rng = random.Random(21)
    F1, F2 = jetpoly.build_F1F2()
    F3 = jetpoly.build_F3()
    for _ in range(10):
        theta = rand_jet(rng, 3)
        assert isotropy_algebra(theta.truncate(0), 0).dim == 6
        assert isotropy_algebra(theta.truncate(1), 1).dim == 6
        d2 = isotropy_algebra(theta.truncate(2), 2).dim
        if theta.evaluate(F1) or theta.evaluate(F2):
            assert d2 == 4
        else:
            assert d2 == 6
        d3 = isotropy_algebra(theta, 3).dim
        if theta.evaluate(F3):
            assert d3 == 0


def test_flat_jet_keeps_the_full_algebra():
    flat2 = SectionJet((Q(0), Q(0)), 2, {})
    assert isotropy_algebra(flat2, 2).dim == 6
    flat3 = SectionJet((Q(0), Q(0)), 3, {})
    assert isotropy_algebra(flat3, 3).dim == 6


def test_a_space_dimension():
    rng = random.Random(22)
    for _ in range(5):
        theta = rand_jet(rng, 4)
        assert a_space(theta, 3).dim == 2


def test_graded_piece_g2_and_its_prolongation():
    rng = random.Random(23)
    for _ in range(5):
        theta0 = rand_jet(rng, 0)
        g2 = graded_piece(isotropy_algebra(theta0, 0), 2)
        assert g2.dim == 2
        assert prolong_subspace(g2).dim == 0


def test_graded_piece_g1_prolongation_at_generic_2jet():
    rng = random.Random(24)
    F1, F2 = jetpoly.build_F1F2()
    for _ in range(5):
        theta = rand_jet(rng, 2)
        assert theta.evaluate(F1) or theta.evaluate(F2)
        g1 = graded_piece(isotropy_algebra(theta, 2), 1)
        assert g1.dim == 2
        assert prolong_subspace(g1).dim == 2


def test_spencer_operator_squares_to_zero():
    for key in _level_keys(2):
        pair = spencer_operator({key: ONE}, 0)
        assert spencer_operator(pair, 1) == {}


def test_spencer_complex_on_symbols_is_exact():
    # 0 -> level-2 -> level-1 pairs -> level-0 -> 0 with dims 6, 8, 2
    lvl2, lvl1, lvl0 = _level_keys(2), _level_keys(1), _level_keys(0)
    rows20 = []
    for key in lvl2:
        x1, x2 = spencer_operator({key: ONE}, 0)
        rows20.append(_dense(x1, lvl1) + _dense(x2, lvl1))
    rows11 = []
    for half in range(2):
        for key in lvl1:
            pair = ({key: ONE}, {}) if half == 0 else ({}, {key: ONE})
            rows11.append(_dense(spencer_operator(pair, 1), lvl0))
    assert len(rows20) == 6 and len(rows11) == 8 and len(lvl0) == 2
    assert linalg.rank(rows20) == 6        # injective
    assert linalg.rank(rows11) == 2        # surjective
    # image of the first map has the full kernel dimension of the second
    assert linalg.rank(rows20) + linalg.rank(rows11) == 8


def test_spencer_map_on_g2_pairs_is_an_isomorphism():
    rng = random.Random(25)
    theta0 = rand_jet(rng, 0)
    g2 = graded_piece(isotropy_algebra(theta0, 0), 2)
    lvl1 = _level_keys(1)
    rows = []
    for b in g2.basis:
        sym = {(v[1], v[2], v[3]): val
               for v, val in zip(g2.vars, b) if val}
        for slot in range(2):
            pair = (sym, {}) if slot == 0 else ({}, sym)
            rows.append(_dense(spencer_operator(pair, 1), lvl1))
    assert len(rows) == 4 and len(lvl1) == 4
    assert linalg.rank(rows) == 4


def test_linear_subspace_membership_and_annihilator():
    vars = x_vars(1, 1)
    sub = LinearSubspace(vars, [[ONE, ZERO, ZERO, ZERO],
                                [ZERO, ONE, ZERO, ONE]])
    assert sub.contains([Q(2), Q(3), ZERO, Q(3)])
    assert not sub.contains([ZERO, ZERO, ONE, ZERO])
    for a in sub.annihilator_rows():
        for b in sub.basis:
            assert not sum((x * y for x, y in zip(a, b)), ZERO)


def test_classify_orbit_examples():
    flat = SectionJet((Q(0), Q(0)), 2, {})
    assert classify_orbit(flat).name == OrbitLabel.ORB2_2
    generic2 = SectionJet((Q(0), Q(0)), 2, {(1, 0, 2): Q(2)})
    assert classify_orbit(generic2).name == OrbitLabel.ORB2_0
    generic3 = SectionJet((Q(0), Q(0)), 3,
                          {(1, 0, 2): Q(2), (4, 0, 0): Q(1)})
    assert classify_orbit(generic3).name == OrbitLabel.ORB3_0
    flat3 = SectionJet((Q(0), Q(0)), 3, {})
    lab = classify_orbit(flat3)
    assert lab.name == OrbitLabel.ORB3_DEGENERATE
    with pytest.raises(ValueError):
        classify_orbit(SectionJet((Q(0), Q(0)), 1, {}))


def test_isotropy_projection_between_orders_is_injective():
    # the order-3 unknowns of every g_theta1 element are forced by the
    # lower-order ones, so dropping them loses nothing
    rng = random.Random(26)
    theta = rand_jet(rng, 1)
    g = isotropy_algebra(theta, 1)
    low = [idx for idx, v in enumerate(g.vars) if v[2] + v[3] <= 2]
    proj = [[b[i] for i in low] for b in g.basis]
    assert linalg.rank(proj) == g.dim
