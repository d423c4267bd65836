import random

import pytest

from odequiv.rat import Q
from odequiv.jetpoly import SectionJet


def rand_q(rng, lo=-4, hi=4, den=1):
    """Small random rational."""
    if den > 1:
        return Q(rng.randint(lo, hi), rng.randint(1, den))
    return Q(rng.randint(lo, hi))


def rand_jet(rng, order, base=(Q(0), Q(0)), density=1.0, lo=-4, hi=4):
    """Random rational section jet with dense small entries."""
    u = {}
    for i in (1, 2, 3, 4):
        for m in range(order + 1):
            for n in range(order + 1 - m):
                if density >= 1.0 or rng.random() < density:
                    u[(i, m, n)] = rand_q(rng, lo, hi)
    return SectionJet(base, order, u)


def rand_poly_expr(rng, degree=2, terms=3):
    """Random polynomial expression string in x, y."""
    parts = []
    for _ in range(terms):
        c = rng.randint(-3, 3)
        if not c:
            continue
        dx = rng.randint(0, degree)
        dy = rng.randint(0, degree - dx)
        mono = "*".join(["%d" % c] + ["x"] * dx + ["y"] * dy)
        parts.append(mono)
    return " + ".join(parts) if parts else "0"


@pytest.fixture
def rng():
    return random.Random(20240824)
