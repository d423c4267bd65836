"""Isotropy algebras, A-spaces, prolongations, Spencer operators, and
orbit classification.

All subspaces live in a fixed ambient coordinate system of vector field
jet unknowns X^i_(a,b), ordered globally (component index ascending,
then total order ascending, then a descending) so reduced echelon bases
are canonical and comparable across runs.
"""

from .rat import Q, ZERO, ONE
from . import jetpoly, linalg
from .jetpoly import Xvar, SectionJet
from .vfjet import VFieldJet


def x_vars(lo, hi):
    """The jet unknowns X^i_(a,b) with lo <= a+b <= hi in canonical
    order."""
    out = []
    for i in (1, 2):
        for total in range(lo, hi + 1):
            for a in range(total, -1, -1):
                out.append(Xvar(i, a, total - a))
    return tuple(out)


class LinearSubspace:
    """A subspace of a fixed ambient space, stored as the canonical
    reduced echelon basis (so equal subspaces compare equal
    coefficientwise)."""

    __slots__ = ("vars", "basis")

    def __init__(self, vars, basis, reduce=True):
        self.vars = tuple(vars)
        if reduce:
            red, _ = linalg.rref(basis)
            basis = red
        self.basis = tuple(tuple(r) for r in basis)

    @classmethod
    def from_system(cls, vars, rows):
        """Solution space of (rows) v = 0.  The standard free-variable
        basis is already canonical (it is determined by the reduced form
        of the system rows), so no second reduction is run; this also
        keeps the construction valid over duals whose value parts vanish
        in some solution coordinate."""
        null = linalg.nullspace(rows, len(vars))
        return cls(vars, null, reduce=False)

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (isinstance(other, LinearSubspace) and self.vars == other.vars
                and self.basis == other.basis)

    def __repr__(self):
        return "LinearSubspace(dim=%d of %d)" % (self.dim, len(self.vars))

    def contains(self, vec):
        rows = [list(b) for b in self.basis] + [list(vec)]
        try:
            return linalg.rank(rows) == self.dim
        except linalg.PivotError:
            return False

    def annihilator_rows(self):
        return linalg.annihilator(self.basis, len(self.vars))

    def coords(self, vec_map):
        """Dense coordinate vector from a sparse {var: value} map."""
        return [vec_map.get(v, ZERO) for v in self.vars]


def _system_rows(theta, k, vars):
    assignment = theta.assignment()
    rows = []
    for total in range(k + 1):
        for m in range(total, -1, -1):
            n = total - m
            for i in (1, 2, 3, 4):
                row_map = jetpoly.d_sigma_psi(i, m, n).x_linear_row(assignment)
                rows.append([row_map.get(v, ZERO) for v in vars])
    return rows


def isotropy_algebra(theta, k):
    """g at the given k-jet: vector field (k+2)-jets with vanishing
    value whose prolongation is zero at the jet.  Unknowns X^i_(a,b)
    with 1 <= a+b <= k+2."""
    if theta.order < k:
        raise ValueError("jet order %d below k=%d" % (theta.order, k))
    vars = x_vars(1, k + 2)
    rows = _system_rows(theta, k, vars)
    return LinearSubspace.from_system(vars, rows)


def a_space(theta, k):
    """A at the given (k+1)-jet: vector field (k+2)-jets tangent to the
    section through the jet.  Unknowns X^i_(a,b) with 0 <= a+b <=
    k+2."""
    if theta.order < k + 1:
        raise ValueError("jet order %d below k+1=%d" % (theta.order, k + 1))
    vars = x_vars(0, k + 2)
    rows = _system_rows(theta, k, vars)
    return LinearSubspace.from_system(vars, rows)


def subspace_to_vfjets(sub, base, order):
    """Interpret basis vectors as VFieldJets of the given order."""
    out = []
    for b in sub.basis:
        comps = {}
        for v, val in zip(sub.vars, b):
            if val:
                comps[(v[1], v[2], v[3])] = val
        out.append(VFieldJet(base, order, comps))
    return out


def vfjet_to_vector(jet, vars):
    return [jet.value(v[1], v[2], v[3]) for v in vars]


def graded_piece(sub, r):
    """Graded piece at level r: intersect with the vanishing-below-r
    condition, project to the order-r components."""
    low = [idx for idx, v in enumerate(sub.vars) if v[2] + v[3] < r]
    level = [idx for idx, v in enumerate(sub.vars) if v[2] + v[3] == r]
    if not sub.basis:
        return LinearSubspace([sub.vars[i] for i in level], [])
    # coefficients c with sum c_i basis_i vanishing on the low coords
    rows = [[b[idx] for b in sub.basis] for idx in low]
    if rows:
        coeffs = linalg.nullspace(rows, len(sub.basis))
    else:
        coeffs = [[ONE if i == j else ZERO for j in range(len(sub.basis))]
                  for i in range(len(sub.basis))]
    vecs = []
    for c in coeffs:
        vec = []
        for idx in level:
            s = ZERO
            for ci, b in zip(c, sub.basis):
                if ci and b[idx]:
                    s = s + ci * b[idx]
            vec.append(s)
        vecs.append(vec)
    return LinearSubspace([sub.vars[i] for i in level], vecs)


def prolong_subspace(g):
    """First prolongation of a subspace of the order-k symbol space: all
    order-(k+1) symbols both of whose partial contractions with the
    base directions land in g."""
    levels = {v[2] + v[3] for v in g.vars}
    if len(levels) != 1:
        raise ValueError("subspace is not presented at a single symbol level")
    k = levels.pop()
    vars1 = [v for v in x_vars(k + 1, k + 1)]
    ann = g.annihilator_rows()
    rows = []
    for a in ann:
        for j in (1, 2):
            row = []
            for v in vars1:
                i, c, d = v[1], v[2], v[3]
                src = (c - 1, d) if j == 1 else (c, d - 1)
                if src[0] < 0 or src[1] < 0:
                    row.append(ZERO)
                else:
                    idx = g.vars.index(Xvar(i, src[0], src[1]))
                    row.append(a[idx])
            rows.append(row)
    if not rows:
        rows = [[ZERO] * len(vars1)]
    return LinearSubspace.from_system(vars1, rows)


def spencer_operator(xi, l):
    """Spencer differential on symbol forms.

    Level-k symbol vectors are sparse maps {(i, a, b): value} with
    a + b = k.  For l = 0 the result is the pair of its two partial
    contractions; for l = 1 the input is such a pair and the result is
    the alternation, the coefficient of dx^1^dx^2.
    """
    def shift(v, j):
        # contraction lowers the degree in direction j
        out = {}
        for (i, a, b), val in v.items():
            if j == 1 and a > 0:
                out[(i, a - 1, b)] = out.get((i, a - 1, b), ZERO) + val
            elif j == 2 and b > 0:
                out[(i, a, b - 1)] = out.get((i, a, b - 1), ZERO) + val
        return out

    if l == 0:
        return (shift(xi, 1), shift(xi, 2))
    if l == 1:
        x1, x2 = xi
        s = shift(x2, 1)
        t = shift(x1, 2)
        out = dict(s)
        for key, val in t.items():
            out[key] = out.get(key, ZERO) - val
        return {k: v for k, v in out.items() if v}
    raise ValueError("l must be 0 or 1")


class OrbitLabel:
    """Orbit of a 2- or 3-jet under the lifted action, decided by the
    relative invariants."""

    __slots__ = ("name", "reason")

    ORB2_0 = "Orb2_0"
    ORB2_2 = "Orb2_2"
    ORB3_0 = "Orb3_0"
    ORB3_DEGENERATE = "Orb3_degenerate"

    def __init__(self, name, reason=None):
        self.name = name
        self.reason = reason

    def __eq__(self, other):
        return (isinstance(other, OrbitLabel) and self.name == other.name
                and self.reason == other.reason)

    def __repr__(self):
        if self.reason:
            return "%s(%s)" % (self.name, self.reason)
        return self.name


def classify_orbit(theta):
    """Classify a 2-jet (linearizable stratum vs generic) or a 3-jet
    (generic open orbit vs degenerate) by evaluating the relative
    invariants; ranks are only a cross-check, not the decision
    procedure."""
    if theta.order not in (2, 3):
        raise ValueError("classification needs a jet of order 2 or 3")
    F1p, F2p = jetpoly.build_F1F2()
    f1 = theta.evaluate(F1p)
    f2 = theta.evaluate(F2p)
    if theta.order == 2:
        if f1 or f2:
            return OrbitLabel(OrbitLabel.ORB2_0)
        return OrbitLabel(OrbitLabel.ORB2_2)
    f3 = theta.evaluate(jetpoly.build_F3())
    if f3:
        return OrbitLabel(OrbitLabel.ORB3_0)
    if f1 or f2:
        return OrbitLabel(OrbitLabel.ORB3_DEGENERATE, "F3_zero_F_nonzero")
    return OrbitLabel(OrbitLabel.ORB3_DEGENERATE, "preimage_of_Orb2_2")
