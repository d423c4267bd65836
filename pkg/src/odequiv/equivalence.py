"""Necessary-condition equivalence checking for pairs of equations.

Two equations can only be point-equivalent if their scalar invariants
match: depending on whether the invariants are constant, generated by a
single function, or contain two independent functions, the matching
condition compares values at the marked points and sampled graphs of
the dependency relations over a grid.  Everything here is a necessary
condition; no equivalence map is constructed and no sufficiency is
claimed.
"""

from .rat import Q, ZERO, ONE, rat
from .dual import Dual, value, partial
from .jetpoly import SectionJet
from . import expr as ex
from . import transform as tr
from . import invariants as inv
from .tensors import ScaledRational


class NonRegularPointError(ValueError):
    """A marked or sampled point is outside the generic stratum."""


# the 18 scalar functions compared pointwise: the six invariants and
# their twelve frame derivatives, in a fixed deterministic order
TAGS = tuple([("I", k) for k in range(1, 7)]
             + [("xi", j, k) for j in (1, 2) for k in range(1, 7)])


def tag_name(tag):
    if tag[0] == "I":
        return "I%d" % tag[1]
    return "xi%d(I%d)" % (tag[1], tag[2])


class Grid:
    """Rectangular rational sample grid: corners and point counts."""

    __slots__ = ("x0", "y0", "x1", "y1", "nx", "ny")

    def __init__(self, x0, y0, x1, y1, nx, ny):
        if nx < 1 or ny < 1:
            raise ValueError("grid counts must be positive")
        self.x0, self.y0 = rat(x0), rat(y0)
        self.x1, self.y1 = rat(x1), rat(y1)
        self.nx, self.ny = nx, ny

    @classmethod
    def parse(cls, spec):
        """Parse 'x0,y0:x1,y1:nx,ny' with rational corners."""
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError("grid spec must be 'x0,y0:x1,y1:nx,ny'")
        try:
            x0, y0 = (Q(s) for s in parts[0].split(","))
            x1, y1 = (Q(s) for s in parts[1].split(","))
            nx, ny = (int(s) for s in parts[2].split(","))
        except (ValueError, ZeroDivisionError) as err:
            raise ValueError("bad grid spec %r: %s" % (spec, err))
        return cls(x0, y0, x1, y1, nx, ny)

    def points(self):
        xs = ([self.x0] if self.nx == 1 else
              [self.x0 + (self.x1 - self.x0) * Q(i, self.nx - 1)
               for i in range(self.nx)])
        ys = ([self.y0] if self.ny == 1 else
              [self.y0 + (self.y1 - self.y0) * Q(j, self.ny - 1)
               for j in range(self.ny)])
        return [(x, y) for x in xs for y in ys]

    def __repr__(self):
        return "Grid(%s,%s:%s,%s:%d,%d)" % (self.x0, self.y0, self.x1,
                                            self.y1, self.nx, self.ny)


class ExprEquation:
    """An equation given by its four coefficient expressions."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(ex.parse_coeff(c) if isinstance(c, str) else c
                            for c in coeffs)
        if len(self.coeffs) != 4:
            raise ValueError("an equation needs exactly four coefficients")

    def jet(self, p, k):
        return ex.section_jet(self.coeffs, p, k)


class PushforwardEquation:
    """The image of an equation under a point map, presented in the
    source chart: jets are sampled at p and delivered at f(p), so no
    global inverse of the map is ever needed."""

    __slots__ = ("base_eq", "pmap")

    def __init__(self, base_eq, pmap):
        self.base_eq = as_equation(base_eq)
        self.pmap = pmap

    def jet(self, p, k):
        fjet = self.pmap.jet(p, k + 2)
        return tr.lift_section_jet(fjet, self.base_eq.jet(p, k))


def as_equation(obj):
    if hasattr(obj, "jet"):
        return obj
    return ExprEquation(obj)


def _regular_guard(f3, p, where):
    if not f3:
        raise NonRegularPointError(
            "F3 vanishes at %s point (%s, %s)" % (where, p[0], p[1]))


def _sample(eq, p):
    """The 18 comparison keys at a sample point: fifth powers of the
    invariants and frame derivatives, exact rationals."""
    try:
        theta5 = eq.jet(p, 5)
        invs, derivs, f3 = inv.lie_derivatives_from_jet(theta5)
    except (ex.EvalError, tr.SingularMapError, inv.DegenerateJetError) as err:
        raise NonRegularPointError(
            "equation degenerate at sample point (%s, %s): %s"
            % (p[0], p[1], err))
    _regular_guard(f3, p, "sample")
    keys = {}
    for k in range(1, 7):
        keys[("I", k)] = invs[k - 1].fifth_power_key(f3)
    for j in (1, 2):
        for k in range(1, 7):
            keys[("xi", j, k)] = derivs[(j, k)].fifth_power_key(f3)
    return keys


def _marked_data(eq, p):
    """Values, comparison keys and frame gradients of the 18 functions
    at the marked point, via a dual-number pass seeded on the two base
    directions."""
    try:
        theta6 = eq.jet(p, 6)
    except (ex.EvalError, tr.SingularMapError) as err:
        raise NonRegularPointError(
            "equation undefined at marked point (%s, %s): %s"
            % (p[0], p[1], err))
    return _marked_from_jet(theta6, p)


def _marked_from_jet(theta6, p):
    dkeys = (("dir", 1), ("dir", 2))
    u = {}
    for i in (1, 2, 3, 4):
        for m in range(6):
            for n in range(6 - m):
                grad = {}
                g1 = theta6.value(i, m + 1, n)
                g2 = theta6.value(i, m, n + 1)
                if g1:
                    grad[dkeys[0]] = g1
                if g2:
                    grad[dkeys[1]] = g2
                val = theta6.value(i, m, n)
                if val or grad:
                    u[(i, m, n)] = Dual(val, grad)
    theta5d = SectionJet(theta6.base, 5, u)
    try:
        invs_d, derivs_d, f3_d = inv.lie_derivatives_from_jet(theta5d)
    except inv.DegenerateJetError as err:
        raise NonRegularPointError(
            "equation degenerate at marked point (%s, %s): %s"
            % (p[0], p[1], err))
    f3 = value(f3_d)
    _regular_guard(f3, p, "marked")
    f1, f2, _ = inv.f_invariants(theta6)
    psi1, psi2 = inv.psi_invariants(theta6)
    vhat = ((f2, -f1), (psi2, -psi1))
    df3 = (partial(f3_d, dkeys[0]), partial(f3_d, dkeys[1]))
    inv5 = 1 / (5 * f3)
    scalars = {}
    for k in range(1, 7):
        scalars[("I", k)] = invs_d[k - 1]
    for j in (1, 2):
        for k in range(1, 7):
            scalars[("xi", j, k)] = derivs_d[(j, k)]
    vals, keys, grads = {}, {}, {}
    for tag in TAGS:
        s = scalars[tag]
        r_d, e = s.r, s.e
        r = value(r_d)
        vals[tag] = ScaledRational(r, e)
        keys[tag] = vals[tag].fifth_power_key(f3)
        g = []
        for i in (1, 2):
            total = ZERO
            for a in (1, 2):
                total = total + vhat[i - 1][a - 1] * (
                    partial(r_d, dkeys[a - 1]) + r * e * df3[a - 1] * inv5)
            g.append(ScaledRational(total, e + inv._XI_EXP[i - 1]))
        grads[tag] = tuple(g)
    return vals, keys, grads, f3


class InvariantSignature:
    """The comparison data of one equation at a marked point: the case
    tag, the generator tags, exact values and gradients of the 18
    functions at the point, and their sampled graph over the grid."""

    CONSTANT = "ConstantInvariants"
    ONE = "OneGenerator"
    TWO = "TwoIndependent"

    __slots__ = ("case", "generators", "values", "keys", "grads", "f3",
                 "samples")

    def __init__(self, case, generators, values, keys, grads, f3, samples):
        self.case = case
        self.generators = generators
        self.values = values
        self.keys = keys
        self.grads = grads
        self.f3 = f3
        self.samples = samples

    def __repr__(self):
        gens = ",".join(tag_name(t) for t in self.generators)
        return "InvariantSignature(%s%s)" % (
            self.case, " [%s]" % gens if gens else "")


def _grad_nonzero(g):
    return bool(g[0].r) or bool(g[1].r)


def _grad_det(g1, g2):
    return (g1[0] * g2[1] - g1[1] * g2[0]).r


def signature(eq, p, grid):
    """Compute the invariant signature of an equation at a marked
    point, sampling the dependency graphs over the grid."""
    eq = as_equation(eq)
    p = (rat(p[0]), rat(p[1]))
    if isinstance(grid, str):
        grid = Grid.parse(grid)
    pts = grid.points()
    if not pts:
        raise ValueError("empty grid")
    vals, keys, grads, f3 = _marked_data(eq, p)
    samples = [_sample(eq, q) for q in pts]
    # trichotomy: constant over the grid / two independent functions at
    # the marked point / a single generator
    constant = all(s[("I", k)] == keys[("I", k)]
                   for s in samples for k in range(1, 7))
    if constant:
        return InvariantSignature(InvariantSignature.CONSTANT, (),
                                  vals, keys, grads, f3, samples)
    nonzero = []
    for tag in TAGS:
        if _grad_nonzero(grads[tag]):
            for prev in nonzero:
                if _grad_det(grads[prev], grads[tag]):
                    return InvariantSignature(
                        InvariantSignature.TWO, (prev, tag),
                        vals, keys, grads, f3, samples)
            nonzero.append(tag)
    gens = (nonzero[0],) if nonzero else ()
    return InvariantSignature(InvariantSignature.ONE, gens,
                              vals, keys, grads, f3, samples)


def classify_regular_case(eq, p, grid):
    """Case tag of the trichotomy at a regular marked point."""
    return signature(eq, p, grid).case


PASS = "NecessaryConditionsPass"
FAIL = "NecessaryConditionsFail"
CASE_MISMATCH = "CaseMismatch"

CASE2_NOTE = ("case-2 marked-point condition compares the generator at "
              "the first equation's marked point with the generator at "
              "the second equation's marked point")


class EquivalenceReport:
    """Outcome of the necessary-condition comparison of two signatures."""

    __slots__ = ("verdict", "reason", "flags", "notes", "sig1", "sig2")

    def __init__(self, verdict, reason, flags, notes, sig1, sig2):
        self.verdict = verdict
        self.reason = reason
        self.flags = tuple(flags)
        self.notes = tuple(notes)
        self.sig1 = sig1
        self.sig2 = sig2

    @property
    def passed(self):
        return self.verdict == PASS

    @property
    def inconclusive(self):
        return "inconclusive-grid" in self.flags

    def __repr__(self):
        tail = "" if not self.reason else ": %s" % self.reason
        return "EquivalenceReport(%s%s)" % (self.verdict, tail)


def _graph_match(sig1, sig2, gens):
    """Spot-check the dependency relations: wherever the two equations
    were sampled at exactly equal generator values, all 18 functions
    must agree.  The marked points count as samples."""
    def table(sig):
        out = {}
        for s in list(sig.samples) + [sig.keys]:
            jval = tuple(s[g] for g in gens)
            out[jval] = tuple(s[t] for t in TAGS)
        return out

    t1, t2 = table(sig1), table(sig2)
    common = sorted(set(t1) & set(t2))
    if not common:
        return None, False
    for jval in common:
        if t1[jval] != t2[jval]:
            return ("dependency relations disagree at generator value "
                    "%s" % (jval,)), True
    return None, True


def check_equivalence(eq1, p1, eq2, p2, grid):
    """Check the necessary conditions for point equivalence of two
    equations at marked points, sampling over a shared grid spec."""
    if isinstance(grid, str):
        grid = Grid.parse(grid)
    sig1 = signature(eq1, p1, grid)
    sig2 = signature(eq2, p2, grid)
    flags, notes = [], []
    if sig1.case != sig2.case:
        return EquivalenceReport(
            CASE_MISMATCH, "case %s vs case %s" % (sig1.case, sig2.case),
            flags, notes, sig1, sig2)
    if sig1.case == InvariantSignature.CONSTANT:
        for k in range(1, 7):
            if sig1.keys[("I", k)] != sig2.keys[("I", k)]:
                return EquivalenceReport(
                    FAIL, "constant invariant I%d differs" % k,
                    flags, notes, sig1, sig2)
        return EquivalenceReport(PASS, None, flags, notes, sig1, sig2)
    if sig1.generators != sig2.generators:
        return EquivalenceReport(
            CASE_MISMATCH, "generator tags differ: %s vs %s"
            % ([tag_name(t) for t in sig1.generators],
               [tag_name(t) for t in sig2.generators]),
            flags, notes, sig1, sig2)
    if sig1.case == InvariantSignature.ONE:
        notes.append(CASE2_NOTE)
    gens = sig1.generators
    for g in gens:
        if sig1.keys[g] != sig2.keys[g]:
            return EquivalenceReport(
                FAIL, "generator %s differs at the marked points"
                % tag_name(g), flags, notes, sig1, sig2)
    if gens:
        reason, conclusive = _graph_match(sig1, sig2, gens)
        if reason:
            return EquivalenceReport(FAIL, reason, flags, notes, sig1, sig2)
        if not conclusive:
            flags.append("inconclusive-grid")
    else:
        # no nonzero gradient found yet the grid is not constant: the
        # marked point carries no usable generator
        flags.append("inconclusive-grid")
    return EquivalenceReport(PASS, None, flags, notes, sig1, sig2)
