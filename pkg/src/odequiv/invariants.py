"""Invariant quantities of a section jet: the relative invariants, the
obstruction tensors, the invariant frame, the scalar invariants I^1..I^6
and their Lie derivatives along the frame.

Every function here is generic in the scalar ring: running the pipeline
over Duals yields exact first-order expansions of all outputs, which is
how Lie derivatives and gradient ranks are obtained.
"""

from .rat import Q, ZERO, ONE
from . import jetpoly, isotropy, linalg
from .jetpoly import SectionJet
from .vfjet import VFieldJet, bracket
from .tensors import TensorComp, ScaledRational, Frame, SWAP
from .dual import Dual, value, partial, is_unit


class DegenerateJetError(ArithmeticError):
    """A precondition on the relative invariants fails at the jet."""


_dcache = {}


def _dpolys():
    if not _dcache:
        F1, F2 = jetpoly.build_F1F2()
        _dcache["d"] = (F1.total_derivative(1), F1.total_derivative(2),
                        F2.total_derivative(1), F2.total_derivative(2))
    return _dcache["d"]


def _f12(theta):
    F1p, F2p = jetpoly.build_F1F2()
    return theta.evaluate(F1p), theta.evaluate(F2p)


def _df_values(theta):
    d1f1, d2f1, d1f2, d2f2 = _dpolys()
    return (theta.evaluate(d1f1), theta.evaluate(d2f1),
            theta.evaluate(d1f2), theta.evaluate(d2f2))


def _f3_from_parts(theta, f1, f2, dvals):
    d1f1, d2f1, d1f2, d2f2 = dvals
    u = [theta.value(i, 0, 0) for i in (1, 2, 3, 4)]
    return (f2 * (f1 * d1f2 - f2 * d1f1) - f1 * (f1 * d2f2 - f2 * d2f1)
            + f1 * f1 * f1 * u[3] - f1 * f1 * f2 * u[2]
            + f1 * f2 * f2 * u[1] - f2 * f2 * f2 * u[0])


def _psi_from_parts(theta, f1, f2, dvals):
    d1f1, d2f1, d1f2, d2f2 = dvals
    u = [theta.value(i, 0, 0) for i in (1, 2, 3, 4)]
    psi1 = (-(f1 * f1) * u[2] + 2 * (f1 * f2) * u[1] - 3 * (f2 * f2) * u[0]
            - f1 * d2f1 + 4 * (f1 * d1f2) - 3 * (d1f1 * f2))
    psi2 = (-3 * (f1 * f1) * u[3] + 2 * (f1 * f2) * u[2] - (f2 * f2) * u[1]
            + 3 * (f1 * d2f2) - 4 * (d2f1 * f2) + f2 * d1f2)
    return psi1, psi2


def f_invariants(theta):
    """(F1, F2, F3) at the jet; F3 is None when only order 2 is
    available."""
    if theta.order < 2:
        raise ValueError("relative invariants need a jet of order >= 2")
    f1, f2 = _f12(theta)
    if theta.order < 3:
        return f1, f2, None
    return f1, f2, _f3_from_parts(theta, f1, f2, _df_values(theta))


def psi_invariants(theta):
    """(Psi1, Psi2) at an order >= 3 jet."""
    if theta.order < 3:
        raise ValueError("Psi invariants need a jet of order >= 3")
    f1, f2 = _f12(theta)
    return _psi_from_parts(theta, f1, f2, _df_values(theta))


def _pair_tensor(c1, c2, w):
    """c1*e1 + c2*e2 tensored with the w-th power of the area form."""
    comps = {}
    if c1:
        comps[(1, 2, 0)] = 2 * c1
        comps[(2, 1, 1)] = c1
    if c2:
        comps[(2, 0, 2)] = 2 * c2
        comps[(1, 1, 1)] = c2
    return TensorComp(1, 2, w, comps)


def omega2(theta):
    """The order-2 obstruction tensor (F1 e1 + F2 e2) (x) area."""
    f1, f2 = _f12(theta)
    return _pair_tensor(f1, f2, 1)


def derived2(theta):
    """alpha2 = (F1 dx1 + F2 dx2) (x) area and beta2 = (F2 d1 - F1 d2)
    (x) area^2, both derived from omega2 by contraction."""
    f1, f2 = _f12(theta)
    alpha = TensorComp(0, 1, 1, {(0, 1, 0): f1, (0, 0, 1): f2})
    beta = TensorComp(1, 0, 2, {(1, 0, 0): f2, (2, 0, 0): -f1})
    return alpha, beta


def omega3(theta):
    """The order-3 obstruction tensor (Psi1 e1 + Psi2 e2) (x) area^3;
    defined off the linearizable stratum."""
    f1, f2 = _f12(theta)
    if not (f1 or f2):
        raise DegenerateJetError("omega3 needs (F1, F2) != (0, 0)")
    psi1, psi2 = _psi_from_parts(theta, f1, f2, _df_values(theta))
    return _pair_tensor(psi1, psi2, 3)


def derived3(theta):
    """alpha3, beta3, nu at an order >= 3 jet."""
    psi1, psi2 = psi_invariants(theta)
    f1, f2, f3 = f_invariants(theta)
    alpha = TensorComp(0, 1, 3, {(0, 1, 0): psi1, (0, 0, 1): psi2})
    beta = TensorComp(1, 0, 4, {(1, 0, 0): psi2, (2, 0, 0): -psi1})
    nu = TensorComp(0, 0, 5, {(0, 0, 0): f3})
    return alpha, beta, nu


def frame(theta):
    """The invariant frame xi1 = (F2, -F1) t^-2, xi2 = (Psi2, -Psi1)
    t^-4 with t^5 = F3 != 0."""
    f1, f2, f3 = f_invariants(theta)
    if not is_unit(f3):
        raise DegenerateJetError("frame needs F3 != 0")
    psi1, psi2 = _psi_from_parts(theta, f1, f2, _df_values(theta))
    xi1 = (ScaledRational(f2, -2), ScaledRational(-f1, -2))
    xi2 = (ScaledRational(psi2, -4), ScaledRational(-psi1, -4))
    return Frame(xi1, xi2)


# ---------------------------------------------------------------------------
# Geometric construction of omega2 (independent oracle)

def omega2_lifts(theta):
    """The two canonical lifted basis vectors of the horizontal subspace
    used to construct omega2: base parts d/dx^r, vanishing first-order
    parts, totally symmetric second-order table, completed to 3-jets by
    the tangency equations.  The joint linear system has a unique
    solution."""
    if theta.order < 2:
        raise ValueError("construction needs a jet of order >= 2")
    vars20 = isotropy.x_vars(0, 3)
    idx = {v: c for c, v in enumerate(vars20)}
    n = len(vars20)
    sys_rows = isotropy._system_rows(theta, 1, vars20)

    rows = []
    rhs = []

    def joint(r, row20):
        full = [ZERO] * (2 * n)
        for c, val in enumerate(row20):
            full[(r - 1) * n + c] = val
        return full

    for r in (1, 2):
        for row in sys_rows:
            rows.append(joint(r, row))
            rhs.append(ZERO)
    # base parts are the coordinate vectors
    for r in (1, 2):
        for i in (1, 2):
            row = [ZERO] * (2 * n)
            row[(r - 1) * n + idx[("X", i, 0, 0)]] = ONE
            rows.append(row)
            rhs.append(ONE if i == r else ZERO)
    # first-order parts vanish
    for r in (1, 2):
        for i in (1, 2):
            for ab in ((1, 0), (0, 1)):
                row = [ZERO] * (2 * n)
                row[(r - 1) * n + idx[("X", i, ab[0], ab[1])]] = ONE
                rows.append(row)
                rhs.append(ZERO)
    # the second-order tables of the two lifts interlock symmetrically
    for i in (1, 2):
        for (d2, d1) in (((2, 0), (1, 1)), ((1, 1), (0, 2))):
            row = [ZERO] * (2 * n)
            row[n + idx[("X", i, d2[0], d2[1])]] = ONE
            row[idx[("X", i, d1[0], d1[1])]] = -ONE
            rows.append(row)
            rhs.append(ZERO)

    sol = linalg.solve_unique(rows, rhs)
    jets = []
    for r in (1, 2):
        comps = {}
        for v, c in idx.items():
            val = sol[(r - 1) * n + c]
            if val:
                comps[(v[1], v[2], v[3])] = val
        jets.append(VFieldJet(theta.base, 3, comps))
    return tuple(jets)


def omega2_construction(theta):
    """omega2 built geometrically: bracket the two canonical lifts and
    read the second-order components."""
    v1, v2 = omega2_lifts(theta)
    w = bracket(v1, v2)
    for (i, a, b) in w.comps:
        if a + b < 2:
            raise AssertionError("bracket has low-order components")
    # raw bracket partials relate to symmetric-basis components by the
    # index multiplicity 3 of the third-order tables
    c1 = 3 * w.value(1, 2, 0) / 2
    c2 = 3 * w.value(2, 0, 2) / 2
    if (3 * w.value(2, 1, 1) != c1 or 3 * w.value(1, 1, 1) != c2
            or w.value(2, 2, 0) or w.value(1, 0, 2)):
        raise AssertionError("bracket does not have the symbol-space shape")
    return _pair_tensor(c1, c2, 1)


# ---------------------------------------------------------------------------
# Geometric construction of omega3 (independent oracle)

def omega3_construction(theta, h11_1=ZERO, h11_2=ZERO, XY=None):
    """omega3 built through the horizontal-subspace pipeline: first-order
    lift table from the tangency system (two free parameters), bracket
    components, the cubic symbol tensor, its symbol-space projection,
    contraction with beta2.  The output is independent of the free
    parameters and of the auxiliary basis XY."""
    if theta.order < 3:
        raise ValueError("construction needs a jet of order >= 3")
    f1, f2 = _f12(theta)
    if not is_unit(f1):
        if is_unit(f2):
            m = omega3_construction(theta.mirror(), h11_1, h11_2, XY)
            return m.transform(SWAP)
        if f1 or f2:
            raise linalg.PivotError("F1, F2 are nonzero but not invertible")
        raise DegenerateJetError("construction needs (F1, F2) != (0, 0)")
    d1f1, d2f1, d1f2, d2f2 = _df_values(theta)
    if XY is None:
        X, Y = (ONE, ZERO), (ZERO, ONE)
    else:
        X, Y = XY
    lam = X[0] * Y[1] - X[1] * Y[0]
    if not is_unit(lam):
        raise ValueError("auxiliary basis is degenerate")

    # first-order lift table, symmetric in the two lower indices
    h = {}
    h[(1, 1, 1)] = h11_1
    h[(2, 1, 1)] = h11_2
    h[(1, 1, 2)] = (2 * h11_2 * f2 * f2 + 3 * h11_1 * f1 * f2
                    - f1 * d1f2 + 2 * d1f1 * f2) / (f1 * f1)
    h[(1, 2, 2)] = (4 * h11_2 * f2 ** 3 + 5 * h11_1 * f1 * f2 * f2
                    - f1 * f1 * d2f2 + 2 * f1 * d2f1 * f2
                    - 3 * f1 * f2 * d1f2 + 4 * d1f1 * f2 * f2) / (f1 ** 3)
    h[(2, 1, 2)] = (-h11_2 * f2 - 2 * h11_1 * f1 - d1f1) / f1
    h[(2, 2, 2)] = (-3 * h11_2 * f2 * f2 - 4 * h11_1 * f1 * f2
                    - f1 * d2f1 + 2 * f1 * d1f2 - 3 * d1f1 * f2) / (f1 * f1)
    h[(1, 2, 1)] = h[(1, 1, 2)]
    h[(2, 2, 1)] = h[(2, 1, 2)]

    # bracket components of two lifted fields with auxiliary basis X, Y
    g = {}
    g[(1, 1, 2)] = g[(1, 2, 1)] = f2 * lam
    g[(2, 1, 2)] = g[(2, 2, 1)] = f1 * lam
    g[(1, 1, 1)] = 2 * f1 * lam
    g[(2, 2, 2)] = 2 * f2 * lam
    g[(1, 2, 2)] = ZERO
    g[(2, 1, 1)] = ZERO

    u = [theta.value(i, 0, 0) for i in (1, 2, 3, 4)]
    g3 = {}
    third = {(1, 1, 1): (-3 * f2 * u[0], 3 * f1 * u[0]),
             (1, 1, 2): (-f2 * u[1], f1 * u[1]),
             (1, 2, 2): (-f2 * u[2], f1 * u[2]),
             (2, 2, 2): (-3 * f2 * u[3], 3 * f1 * u[3])}
    for (j1, j2, j3), (v1, v2) in third.items():
        for perm in _perm3(j1, j2, j3):
            g3[(1,) + perm] = v1 * lam
            g3[(2,) + perm] = v2 * lam

    # the cubic symbol tensor; must come out symmetric in (j, m, k)
    t = {}
    for i in (1, 2):
        for j in (1, 2):
            for m in (1, 2):
                for k in (1, 2):
                    s = g3[(i, j, m, k)]
                    for r in (1, 2):
                        s = (s + h[(r, j, m)] * g[(i, r, k)]
                             - g[(r, j, k)] * h[(i, r, m)]
                             - h[(i, j, r)] * g[(r, m, k)]
                             - g[(r, j, m)] * h[(i, r, k)]
                             + h[(r, j, k)] * g[(i, r, m)]
                             + h[(r, m, k)] * g[(i, r, j)])
                    t[(i, j, m, k)] = s
    for i in (1, 2):
        for j in (1, 2):
            for m in (1, 2):
                for k in (1, 2):
                    for perm in _perm3(j, m, k):
                        if t[(i, j, m, k)] != t[(i,) + perm]:
                            raise AssertionError("cubic symbol tensor is "
                                                 "not symmetric")

    # projection to the symbol space in the first two covariant slots
    tt = {}
    for i in (1, 2):
        for j in (1, 2):
            for m in (1, 2):
                for k in (1, 2):
                    s = ZERO
                    if i == j:
                        for r in (1, 2):
                            s = s + t[(r, m, r, k)]
                    if i == m:
                        for r in (1, 2):
                            s = s + t[(r, j, r, k)]
                    tt[(i, j, m, k)] = s / 3

    # contract the spectator slot with beta2
    beta = {1: f2, 2: -f1}
    q = {}
    for i in (1, 2):
        for j in (1, 2):
            for m in (1, 2):
                s = ZERO
                for k in (1, 2):
                    s = s + beta[k] * tt[(i, j, m, k)]
                q[(i, j, m)] = s
    if (q[(1, 1, 1)] != 2 * q[(2, 1, 2)] or q[(2, 2, 2)] != 2 * q[(1, 1, 2)]
            or q[(1, 2, 2)] or q[(2, 1, 1)]):
        raise AssertionError("projected tensor leaves the symbol space")

    psi1 = 3 * q[(2, 1, 2)] / lam
    psi2 = 3 * q[(1, 1, 2)] / lam
    return _pair_tensor(psi1, psi2, 3)


def _perm3(a, b, c):
    return ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a))


# ---------------------------------------------------------------------------
# Scalar invariants

_EXPONENTS = (-4, -2, -6, -8, -8, -10)
_XI_EXP = (-2, -4)


def _scalar_pipeline(theta):
    """Core computation at an order-4 jet over any scalar ring: returns
    the rational parts of I^1..I^6, the frame covector pair, and F3."""
    if theta.order < 4:
        raise ValueError("scalar invariants need a jet of order >= 4")
    f1, f2 = _f12(theta)
    dvals = _df_values(theta)
    f3 = _f3_from_parts(theta, f1, f2, dvals)
    if not is_unit(f3):
        raise DegenerateJetError("scalar invariants need F3 != 0")
    psi1, psi2 = _psi_from_parts(theta, f1, f2, dvals)
    vhat1 = (f2, -f1)
    vhat2 = (psi2, -psi1)

    A = isotropy.a_space(theta, 3)
    if A.dim != 2:
        raise DegenerateJetError("tangency space has dimension %d, "
                                 "expected 2" % A.dim)
    vars42 = A.vars
    i10 = vars42.index(("X", 1, 0, 0))
    i20 = vars42.index(("X", 2, 0, 0))
    b1, b2 = A.basis
    m = (b1[i10], b2[i10], b1[i20], b2[i20])

    def lift_coeffs(z):
        return linalg.solve2(m[0], m[1], m[2], m[3], z[0], z[1])

    def lift_jet(z, order):
        c1, c2 = lift_coeffs(z)
        comps = {}
        for v, e1, e2 in zip(vars42, b1, b2):
            if v[2] + v[3] > order:
                continue
            val = c1 * e1 + c2 * e2
            if val:
                comps[(v[1], v[2], v[3])] = val
        return VFieldJet(theta.base, order, comps)

    w1 = lift_jet(vhat1, 5)
    w2 = lift_jet(vhat2, 5)
    b = bracket(w1, w2)
    z = (b.value(1, 0, 0), b.value(2, 0, 0))

    def over_frame(vec):
        return linalg.solve2(vhat1[0], vhat2[0], vhat1[1], vhat2[1],
                             vec[0], vec[1])

    i1, i2 = over_frame(z)
    d = b - lift_jet(z, 4)
    if d.value(1, 0, 0) or d.value(2, 0, 0):
        raise AssertionError("lift does not reproduce the base part")

    def endo_over_frame(jet):
        m = ((jet.value(1, 1, 0), jet.value(1, 0, 1)),
             (jet.value(2, 1, 0), jet.value(2, 0, 1)))
        out = []
        for vh in (vhat1, vhat2):
            vec = (m[0][0] * vh[0] + m[0][1] * vh[1],
                   m[1][0] * vh[0] + m[1][1] * vh[1])
            out.extend(over_frame(vec))
        return out

    i3, i4a, i5, i6a = endo_over_frame(d)
    # two exact identities of the first-order decomposition: the frame
    # covector (F2, -F1) is an eigendirection of it, and its trace ties
    # the two diagonal coefficients; both hold on every run
    if i4a or i6a != -i3 / 2:
        raise AssertionError("first-order decomposition identities fail")
    # the remaining two scalars sit one bracket deeper
    mu = bracket(w1.truncate(4), d)
    eta = mu - lift_jet((mu.value(1, 0, 0), mu.value(2, 0, 0)), 3)
    j11, _, j21, _ = endo_over_frame(eta)
    return {
        "r": (i1, i2, i3, j11, i5, j21),
        "f3": f3,
        "vhat": (vhat1, vhat2),
    }


def scalar_invariants(theta):
    """I^1..I^6 at an order-4 jet as ScaledRationals (t^5 = F3)."""
    data = _scalar_pipeline(theta)
    return tuple(ScaledRational(r, e) for r, e in zip(data["r"], _EXPONENTS))


def lie_derivatives_from_jet(theta5):
    """Run the scalar-invariant pipeline over first-order expansions in
    the base point and contract the resulting gradients with the frame.

    Returns (invariants, derivatives, f3): the six I^k, the dict
    {(j, k): xi_j(I^k)} for j in {1, 2} and k in {1..6}, and the value
    of F3 at the jet.  Entries of theta5 may themselves be Duals."""
    if theta5.order < 5:
        raise ValueError("Lie derivatives need a jet of order >= 5")
    bkeys = (("lie", 1), ("lie", 2))
    u = {}
    for i in (1, 2, 3, 4):
        for mm in range(5):
            for nn in range(5 - mm):
                grad = {}
                g1 = theta5.value(i, mm + 1, nn)
                g2 = theta5.value(i, mm, nn + 1)
                if g1:
                    grad[bkeys[0]] = g1
                if g2:
                    grad[bkeys[1]] = g2
                val = theta5.value(i, mm, nn)
                if val or grad:
                    u[(i, mm, nn)] = Dual(val, grad)
    theta4 = SectionJet(theta5.base, 4, u)
    data = _scalar_pipeline(theta4)
    f3 = data["f3"]
    f3v = value(f3)
    inv5 = 1 / (5 * f3v)
    vhat = data["vhat"]
    invariants = tuple(ScaledRational(value(r), e)
                       for r, e in zip(data["r"], _EXPONENTS))
    derivs = {}
    for j in (1, 2):
        vj = (value(vhat[j - 1][0]), value(vhat[j - 1][1]))
        for k in range(1, 7):
            r = data["r"][k - 1]
            e = _EXPONENTS[k - 1]
            total = None
            for a in (1, 2):
                g = partial(r, bkeys[a - 1]) + value(r) * e * \
                    partial(f3, bkeys[a - 1]) * inv5
                term = vj[a - 1] * g
                total = term if total is None else total + term
            derivs[(j, k)] = ScaledRational(total, e + _XI_EXP[j - 1])
    return invariants, derivs, f3v


def lie_derivatives(coeffs, p):
    """The twelve Lie derivatives xi_j(I^k) of an equation given by
    coefficient expressions, at a rational point."""
    from .expr import section_jet
    theta5 = section_jet(coeffs, p, 5)
    _, derivs, _ = lie_derivatives_from_jet(theta5)
    return tuple(derivs[(j, k)] for j in (1, 2) for k in range(1, 7))
