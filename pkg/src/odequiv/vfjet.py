"""Finite jets of vector fields on the base plane, their brackets, and
prolongation of symbolic fields to the jet bundle.

A VFieldJet of order m at p stores the raw partials X^i_(a,b) for
a + b <= m of the two components.  The filtration L^r consists of jets
whose components vanish to order r at p; brackets respect it:
[L^i, L^j] is contained in L^(i+j).
"""

from .rat import Q, ZERO, ONE, binomial
from . import jetpoly
from .jetpoly import JetPolynomial, Xvar, uvar, xvar


class VFieldJet:
    __slots__ = ("base", "order", "comps")

    def __init__(self, base, order, comps=None):
        self.base = (base[0], base[1])
        self.order = order
        self.comps = {}
        if comps:
            for (i, a, b), val in comps.items():
                if i not in (1, 2):
                    raise ValueError("component index out of range: %d" % i)
                if a + b > order:
                    raise ValueError("derivative order %d exceeds jet order %d"
                                     % (a + b, order))
                if val:
                    self.comps[(i, a, b)] = val

    def value(self, i, a, b):
        return self.comps.get((i, a, b), ZERO)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise jet order by truncation")
        return VFieldJet(self.base, order,
                         {k: v for k, v in self.comps.items() if k[1] + k[2] <= order})

    def in_filtration(self, r):
        """Whether all components with a + b <= r vanish (membership in
        L^r at the base point)."""
        return not any(a + b <= r for (_, a, b) in self.comps)

    def __bool__(self):
        return bool(self.comps)

    def __eq__(self, other):
        return (isinstance(other, VFieldJet) and self.base == other.base
                and self.order == other.order and self.comps == other.comps)

    def __add__(self, other):
        if self.base != other.base or self.order != other.order:
            raise ValueError("jet base or order mismatch")
        out = dict(self.comps)
        for k, v in other.comps.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return VFieldJet(self.base, self.order, out)

    def __neg__(self):
        return VFieldJet(self.base, self.order,
                         {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if not c:
            return VFieldJet(self.base, self.order, {})
        return VFieldJet(self.base, self.order,
                         {k: v * c for k, v in self.comps.items()})

    __rmul__ = __mul__

    def __repr__(self):
        return "VFieldJet(base=%s, order=%d, %d nonzero)" % (
            self.base, self.order, len(self.comps))


def bracket(jx, jy):
    """Lie bracket of two vector field jets of the same order m >= 1 at
    the same point; the result is determined to order m - 1."""
    if jx.base != jy.base:
        raise ValueError("jets based at different points")
    if jx.order != jy.order:
        raise ValueError("jet order mismatch (truncate first)")
    m = jx.order
    if m < 1:
        raise ValueError("bracket needs jets of order at least 1")
    out = {}
    for i in (1, 2):
        for a in range(m):
            for b in range(m - a):
                total = ZERO
                for j in (1, 2):
                    ej = (1, 0) if j == 1 else (0, 1)
                    for c in range(a + 1):
                        for d in range(b + 1):
                            w = binomial(a, c) * binomial(b, d)
                            t = (jx.value(j, c, d)
                                 * jy.value(i, a - c + ej[0], b - d + ej[1])
                                 - jy.value(j, c, d)
                                 * jx.value(i, a - c + ej[0], b - d + ej[1]))
                            if t:
                                total = total + w * t
                if total:
                    out[(i, a, b)] = total
    return VFieldJet(jx.base, m - 1, out)


def deformation_velocity(theta1, xjet):
    """Evaluate the four deformation velocity components of a vector
    field 2-jet against a section 1-jet at the same point."""
    if xjet.base != theta1.base:
        raise ValueError("jets based at different points")
    if xjet.order < 2:
        raise ValueError("deformation velocity needs a vector field 2-jet")
    assignment = theta1.assignment()
    for (i, a, b), v in xjet.comps.items():
        assignment[Xvar(i, a, b)] = v
    return tuple(p.evaluate(assignment) for p in jetpoly.psi_polys())


# ---------------------------------------------------------------------------
# Prolongation of symbolic fields

class ProlongedField:
    """Prolongation of a polynomial vector field to the order-k jet
    bundle: two base components (polynomials in x) and fiber components
    for every (i, (m, n)) with m + n <= k."""

    __slots__ = ("order", "base_comps", "fiber_comps")

    def __init__(self, order, base_comps, fiber_comps):
        self.order = order
        self.base_comps = base_comps
        self.fiber_comps = fiber_comps

    def component(self, key):
        if key[0] == "x":
            return self.base_comps[key[1] - 1]
        return self.fiber_comps[key]

    def __eq__(self, other):
        return (isinstance(other, ProlongedField) and self.order == other.order
                and self.base_comps == other.base_comps
                and _trim(self.fiber_comps) == _trim(other.fiber_comps))


def _trim(d):
    return {k: v for k, v in d.items() if v}


def expr_to_xpoly(e):
    """Convert a polynomial coefficient expression to a JetPolynomial in
    the base variables (division only by constants)."""
    from . import expr as ex
    if isinstance(e, ex.Const):
        return JetPolynomial.constant(e.value)
    if isinstance(e, ex.Var):
        return JetPolynomial.var(xvar(1 if e.name == "x" else 2))
    if isinstance(e, ex.Neg):
        return -expr_to_xpoly(e.a)
    if isinstance(e, ex.Add):
        return expr_to_xpoly(e.a) + expr_to_xpoly(e.b)
    if isinstance(e, ex.Sub):
        return expr_to_xpoly(e.a) - expr_to_xpoly(e.b)
    if isinstance(e, ex.Mul):
        return expr_to_xpoly(e.a) * expr_to_xpoly(e.b)
    if isinstance(e, ex.Div):
        den = expr_to_xpoly(e.b)
        if set(den.terms) - {()}:
            raise ValueError("vector field components must be polynomial")
        c = den.terms.get((), ZERO)
        if not c:
            raise ZeroDivisionError("division by zero constant")
        return expr_to_xpoly(e.a) * (ONE / c)
    if isinstance(e, ex.Pow):
        out = JetPolynomial.constant(ONE)
        b = expr_to_xpoly(e.a)
        for _ in range(e.n):
            out = out * b
        return out
    raise TypeError("not an expression: %r" % (e,))


def prolong_vector_field(x1, x2, k):
    """Prolong the field X = x1 d/dx^1 + x2 d/dx^2 (polynomial Exprs) to
    the order-k jet bundle."""
    p1 = expr_to_xpoly(x1)
    p2 = expr_to_xpoly(x2)
    # substitute the jet coefficients of X into the deformation velocity
    sub = {}
    polys = [p1, p2]
    ders = {(1, 0, 0): p1, (2, 0, 0): p2}

    def xder(i, a, b):
        key = (i, a, b)
        if key not in ders:
            if a > 0:
                ders[key] = xder(i, a - 1, b).partial(xvar(1))
            else:
                ders[key] = xder(i, a, b - 1).partial(xvar(2))
        return ders[key]

    needed = set()
    for p in jetpoly.psi_polys():
        for v in p.variables():
            if v[0] == "X":
                needed.add(v)
    for v in needed:
        sub[v] = xder(v[1], v[2], v[3])
    psi_sub = [p.substitute(sub) for p in jetpoly.psi_polys()]

    fiber = {}
    for i in (1, 2, 3, 4):
        cache = {(0, 0): psi_sub[i - 1]}

        def dpsi(m, n, i=i, cache=cache):
            if (m, n) not in cache:
                if m > 0:
                    cache[(m, n)] = dpsi(m - 1, n).total_derivative(1)
                else:
                    cache[(m, n)] = dpsi(m, n - 1).total_derivative(2)
            return cache[(m, n)]

        for m in range(k + 1):
            for n in range(k + 1 - m):
                transport = (polys[0] * JetPolynomial.var(uvar(i, m + 1, n))
                             + polys[1] * JetPolynomial.var(uvar(i, m, n + 1)))
                fiber[(i, m, n)] = transport + dpsi(m, n)
    return ProlongedField(k, (p1, p2), fiber)


def prolonged_commutator(v, w):
    """Commutator of two prolonged fields on the same jet bundle order.
    Components of the result are only valid where they depend on
    coordinates present on that bundle, which holds for prolongations."""
    if v.order != w.order:
        raise ValueError("prolonged field order mismatch")
    keys = [(xvar(j), xvar(j)) for j in (1, 2)] + \
        [(uvar(*key), key) for key in v.fiber_comps]

    def apply(field, g):
        out = JetPolynomial()
        for var, key in keys:
            dg = g.partial(var)
            if dg:
                out = out + field.component(key) * dg
        return out

    base = tuple(apply(v, w.base_comps[j]) - apply(w, v.base_comps[j])
                 for j in range(2))
    fiber = {key: apply(v, w.fiber_comps[key]) - apply(w, v.fiber_comps[key])
             for key in v.fiber_comps}
    return ProlongedField(v.order, base, fiber)
