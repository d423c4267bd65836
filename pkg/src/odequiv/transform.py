"""Point transformations of the plane and their action on equations.

A point map (x, y) -> (f1(x, y), f2(x, y)) acts on an equation of the
studied class by change of variables.  Everything here is local: maps
are handled as truncated Taylor jets, inverted orderwise, and composed
exactly; the transformed coefficient functions are produced either as
closed-form expressions pulled back to source coordinates or as section
jets at the image point.
"""

from .rat import Q, ZERO, ONE, rat
from . import expr as ex
from .expr import TaylorJet2, compose, taylor, EvalError
from .jetpoly import SectionJet


class SingularMapError(ArithmeticError):
    """The Jacobian of a point map is singular at the working point."""


class PointMap:
    """A point transformation given by two coefficient expressions."""

    __slots__ = ("f1", "f2")

    def __init__(self, f1, f2):
        self.f1 = f1
        self.f2 = f2

    def __call__(self, p):
        return (ex.evaluate(self.f1, p), ex.evaluate(self.f2, p))

    def jacobian(self, p):
        """Jacobian matrix of the map at p as nested tuples."""
        return ((ex.evaluate(ex.diff(self.f1, "x"), p),
                 ex.evaluate(ex.diff(self.f1, "y"), p)),
                (ex.evaluate(ex.diff(self.f2, "x"), p),
                 ex.evaluate(ex.diff(self.f2, "y"), p)))

    def jet(self, p, order):
        return map_jet(self.f1, self.f2, p, order)


class MapJet:
    """Taylor jet of a point map at a base point."""

    __slots__ = ("base", "order", "f1", "f2")

    def __init__(self, f1, f2, order=None):
        if f1.base != f2.base:
            raise ValueError("component jets have different base points")
        self.base = f1.base
        self.order = min(f1.order, f2.order) if order is None else order
        self.f1 = f1.truncate(self.order)
        self.f2 = f2.truncate(self.order)

    @property
    def target(self):
        return (self.f1.value(), self.f2.value())

    def jacobian(self):
        return ((self.f1.coeff(1, 0), self.f1.coeff(0, 1)),
                (self.f2.coeff(1, 0), self.f2.coeff(0, 1)))

    def det(self):
        j = self.jacobian()
        return j[0][0] * j[1][1] - j[0][1] * j[1][0]

    def __eq__(self, other):
        return (isinstance(other, MapJet) and self.order == other.order
                and self.f1 == other.f1 and self.f2 == other.f2)

    def __repr__(self):
        return "MapJet(base=%s, target=%s, order=%d)" % (
            self.base, self.target, self.order)


def map_jet(f1, f2, p, order):
    """Jet of the point map (f1, f2) at p; the linear part must be
    invertible."""
    base = (rat(p[0]), rat(p[1]))
    m = MapJet(taylor(f1, base, order), taylor(f2, base, order))
    if not m.det():
        raise SingularMapError("map has singular Jacobian at (%s, %s)" % base)
    return m


def identity_map_jet(p, order):
    base = (rat(p[0]), rat(p[1]))
    return MapJet(TaylorJet2.variable("x", base, order),
                  TaylorJet2.variable("y", base, order))


def _inv2(j):
    det = j[0][0] * j[1][1] - j[0][1] * j[1][0]
    if not det:
        raise SingularMapError("singular linear part")
    inv = 1 / det
    return ((j[1][1] * inv, -j[0][1] * inv),
            (-j[1][0] * inv, j[0][0] * inv))


def invert_map_jet(fjet):
    """The jet at the image point of the local inverse map, to the same
    order: compose_map_jets(invert_map_jet(f), f) is the identity jet."""
    inv = _inv2(fjet.jacobian())
    q = fjet.target
    p = fjet.base
    m = fjet.order
    g = [TaylorJet2(q, m, {(0, 0): p[i], (1, 0): inv[i][0],
                           (0, 1): inv[i][1]}) for i in (0, 1)]
    ident = [TaylorJet2.variable("x", q, m), TaylorJet2.variable("y", q, m)]
    # each pass kills one more order of the defect f(g) - id
    for _ in range(m):
        err = [compose(fjet.f1, g[0], g[1]) - ident[0],
               compose(fjet.f2, g[0], g[1]) - ident[1]]
        if not (err[0].coeffs or err[1].coeffs):
            break
        g = [g[i] - (err[0] * inv[i][0] + err[1] * inv[i][1]) for i in (0, 1)]
    return MapJet(g[0], g[1])


def compose_map_jets(fjet, gjet):
    """Jet of f o g at the base of g; f must be based at g's image."""
    if fjet.base != gjet.target:
        raise ValueError("outer jet is not based at the inner image point")
    return MapJet(compose(fjet.f1, gjet.f1, gjet.f2),
                  compose(fjet.f2, gjet.f1, gjet.f2))


def _cubic_transform(a, d1, d2, j):
    """Coefficients (in source coordinates) of the transformed cubic.

    a: the four source coefficients a0..a3 (any commutative ring).
    d1, d2: first and second derivative tables of the map components,
    d1[i][k] = df^(i+1)/dx^k, d2[i] = (f^i_xx, f^i_xy, f^i_yy).
    j: the Jacobian determinant.
    Returns (a~0, .., a~3) pulled back to the source point.

    Derivation: with P = f1_x + f1_y p, Q = f2_x + f2_y p for p = y',
    the transformed second derivative is (A P - Q B + j y'') / P^3 where
    A, B collect the second derivatives of f2, f1; matching against the
    target cubic written in the basis {Q^3, Q^2 P, Q P^2, P^3} and
    substituting the inverse linear relation between (1, p) and (P, Q)
    yields the closed form.
    """
    # N(p) = A(p) P(p) - Q(p) B(p) + j * C(p), a cubic in p
    f1x, f1y = d1[0]
    f2x, f2y = d1[1]
    axx, axy, ayy = d2[1]   # second derivatives of f2
    bxx, bxy, byy = d2[0]   # second derivatives of f1
    # A(p) = axx + 2 axy p + ayy p^2, similarly B
    # P(p) = f1x + f1y p, Q(p) = f2x + f2y p
    n = [axx * f1x - f2x * bxx + j * a[0],
         axx * f1y + 2 * axy * f1x - f2x * bxy * 2 - f2y * bxx + j * a[1],
         2 * axy * f1y + ayy * f1x - f2x * byy - 2 * f2y * bxy + j * a[2],
         ayy * f1y - f2y * byy + j * a[3]]
    # substitute 1 = (f2y P - f1y Q)/j, p = (-f2x P + f1x Q)/j and
    # collect on the basis {P^3, P^2 Q, P Q^2, Q^3}
    s = (f2y, -f1y)    # 1  = (s0 P + s1 Q)/j
    t = (-f2x, f1x)    # p  = (t0 P + t1 Q)/j
    out = [None] * 4   # out[k] multiplies P^(3-k) Q^k
    for k in range(4):
        # expand n0*s^3 + n1*s^2 t + n2*s t^2 + n3*t^3
        total = None
        for deg, c in enumerate(n):
            # term c * s^(3-deg) * t^deg; coefficient of P^(3-k) Q^k
            coeff = None
            for i in range(max(0, k - deg), min(3 - deg, k) + 1):
                # choose i factors of s contributing Q
                pick_s_q = _binom3(3 - deg, i)
                q_from_t = k - i
                pick_t_q = _binom3(deg, q_from_t)
                if pick_t_q == 0:
                    continue
                term = (pick_s_q * pick_t_q) * (
                    s[0] ** (3 - deg - i) * s[1] ** i
                    * t[0] ** (deg - q_from_t) * t[1] ** q_from_t)
                coeff = term if coeff is None else coeff + term
            if coeff is None:
                continue
            term = c * coeff
            total = term if total is None else total + term
        out[k] = total
    # target coefficients: N = a~0 P^3 + a~1 Q P^2 + a~2 Q^2 P + a~3 Q^3
    # with the j^-3 from the substitution
    res = []
    for k in range(4):
        res.append(out[k] / (j * j * j))
    return tuple(res)


def _binom3(n, k):
    if k < 0 or k > n:
        return 0
    table = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (2, 0): 1, (2, 1): 2,
             (2, 2): 1, (3, 0): 1, (3, 1): 3, (3, 2): 3, (3, 3): 1}
    return table[(n, k)]


def pushforward_equation(coeffs, pmap):
    """The transformed coefficient functions pulled back to source
    coordinates: expressions b such that b(x, y) equals the transformed
    coefficient at (f1(x, y), f2(x, y))."""
    f1, f2 = pmap.f1, pmap.f2
    d1 = ((ex.diff(f1, "x"), ex.diff(f1, "y")),
          (ex.diff(f2, "x"), ex.diff(f2, "y")))
    d2 = tuple((ex.diff(d1[i][0], "x"), ex.diff(d1[i][0], "y"),
                ex.diff(d1[i][1], "y")) for i in (0, 1))
    j = d1[0][0] * d1[1][1] - d1[0][1] * d1[1][0]
    return _cubic_transform(tuple(coeffs), d1, d2, j)


def section_to_taylor(theta):
    """The four coefficient jets of a section jet as TaylorJet2s."""
    out = []
    for i in (1, 2, 3, 4):
        coeffs = {}
        for (ii, m, n), val in theta.u.items():
            if ii == i:
                f = 1
                for v in range(2, m + 1):
                    f *= v
                for v in range(2, n + 1):
                    f *= v
                coeffs[(m, n)] = val / f
        out.append(TaylorJet2(theta.base, theta.order, coeffs))
    return out


def lift_section_jet(fjet, theta):
    """The jet at f(p) of the transformed section: the lifted action of
    the point map on the jet of an equation.  Lifting a k-jet consumes
    exactly a (k+2)-jet of the map."""
    if fjet.base != theta.base:
        raise ValueError("map jet and section jet have different base points")
    k = theta.order
    if fjet.order < k + 2:
        raise ValueError("lifting a %d-jet needs a map jet of order %d"
                         % (k, k + 2))
    if not fjet.det():
        raise SingularMapError("map has singular Jacobian at (%s, %s)"
                               % fjet.base)
    d1 = ((fjet.f1.deriv(1).truncate(k), fjet.f1.deriv(2).truncate(k)),
          (fjet.f2.deriv(1).truncate(k), fjet.f2.deriv(2).truncate(k)))
    d2 = tuple((fjet.f1.deriv(1).deriv(1).truncate(k),
                fjet.f1.deriv(1).deriv(2).truncate(k),
                fjet.f1.deriv(2).deriv(2).truncate(k)) if i == 0 else
               (fjet.f2.deriv(1).deriv(1).truncate(k),
                fjet.f2.deriv(1).deriv(2).truncate(k),
                fjet.f2.deriv(2).deriv(2).truncate(k)) for i in (0, 1))
    j = d1[0][0] * d1[1][1] - d1[0][1] * d1[1][0]
    a = tuple(t.truncate(k) for t in section_to_taylor(theta))
    pulled = _cubic_transform(a, d1, d2, j)
    inv = invert_map_jet(fjet)
    u = {}
    for i, g in enumerate(pulled, start=1):
        moved = compose(g, inv.f1, inv.f2)
        for (m, n) in moved.coeffs:
            val = moved.raw_partial(m, n)
            if val:
                u[(i, m, n)] = val
    return SectionJet(fjet.target, k, u)


def pushforward_with_inverse(coeffs, pmap, p, k):
    """Convenience wrapper: the k-jet at f(p) of the transformed
    equation given by coefficient expressions."""
    from .expr import section_jet
    theta = section_jet(coeffs, p, k)
    fjet = pmap.jet(p, k + 2)
    return lift_section_jet(fjet, theta)
