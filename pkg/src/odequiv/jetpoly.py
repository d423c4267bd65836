"""Sparse polynomials on jet coordinates, and finite jets of sections.

Variables are tagged tuples:

    ('x', j)        base coordinate, j in {1, 2}
    ('u', i, m, n)  fiber derivative coordinate: the raw partial of
                    multidegree (m, n) of the i-th fiber component,
                    i in {1..4}.  (m, n) storage makes the symmetry of
                    mixed partials structural.
    ('X', i, a, b)  formal jet coefficient of a vector field component,
                    i in {1, 2}: the raw partial of multidegree (a, b)
                    of X^i at the base point.

A monomial is a sorted tuple of (variable, exponent) pairs; a
JetPolynomial maps monomials to rational coefficients.  The total
derivative operator acts as x-differentiation on base variables and as
the degree shift (m, n) -> (m, n) + e_j on fiber and formal variables.
"""

from .rat import Q, ZERO, ONE


def xvar(j):
    return ("x", j)


def uvar(i, m, n):
    return ("u", i, m, n)


def Xvar(i, a, b):
    return ("X", i, a, b)


def _shift_var(v, j):
    """Total-derivative image of a single variable (None means the
    derivative is constant: D_j x^i = delta_ij)."""
    if v[0] == "u":
        _, i, m, n = v
        return uvar(i, m + 1, n) if j == 1 else uvar(i, m, n + 1)
    if v[0] == "X":
        _, i, a, b = v
        return Xvar(i, a + 1, b) if j == 1 else Xvar(i, a, b + 1)
    return None


class JetPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    self.terms[mono] = c

    @classmethod
    def constant(cls, c):
        return cls({(): Q(c) if isinstance(c, int) else c})

    @classmethod
    def var(cls, v):
        return cls({((v, 1),): ONE})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, JetPolynomial) and self.terms == other.terms

    def __repr__(self):
        items = sorted(self.terms.items())
        return "JetPolynomial(%d terms: %s%s)" % (
            len(items), items[:4], "..." if len(items) > 4 else "")

    def __add__(self, other):
        if not isinstance(other, JetPolynomial):
            other = JetPolynomial.constant(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, ZERO) + c
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        p = JetPolynomial.__new__(JetPolynomial)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = JetPolynomial.__new__(JetPolynomial)
        p.terms = {mono: -c for mono, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if not isinstance(other, JetPolynomial):
            other = JetPolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, JetPolynomial):
            if not other:
                return JetPolynomial()
            p = JetPolynomial.__new__(JetPolynomial)
            p.terms = {mono: c * other for mono, c in self.terms.items()}
            return p
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _merge(m1, m2)
                s = out.get(mono, ZERO) + c1 * c2
                if s:
                    out[mono] = s
                elif mono in out:
                    del out[mono]
        p = JetPolynomial.__new__(JetPolynomial)
        p.terms = out
        return p

    __rmul__ = __mul__

    def total_derivative(self, j):
        """Total derivative D_j: x-derivative on base variables plus the
        degree shift on fiber and formal variables."""
        out = JetPolynomial()
        for mono, c in self.terms.items():
            for idx, (v, e) in enumerate(mono):
                rest = mono[:idx] + ((v, e - 1),) * (e > 1) + mono[idx + 1:]
                coeff = c * e
                sv = _shift_var(v, j)
                if sv is None:
                    if v[1] != j:
                        continue
                    new = rest
                else:
                    new = _merge(rest, ((sv, 1),))
                out = out + JetPolynomial({new: coeff})
        return out

    def partial(self, v):
        """Formal partial derivative with respect to a single variable."""
        out = {}
        for mono, c in self.terms.items():
            for idx, (w, e) in enumerate(mono):
                if w == v:
                    rest = mono[:idx] + ((w, e - 1),) * (e > 1) + mono[idx + 1:]
                    out[rest] = out.get(rest, ZERO) + c * e
                    break
        return JetPolynomial(out)

    def variables(self):
        seen = set()
        for mono in self.terms:
            for v, _ in mono:
                seen.add(v)
        return seen

    def max_u_order(self):
        best = -1
        for mono in self.terms:
            for v, _ in mono:
                if v[0] == "u":
                    best = max(best, v[2] + v[3])
        return best

    def evaluate(self, assignment):
        """Evaluate with a mapping variable -> value.  Missing 'u' and
        'X' variables count as zero; missing 'x' variables are an
        error."""
        total = ZERO
        for mono, c in self.terms.items():
            term = c
            dead = False
            for v, e in mono:
                if v in assignment:
                    val = assignment[v]
                else:
                    if v[0] == "x":
                        raise KeyError("no value for base variable %r" % (v,))
                    val = ZERO
                if not val:
                    dead = True
                    break
                for _ in range(e):
                    term = term * val
            if not dead:
                total = total + term
        return total

    def substitute(self, mapping):
        """Replace variables by polynomials (variables absent from the
        mapping are kept)."""
        out = JetPolynomial()
        for mono, c in self.terms.items():
            term = JetPolynomial({(): c})
            for v, e in mono:
                factor = mapping.get(v)
                if factor is None:
                    factor = JetPolynomial.var(v)
                for _ in range(e):
                    term = term * factor
            out = out + term
        return out

    def x_linear_row(self, assignment):
        """For a polynomial that is linear homogeneous in the 'X'
        variables: evaluate the u/x part and return {X-variable:
        coefficient}."""
        row = {}
        for mono, c in self.terms.items():
            xv = None
            val = c
            dead = False
            for v, e in mono:
                if v[0] == "X":
                    if xv is not None or e != 1:
                        raise ValueError("polynomial is not linear in X variables")
                    xv = v
                else:
                    a = assignment.get(v, ZERO if v[0] == "u" else None)
                    if a is None:
                        raise KeyError("no value for %r" % (v,))
                    if not a:
                        dead = True
                        break
                    for _ in range(e):
                        val = val * a
            if dead:
                continue
            if xv is None:
                raise ValueError("polynomial has a term with no X variable")
            s = row.get(xv, ZERO) + val
            if s:
                row[xv] = s
            elif xv in row:
                del row[xv]
        return row


def _merge(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def poly(*terms):
    """Build a polynomial from (coeff, var, var, ...) tuples."""
    out = {}
    for t in terms:
        c = Q(t[0]) if isinstance(t[0], int) else t[0]
        mono = _merge((), tuple((v, 1) for v in t[1:]))
        out[mono] = out.get(mono, ZERO) + c
    return JetPolynomial(out)


# ---------------------------------------------------------------------------
# Section jets

class SectionJet:
    """Finite jet of a coefficient section at a base point.

    u maps (i, m, n) with m + n <= order to the raw partial value of the
    i-th fiber component (i in 1..4).  Values may live in any
    commutative ring containing the rationals (Duals included); zeros
    are omitted.
    """

    __slots__ = ("base", "order", "u")

    def __init__(self, base, order, u=None):
        self.base = (base[0], base[1])
        self.order = order
        self.u = {}
        if u:
            for (i, m, n), val in u.items():
                if not 1 <= i <= 4:
                    raise ValueError("fiber index out of range: %d" % i)
                if m + n > order:
                    raise ValueError("derivative order %d exceeds jet order %d"
                                     % (m + n, order))
                if val:
                    self.u[(i, m, n)] = val

    def value(self, i, m, n):
        return self.u.get((i, m, n), ZERO)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise jet order by truncation")
        return SectionJet(self.base, order,
                          {k: v for k, v in self.u.items() if k[1] + k[2] <= order})

    def mirror(self):
        """Image under the coordinate swap (x, y) -> (y, x).  The swap
        carries the equation class to itself with u^i(m,n) ->
        -u^(5-i)(n,m) and the base point swapped."""
        return SectionJet((self.base[1], self.base[0]), self.order,
                          {(5 - i, n, m): -v for (i, m, n), v in self.u.items()})

    def assignment(self):
        out = {xvar(1): self.base[0], xvar(2): self.base[1]}
        for (i, m, n), val in self.u.items():
            out[uvar(i, m, n)] = val
        return out

    def __eq__(self, other):
        return (isinstance(other, SectionJet) and self.base == other.base
                and self.order == other.order and self.u == other.u)

    def __repr__(self):
        return "SectionJet(base=%s, order=%d, %d nonzero)" % (
            self.base, self.order, len(self.u))

    def evaluate(self, p):
        """Check a polynomial's fiber variables fit inside this jet and
        evaluate it."""
        need = p.max_u_order()
        if need > self.order:
            raise ValueError("polynomial needs order %d, jet has %d"
                             % (need, self.order))
        return p.evaluate(self.assignment())


# ---------------------------------------------------------------------------
# The structure polynomials

def _u(i, m, n):
    return uvar(i, m, n)


_cache = {}


def psi_polys():
    """The four components of the deformation velocity of a vector field
    X = X^1 d/dx^1 + X^2 d/dx^2, linear in the formal X variables."""
    if "psi" in _cache:
        return _cache["psi"]
    X = Xvar
    u = _u
    psi1 = poly(
        (-1, u(1, 1, 0), X(1, 0, 0)), (-1, u(1, 0, 1), X(2, 0, 0)),
        (-2, u(1, 0, 0), X(1, 1, 0)), (1, u(1, 0, 0), X(2, 0, 1)),
        (-1, u(2, 0, 0), X(2, 1, 0)), (1, X(2, 2, 0)))
    psi2 = poly(
        (-1, u(2, 1, 0), X(1, 0, 0)), (-1, u(2, 0, 1), X(2, 0, 0)),
        (-3, u(1, 0, 0), X(1, 0, 1)), (-1, u(2, 0, 0), X(1, 1, 0)),
        (-2, u(3, 0, 0), X(2, 1, 0)), (-1, X(1, 2, 0)), (2, X(2, 1, 1)))
    psi3 = poly(
        (-1, u(3, 1, 0), X(1, 0, 0)), (-1, u(3, 0, 1), X(2, 0, 0)),
        (-2, u(2, 0, 0), X(1, 0, 1)), (-1, u(3, 0, 0), X(2, 0, 1)),
        (-3, u(4, 0, 0), X(2, 1, 0)), (-2, X(1, 1, 1)), (1, X(2, 0, 2)))
    psi4 = poly(
        (-1, u(4, 1, 0), X(1, 0, 0)), (-1, u(4, 0, 1), X(2, 0, 0)),
        (-1, u(3, 0, 0), X(1, 0, 1)), (1, u(4, 0, 0), X(1, 1, 0)),
        (-2, u(4, 0, 0), X(2, 0, 1)), (-1, X(1, 0, 2)))
    _cache["psi"] = (psi1, psi2, psi3, psi4)
    return _cache["psi"]


def d_sigma_psi(i, m, n):
    """D_1^m D_2^n of the i-th deformation velocity component (cached)."""
    key = ("dpsi", i, m, n)
    if key in _cache:
        return _cache[key]
    if m == 0 and n == 0:
        p = psi_polys()[i - 1]
    elif m > 0:
        p = d_sigma_psi(i, m - 1, n).total_derivative(1)
    else:
        p = d_sigma_psi(i, m, n - 1).total_derivative(2)
    _cache[key] = p
    return p


def build_F1F2():
    """The pair of second-order relative differential invariants."""
    if "F" in _cache:
        return _cache["F"]
    u = _u
    F1 = poly(
        (3, u(1, 0, 2)), (-2, u(2, 1, 1)), (1, u(3, 2, 0)),
        (3, u(4, 0, 0), u(1, 1, 0)), (-3, u(3, 0, 0), u(1, 0, 1)),
        (2, u(2, 0, 0), u(2, 0, 1)), (-1, u(2, 0, 0), u(3, 1, 0)),
        (-3, u(1, 0, 0), u(3, 0, 1)), (6, u(1, 0, 0), u(4, 1, 0)))
    F2 = poly(
        (1, u(2, 0, 2)), (-2, u(3, 1, 1)), (3, u(4, 2, 0)),
        (-3, u(1, 0, 0), u(4, 0, 1)), (3, u(2, 0, 0), u(4, 1, 0)),
        (-2, u(3, 0, 0), u(3, 1, 0)), (1, u(3, 0, 0), u(2, 0, 1)),
        (3, u(4, 0, 0), u(2, 1, 0)), (-6, u(4, 0, 0), u(1, 0, 1)))
    _cache["F"] = (F1, F2)
    return _cache["F"]


def build_F3():
    """The third-order relative invariant driving the frame scale."""
    if "F3" in _cache:
        return _cache["F3"]
    F1, F2 = build_F1F2()
    D1F1 = F1.total_derivative(1)
    D2F1 = F1.total_derivative(2)
    D1F2 = F2.total_derivative(1)
    D2F2 = F2.total_derivative(2)
    u = _u
    F3 = (F2 * (F1 * D1F2 - F2 * D1F1)
          - F1 * (F1 * D2F2 - F2 * D2F1)
          + F1 * F1 * F1 * JetPolynomial.var(u(4, 0, 0))
          - F1 * F1 * F2 * JetPolynomial.var(u(3, 0, 0))
          + F1 * F2 * F2 * JetPolynomial.var(u(2, 0, 0))
          - F2 * F2 * F2 * JetPolynomial.var(u(1, 0, 0)))
    _cache["F3"] = F3
    return F3


def build_Psi():
    """The pair of third-order relative invariants completing the
    coframe."""
    if "Psi" in _cache:
        return _cache["Psi"]
    F1, F2 = build_F1F2()
    D1F1 = F1.total_derivative(1)
    D2F1 = F1.total_derivative(2)
    D1F2 = F2.total_derivative(1)
    D2F2 = F2.total_derivative(2)
    u = _u
    u1 = JetPolynomial.var(u(1, 0, 0))
    u2 = JetPolynomial.var(u(2, 0, 0))
    u3 = JetPolynomial.var(u(3, 0, 0))
    u4 = JetPolynomial.var(u(4, 0, 0))
    Psi1 = (-(F1 * F1) * u3 + 2 * (F1 * F2) * u2 - 3 * (F2 * F2) * u1
            - F1 * D2F1 + 4 * (F1 * D1F2) - 3 * (D1F1 * F2))
    Psi2 = (-3 * (F1 * F1) * u4 + 2 * (F1 * F2) * u3 - (F2 * F2) * u2
            + 3 * (F1 * D2F2) - 4 * (D2F1 * F2) + F2 * D1F2)
    _cache["Psi"] = (Psi1, Psi2)
    return _cache["Psi"]
