"""Coefficient expressions in the base variables x, y.

Grammar (standard precedence, ^ binds tightest and is right-associative,
unary minus sits between ^ and * /):

    expr    := term (('+'|'-') term)*
    term    := unary (('*'|'/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := rational | 'x' | 'y' | '(' expr ')'

Expressions are immutable trees.  They can be differentiated
symbolically, evaluated exactly at a rational point, substituted into,
or expanded as a truncated Taylor jet (TaylorJet2) around a point.
"""

from .rat import Q, ZERO, ONE, rat


class ExprError(ValueError):
    """Raised on a malformed expression string; carries the position."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = "%s (at position %d)" % (message, pos)
        super().__init__(message)
        self.pos = pos


class EvalError(ZeroDivisionError):
    """Division by zero while evaluating an expression at a point."""


# ---------------------------------------------------------------------------
# AST nodes

class Expr:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, _coerce(other))

    def __radd__(self, other):
        return Add(_coerce(other), self)

    def __sub__(self, other):
        return Sub(self, _coerce(other))

    def __rsub__(self, other):
        return Sub(_coerce(other), self)

    def __mul__(self, other):
        return Mul(self, _coerce(other))

    def __rmul__(self, other):
        return Mul(_coerce(other), self)

    def __truediv__(self, other):
        return Div(self, _coerce(other))

    def __rtruediv__(self, other):
        return Div(_coerce(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n):
        return Pow(self, n)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = rat(value)

    def __repr__(self):
        return "Const(%s)" % self.value


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name):
        if name not in ("x", "y"):
            raise ExprError("unknown variable %r" % name)
        self.name = name

    def __repr__(self):
        return "Var(%s)" % self.name


class _Binary(Expr):
    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = a
        self.b = b

    def __repr__(self):
        return "%s(%r, %r)" % (type(self).__name__, self.a, self.b)


class Add(_Binary):
    __slots__ = ()


class Sub(_Binary):
    __slots__ = ()


class Mul(_Binary):
    __slots__ = ()


class Div(_Binary):
    __slots__ = ()


class Neg(Expr):
    __slots__ = ("a",)

    def __init__(self, a):
        self.a = a

    def __repr__(self):
        return "Neg(%r)" % self.a


class Pow(Expr):
    __slots__ = ("a", "n")

    def __init__(self, a, n):
        if not isinstance(n, int) or n < 0:
            raise ExprError("exponents must be nonnegative integers")
        self.a = a
        self.n = n

    def __repr__(self):
        return "Pow(%r, %d)" % (self.a, self.n)


def _coerce(v):
    if isinstance(v, Expr):
        return v
    return Const(v)


X = Var("x")
Y = Var("y")


# ---------------------------------------------------------------------------
# Parser

_OPS = set("+-*/^()")


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c in _OPS:
            toks.append((c, i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
            continue
        raise ExprError("unexpected character %r" % c, i)
    toks.append(("end", n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.take()
        if t[0] != kind:
            raise ExprError("expected %r, found %r" % (kind, t[0]), t[-1])
        return t

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            t = self.take()
            # right-associative: the exponent may itself be a power, but
            # must fold to a nonnegative integer constant
            exp = self.unary()
            n = _fold_int(exp)
            if n is None or n < 0:
                raise ExprError("exponent must fold to a nonnegative integer", t[-1])
            return Pow(base, n)
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return Const(int(t[1]))
        if t[0] == "name":
            if t[1] in ("x", "y"):
                return Var(t[1])
            raise ExprError("unknown name %r" % t[1], t[-1])
        if t[0] == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ExprError("unexpected token %r" % (t[0],), t[-1])


def _fold_int(e):
    """Fold a constant expression down to an int, or None if it is not a
    variable-free integer."""
    if isinstance(e, Const):
        v = e.value
        return int(v) if v.denominator == 1 else None
    if isinstance(e, Neg):
        n = _fold_int(e.a)
        return None if n is None else -n
    if isinstance(e, Pow):
        b = _fold_int(e.a)
        return None if b is None else b ** e.n
    return None


def parse_coeff(text):
    """Parse a coefficient expression string into an Expr tree."""
    p = _Parser(text)
    node = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise ExprError("trailing input", t[-1])
    return node


parse_expr = parse_coeff


def parse_equation_file(text):
    """Parse an equation file: an [equation] block assigning a0..a3 and
    an optional [map] block assigning f1, f2.  Values are quoted or bare
    expression strings, '#' starts a comment, blank lines are ignored.

    Returns (coeffs, map_pair) where coeffs is the 4-tuple of Exprs
    (missing a_i default to 0) and map_pair is (f1, f2) or None.
    """
    sections = {"equation": {}, "map": {}}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip().lower()
            if name not in sections:
                raise ExprError("unknown section %r (line %d)" % (name, lineno))
            current = name
            continue
        if current is None:
            raise ExprError("assignment before any section (line %d)" % lineno)
        if "=" not in line:
            raise ExprError("expected 'name = expr' (line %d)" % lineno)
        key, _, val = line.partition("=")
        key = key.strip().lower()
        val = val.strip()
        if len(val) >= 2 and val[0] == val[-1] and val[0] in "'\"":
            val = val[1:-1]
        allowed = ("a0", "a1", "a2", "a3") if current == "equation" else ("f1", "f2")
        if key not in allowed:
            raise ExprError("unknown name %r in [%s] (line %d)"
                            % (key, current, lineno))
        try:
            sections[current][key] = parse_coeff(val)
        except ExprError as err:
            raise ExprError("line %d: %s" % (lineno, err))
    coeffs = tuple(sections["equation"].get("a%d" % i, Const(0))
                   for i in range(4))
    mp = sections["map"]
    if mp:
        if "f1" not in mp or "f2" not in mp:
            raise ExprError("[map] section needs both f1 and f2")
        return coeffs, (mp["f1"], mp["f2"])
    return coeffs, None


# ---------------------------------------------------------------------------
# Symbolic operations

def diff(e, var):
    """Partial derivative of an expression with respect to 'x' or 'y'."""
    if isinstance(e, Const):
        return Const(0)
    if isinstance(e, Var):
        return Const(1 if e.name == var else 0)
    if isinstance(e, Neg):
        return Neg(diff(e.a, var))
    if isinstance(e, Add):
        return Add(diff(e.a, var), diff(e.b, var))
    if isinstance(e, Sub):
        return Sub(diff(e.a, var), diff(e.b, var))
    if isinstance(e, Mul):
        return Add(Mul(diff(e.a, var), e.b), Mul(e.a, diff(e.b, var)))
    if isinstance(e, Div):
        return Div(Sub(Mul(diff(e.a, var), e.b), Mul(e.a, diff(e.b, var))),
                   Mul(e.b, e.b))
    if isinstance(e, Pow):
        if e.n == 0:
            return Const(0)
        return Mul(Const(e.n), Mul(Pow(e.a, e.n - 1), diff(e.a, var)))
    raise TypeError("not an expression: %r" % (e,))


def substitute(e, ex, ey):
    """Replace x by ex and y by ey (both Exprs)."""
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        return ex if e.name == "x" else ey
    if isinstance(e, Neg):
        return Neg(substitute(e.a, ex, ey))
    if isinstance(e, Pow):
        return Pow(substitute(e.a, ex, ey), e.n)
    if isinstance(e, _Binary):
        return type(e)(substitute(e.a, ex, ey), substitute(e.b, ex, ey))
    raise TypeError("not an expression: %r" % (e,))


def evaluate(e, p):
    """Evaluate at a rational point p = (px, py).  Exact; raises EvalError
    on division by zero."""
    px, py = rat(p[0]), rat(p[1])

    def go(e):
        if isinstance(e, Const):
            return e.value
        if isinstance(e, Var):
            return px if e.name == "x" else py
        if isinstance(e, Neg):
            return -go(e.a)
        if isinstance(e, Add):
            return go(e.a) + go(e.b)
        if isinstance(e, Sub):
            return go(e.a) - go(e.b)
        if isinstance(e, Mul):
            return go(e.a) * go(e.b)
        if isinstance(e, Div):
            d = go(e.b)
            if not d:
                raise EvalError("division by zero at point (%s, %s)" % (px, py))
            return go(e.a) / d
        if isinstance(e, Pow):
            return go(e.a) ** e.n
        raise TypeError("not an expression: %r" % (e,))

    return go(e)


# ---------------------------------------------------------------------------
# Truncated bivariate Taylor jets

class TaylorJet2:
    """Polynomial jet of order k around a base point.

    Coefficients are stored on the monomial basis in the shifted
    variables (x - px, y - py): coeff[(m, n)] is the coefficient of
    (x-px)^m (y-py)^n, so the raw partial of multidegree (m, n) equals
    coeff * m! * n!.  Zero coefficients are omitted.
    """

    __slots__ = ("base", "order", "coeffs")

    def __init__(self, base, order, coeffs=None):
        self.base = (base[0], base[1])
        self.order = order
        self.coeffs = {}
        if coeffs:
            for mn, c in coeffs.items():
                if c and mn[0] + mn[1] <= order:
                    self.coeffs[mn] = c

    @classmethod
    def constant(cls, value, base, order):
        return cls(base, order, {(0, 0): value})

    @classmethod
    def variable(cls, name, base, order):
        px, py = base
        if name == "x":
            return cls(base, order, {(0, 0): px, (1, 0): ONE})
        return cls(base, order, {(0, 0): py, (0, 1): ONE})

    def coeff(self, m, n):
        return self.coeffs.get((m, n), ZERO)

    def raw_partial(self, m, n):
        c = self.coeffs.get((m, n), ZERO)
        if not c:
            return c
        f = 1
        for i in range(2, m + 1):
            f *= i
        for i in range(2, n + 1):
            f *= i
        return c * f

    def value(self):
        return self.coeffs.get((0, 0), ZERO)

    def _check(self, other):
        if self.base != other.base:
            raise ValueError("jet base points differ")

    def __eq__(self, other):
        return (isinstance(other, TaylorJet2) and self.base == other.base
                and self.order == other.order and self.coeffs == other.coeffs)

    def __repr__(self):
        return "TaylorJet2(base=%s, order=%d, %s)" % (self.base, self.order,
                                                      dict(sorted(self.coeffs.items())))

    def __add__(self, other):
        if not isinstance(other, TaylorJet2):
            out = dict(self.coeffs)
            s = out.get((0, 0), ZERO) + other
            out[(0, 0)] = s
            return TaylorJet2(self.base, self.order, out)
        self._check(other)
        order = min(self.order, other.order)
        out = {mn: c for mn, c in self.coeffs.items() if mn[0] + mn[1] <= order}
        for mn, c in other.coeffs.items():
            if mn[0] + mn[1] <= order:
                out[mn] = out.get(mn, ZERO) + c
        return TaylorJet2(self.base, order, out)

    __radd__ = __add__

    def __neg__(self):
        return TaylorJet2(self.base, self.order,
                          {mn: -c for mn, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, TaylorJet2) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TaylorJet2):
            if not other:
                return TaylorJet2(self.base, self.order, {})
            return TaylorJet2(self.base, self.order,
                              {mn: c * other for mn, c in self.coeffs.items()})
        self._check(other)
        order = min(self.order, other.order)
        out = {}
        for (m1, n1), c1 in self.coeffs.items():
            for (m2, n2), c2 in other.coeffs.items():
                m, n = m1 + m2, n1 + n2
                if m + n <= order:
                    key = (m, n)
                    out[key] = out.get(key, ZERO) + c1 * c2
        return TaylorJet2(self.base, order, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TaylorJet2):
            return self * (ONE / other)
        self._check(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def reciprocal(self):
        c0 = self.value()
        if not c0:
            raise EvalError("jet has zero value part; cannot invert at (%s, %s)"
                            % self.base)
        inv0 = ONE / c0
        # Newton iteration r <- r(2 - s r) doubles the correct order
        r = TaylorJet2(self.base, self.order, {(0, 0): inv0})
        k = 1
        while k <= self.order:
            r = r * (2 - self * r)
            k *= 2
        return TaylorJet2(self.base, self.order, r.coeffs)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("jet powers must be integers")
        if n < 0:
            return self.reciprocal() ** (-n)
        out = TaylorJet2.constant(ONE, self.base, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def deriv(self, axis):
        """Jet of the partial derivative along axis 1 (x) or 2 (y);
        drops one order."""
        out = {}
        for (m, n), c in self.coeffs.items():
            if axis == 1 and m > 0:
                out[(m - 1, n)] = c * m
            elif axis == 2 and n > 0:
                out[(m, n - 1)] = c * n
        return TaylorJet2(self.base, self.order - 1, out)

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise jet order by truncation")
        return TaylorJet2(self.base, order,
                          {mn: c for mn, c in self.coeffs.items()
                           if mn[0] + mn[1] <= order})

    def shift(self, new_base):
        """Re-expand around a new base point (exact, since jets are
        polynomials)."""
        dx = new_base[0] - self.base[0]
        dy = new_base[1] - self.base[1]
        xj = TaylorJet2(new_base, self.order, {(0, 0): dx, (1, 0): ONE})
        yj = TaylorJet2(new_base, self.order, {(0, 0): dy, (0, 1): ONE})
        return compose(self, xj, yj)


def compose(g, f1, f2):
    """Substitute jets f1, f2 (sharing a base point) for the shifted
    variables of g.  The value parts of (f1, f2) must equal g's base."""
    if (f1.value(), f2.value()) != g.base:
        raise ValueError("inner jet values do not match outer base point")
    base = f1.base
    order = min(g.order, f1.order, f2.order)
    u = f1 + (-f1.value())   # vanishing value parts
    v = f2 + (-f2.value())
    u = u.truncate(order)
    v = v.truncate(order)
    # Horner in v, then in u: g = sum_m u^m (sum_n g_{mn} v^n)
    by_m = {}
    for (m, n), c in g.coeffs.items():
        if m + n <= order:
            by_m.setdefault(m, {})[n] = c
    out = TaylorJet2(base, order, {})
    for m in sorted(by_m, reverse=True):
        row = by_m[m]
        acc = TaylorJet2(base, order, {})
        for n in range(max(row), -1, -1):
            acc = acc * v + row.get(n, ZERO)
        term = acc
        for _ in range(m):
            term = term * u
        out = out + term
    return out


def taylor(e, p, k):
    """Taylor jet of an expression at p to order k.  Raises EvalError if
    a division hits a denominator vanishing at p."""
    base = (rat(p[0]), rat(p[1]))

    def go(e):
        if isinstance(e, Const):
            return TaylorJet2.constant(e.value, base, k)
        if isinstance(e, Var):
            return TaylorJet2.variable(e.name, base, k)
        if isinstance(e, Neg):
            return -go(e.a)
        if isinstance(e, Add):
            return go(e.a) + go(e.b)
        if isinstance(e, Sub):
            return go(e.a) - go(e.b)
        if isinstance(e, Mul):
            return go(e.a) * go(e.b)
        if isinstance(e, Div):
            return go(e.a) / go(e.b)
        if isinstance(e, Pow):
            return go(e.a) ** e.n
        raise TypeError("not an expression: %r" % (e,))

    return go(e)


def section_jet(coeffs, p, k):
    """Jet of the coefficient section (a0, a1, a2, a3) at p to order k.

    Returns a jetpoly.SectionJet whose fiber coordinate u^i carries the
    partials of a^(i-1).
    """
    from .jetpoly import SectionJet
    base = (rat(p[0]), rat(p[1]))
    jets = [taylor(e, base, k) for e in coeffs]
    u = {}
    for i, jet in enumerate(jets, start=1):
        for (m, n) in jet.coeffs:
            val = jet.raw_partial(m, n)
            if val:
                u[(i, m, n)] = val
    return SectionJet(base, k, u)
