"""Forward-mode first-order dual numbers with sparse gradients.

A Dual carries a value and a dict mapping seed keys to partial
derivatives.  Arithmetic is ring-generic: values and gradient entries
may themselves be Duals, which gives second-order information when two
levels are nested.  All the linear algebra and invariant pipelines in
this package are written against plain arithmetic operators, so running
them over Duals yields derivatives of every output for free.
"""

from .rat import Q, ZERO


class Dual:
    __slots__ = ("val", "grad")

    def __init__(self, val, grad=None):
        self.val = val
        self.grad = grad if grad is not None else {}

    @classmethod
    def seed(cls, val, key, slope=1):
        return cls(val, {key: Q(slope) if isinstance(slope, int) else slope})

    def __bool__(self):
        if self.val:
            return True
        return any(bool(c) for c in self.grad.values())

    def __eq__(self, other):
        if isinstance(other, Dual):
            return self.val == other.val and _trim(self.grad) == _trim(other.grad)
        return self.val == other and not any(bool(c) for c in self.grad.values())

    def __hash__(self):
        raise TypeError("Dual is not hashable")

    def __repr__(self):
        return "Dual(%r, %r)" % (self.val, self.grad)

    def __neg__(self):
        return Dual(-self.val, {k: -c for k, c in self.grad.items()})

    def __add__(self, other):
        if isinstance(other, Dual):
            g = dict(self.grad)
            for k, c in other.grad.items():
                s = g.get(k, ZERO) + c
                if s:
                    g[k] = s
                elif k in g:
                    del g[k]
            return Dual(self.val + other.val, g)
        return Dual(self.val + other, dict(self.grad))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Dual) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Dual):
            g = {}
            for k, c in self.grad.items():
                p = c * other.val
                if p:
                    g[k] = p
            for k, c in other.grad.items():
                p = self.val * c
                if p:
                    s = g.get(k, ZERO) + p
                    if s:
                        g[k] = s
                    elif k in g:
                        del g[k]
            return Dual(self.val * other.val, g)
        if not other:
            return Dual(self.val * other, {})
        return Dual(self.val * other, {k: c * other for k, c in self.grad.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            inv = _invert(other)
            return self * inv
        return self * (Q(1) / other if isinstance(other, int) else 1 / other)

    def __rtruediv__(self, other):
        return _invert(self) * other

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("Dual powers must be integers")
        if n < 0:
            return _invert(self) ** (-n)
        out = Dual(_one_like(self.val), {})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


def _one_like(v):
    if isinstance(v, Dual):
        return Dual(_one_like(v.val), {})
    return Q(1)


def _invert(d):
    # 1/d needs an invertible value part; gradient by the quotient rule
    iv = 1 / d.val if not isinstance(d.val, Dual) else _invert(d.val)
    m = -(iv * iv)
    return Dual(iv, {k: m * c for k, c in d.grad.items()})


def _trim(grad):
    return {k: c for k, c in grad.items() if c}


def value(x):
    """Strip one level of Dual wrapping (identity on plain scalars)."""
    return x.val if isinstance(x, Dual) else x


def deep_value(x):
    while isinstance(x, Dual):
        x = x.val
    return x


def partial(x, key):
    """Gradient entry of x with respect to a seed key (0 if absent)."""
    if isinstance(x, Dual):
        return x.grad.get(key, ZERO)
    return ZERO


def is_unit(x):
    """Whether x is invertible: a nonzero scalar, or a Dual whose value is."""
    if isinstance(x, Dual):
        return is_unit(x.val)
    return bool(x)
