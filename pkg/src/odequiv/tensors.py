"""Small tensors at a point of the plane, and exact fifth-root scalars.

TensorComp holds a tensor with at most one contravariant slot, up to
three symmetric covariant slots, and an area-form weight.  ScaledRational
represents r*t^e where t is the real fifth root of the third relative
invariant; all frame-dependent scalars live in this form so invariance
checks stay exact.
"""

from itertools import product

from .rat import Q, ZERO, ONE
from .dual import is_unit


class TensorComp:
    """Componentwise tensor of signature (r, s, w): r in {0,1}
    contravariant slots, s symmetric covariant slots, area-form weight
    w.  Components are keyed (i, m, n): contravariant index i (0 when
    r = 0) and covariant multidegree (m, n) with m + n = s."""

    __slots__ = ("r", "s", "w", "comps")

    def __init__(self, r, s, w, comps=None):
        if r not in (0, 1) or not 0 <= s <= 3 or not 0 <= w <= 5:
            raise ValueError("unsupported tensor signature (%d, %d, %d)" % (r, s, w))
        self.r = r
        self.s = s
        self.w = w
        self.comps = {}
        if comps:
            for (i, m, n), v in comps.items():
                if (i != 0) != (r == 1):
                    raise ValueError("contravariant index inconsistent with rank")
                if m + n != s:
                    raise ValueError("covariant multidegree inconsistent with rank")
                if v:
                    self.comps[(i, m, n)] = v

    def value(self, i, m, n):
        return self.comps.get((i, m, n), ZERO)

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return (isinstance(other, TensorComp) and (self.r, self.s, self.w) ==
                (other.r, other.s, other.w) and self.comps == other.comps)

    def __repr__(self):
        return "TensorComp(r=%d, s=%d, w=%d, %s)" % (
            self.r, self.s, self.w, dict(sorted(self.comps.items())))

    def __add__(self, other):
        if (self.r, self.s, self.w) != (other.r, other.s, other.w):
            raise ValueError("tensor signature mismatch")
        out = dict(self.comps)
        for k, v in other.comps.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return TensorComp(self.r, self.s, self.w, out)

    def __neg__(self):
        return TensorComp(self.r, self.s, self.w,
                          {k: -v for k, v in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if not c:
            return TensorComp(self.r, self.s, self.w, {})
        return TensorComp(self.r, self.s, self.w,
                          {k: v * c for k, v in self.comps.items()})

    __rmul__ = __mul__

    def transform(self, A):
        """Change components under a change of coordinates whose inverse
        has Jacobian A at the image point (A as 2x2 nested tuples):
        covariant slots contract with A, the contravariant slot with
        A^(-1), and the area weight contributes det(A)^w."""
        det = A[0][0] * A[1][1] - A[0][1] * A[1][0]
        if not is_unit(det):
            raise ValueError("singular change of coordinates")
        inv = 1 / det
        B = ((A[1][1] * inv, -A[0][1] * inv),
             (-A[1][0] * inv, A[0][0] * inv))
        scale = ONE
        e = self.w
        f = det if e >= 0 else inv
        for _ in range(abs(e)):
            scale = scale * f
        out = {}
        uprange = (1, 2) if self.r == 1 else (0,)
        for i_new in uprange:
            for mhat in range(self.s + 1):
                nhat = self.s - mhat
                jt = (1,) * mhat + (2,) * nhat
                total = ZERO
                for a in uprange:
                    up = B[i_new - 1][a - 1] if self.r == 1 else ONE
                    if self.r == 1 and not up:
                        continue
                    for bs in product((1, 2), repeat=self.s):
                        m = sum(1 for b in bs if b == 1)
                        v = self.comps.get((a, m, self.s - m))
                        if not v:
                            continue
                        factor = up
                        for b, j in zip(bs, jt):
                            factor = factor * A[b - 1][j - 1]
                        if factor:
                            total = total + v * factor
                if total:
                    out[(i_new, mhat, nhat)] = total * scale
        return TensorComp(self.r, self.s, self.w, out)


SWAP = ((Q(0), ONE), (ONE, Q(0)))


class ScaledRational:
    """r * t^e with t the real fifth root of a fixed nonzero rational
    (the third relative invariant at the working jet).  Sums require
    equal exponents; the zero element is exponent-agnostic."""

    __slots__ = ("r", "e")

    def __init__(self, r, e=0):
        if not r:
            e = 0
        self.r = r
        self.e = e

    def is_zero(self):
        return not self.r

    def __eq__(self, other):
        if not isinstance(other, ScaledRational):
            return NotImplemented
        if not self.r and not other.r:
            return True
        return self.r == other.r and self.e == other.e

    def __repr__(self):
        return "ScaledRational(%s, t^%d)" % (self.r, self.e)

    def __add__(self, other):
        if not isinstance(other, ScaledRational):
            raise TypeError("can only add ScaledRationals")
        if not other.r:
            return self
        if not self.r:
            return other
        if self.e != other.e:
            raise ValueError("exponent mismatch: t^%d vs t^%d" % (self.e, other.e))
        return ScaledRational(self.r + other.r, self.e)

    def __neg__(self):
        return ScaledRational(-self.r, self.e)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ScaledRational):
            return ScaledRational(self.r * other.r, self.e + other.e)
        return ScaledRational(self.r * other, self.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ScaledRational):
            if not other.r:
                raise ZeroDivisionError("division by zero ScaledRational")
            return ScaledRational(self.r / other.r, self.e - other.e)
        return ScaledRational(self.r / other, self.e)

    def fifth_power_key(self, f3):
        """r^5 * (t^5)^e = r^5 * f3^e: an exact rational that determines
        the real value (x -> x^5 is injective over the reals), usable
        for equality of scalars coming from different jets."""
        r5 = self.r ** 5
        if not r5:
            return r5 * ZERO
        e = self.e
        return r5 * (f3 ** e if e >= 0 else ONE / (f3 ** (-e)))

    def approx(self, f3):
        """Float approximation of the real value (display only)."""
        rv = float(self.r)
        fv = float(f3)
        mag = abs(fv) ** (self.e / 5.0)
        sign = 1.0
        if fv < 0 and self.e % 5 != 0:
            # odd real root: t < 0, so t^e flips sign for odd e
            sign = -1.0 if self.e % 2 else 1.0
        return rv * mag * sign


class Frame:
    """The invariant frame at a generic 3-jet: two tangent vectors with
    ScaledRational components."""

    __slots__ = ("xi1", "xi2")

    def __init__(self, xi1, xi2):
        self.xi1 = xi1
        self.xi2 = xi2

    def __eq__(self, other):
        return (isinstance(other, Frame) and self.xi1 == other.xi1
                and self.xi2 == other.xi2)

    def __repr__(self):
        return "Frame(xi1=%r, xi2=%r)" % (self.xi1, self.xi2)
