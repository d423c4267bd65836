"""Exact rational arithmetic backend.

Uses gmpy2.mpq when available (much faster on the dense elimination
workloads), otherwise falls back to fractions.Fraction.  Both types
interoperate with Python ints and hash/compare identically, so the rest
of the package never needs to know which backend is active.
"""

try:
    from gmpy2 import mpq as Q
    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q
    BACKEND = "fractions"

ZERO = Q(0)
ONE = Q(1)


def rat(value):
    """Coerce an int, string like "-3/4", or existing rational to Q.

    Floats are rejected on purpose: every quantity in this package is
    exact and a float sneaking in would silently poison that.
    """
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, string, or rational")
    return Q(value)


def rat_str(q):
    """Serialize a rational as "p" or "p/q" (lowest terms)."""
    return str(q)


def binomial(n, k):
    """Binomial coefficient as a plain int."""
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out
