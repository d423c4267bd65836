"""Exact linear algebra over a field, generic in the scalar ring.

Rows are Python lists.  Scalars are rationals or Duals (anything with
field operations and truthiness-as-nonzero).  Pivots must be units: for
Duals that means an invertible value part.  A column containing nonzero
entries but no unit signals a non-generic evaluation point and raises
PivotError rather than silently producing a wrong echelon form.
"""

from .rat import Q, ZERO, ONE
from .dual import is_unit


class PivotError(ArithmeticError):
    """No invertible pivot available in a column with nonzero entries."""


def rref(rows):
    """Reduced row echelon form (in place on a copied matrix).

    Returns (reduced_rows, pivot_columns).  The output is the canonical
    RREF of the row space, so equal row spaces give equal outputs.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if is_unit(rows[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            if any(rows[i][col] for i in range(r, len(rows))):
                raise PivotError("column %d has nonzero entries but no "
                                 "invertible pivot" % col)
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][col] if not isinstance(rows[r][col], int) else Q(1, rows[r][col])
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """Canonical basis of the solution space of (rows) v = 0.

    One basis vector per free column, with a unit entry in that column
    and the dependent entries filled from the RREF.
    """
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for col in range(ncols):
        if col in pivot_set:
            continue
        vec = [ZERO] * ncols
        vec[col] = ONE
        for r, pc in enumerate(pivots):
            v = red[r][col]
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def solve(rows, rhs):
    """Solve (rows) v = rhs.  Returns (particular_solution, nullspace
    basis); raises ValueError if inconsistent."""
    if not rows:
        raise ValueError("empty system")
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    sol = [ZERO] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = red[r][ncols]
    homo = [r[:ncols] for r in red]
    return sol, nullspace(homo, ncols)


def solve_unique(rows, rhs):
    sol, null = solve(rows, rhs)
    if null:
        raise ValueError("solution is not unique (nullity %d)" % len(null))
    return sol


def solve2(a, b, c, d, r1, r2):
    """Solve the 2x2 system [[a, b], [c, d]] (x, y) = (r1, r2) with an
    invertible matrix."""
    det = a * d - b * c
    if not is_unit(det):
        raise PivotError("2x2 system is singular")
    inv = 1 / det
    return ((d * r1 - b * r2) * inv, (a * r2 - c * r1) * inv)


def matvec(rows, v):
    out = []
    for r in rows:
        s = ZERO
        for a, b in zip(r, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def annihilator(basis, ncols):
    """Basis of the space of linear functionals vanishing on the span of
    the given vectors (as coefficient rows)."""
    return nullspace([list(b) for b in basis], ncols)
