"""Small exact linear algebra over field elements.

Works generically over any value type with field semantics exposed as
``+ - * /`` plus an ``is_zero()``-or-falsy test; used with rational
functions in the parameters and with plain rationals (for specialized rank
certificates).  Everything is deterministic: pivots are chosen first-come
in row order.
"""

from typing import List, Optional


def _is_zero(x) -> bool:
    z = getattr(x, "is_zero", None)
    if z is not None:
        return z()
    return not x


def rank(rows: List[list]) -> int:
    """Exact rank by Gaussian elimination (destructive on a copy)."""
    if not rows:
        return 0
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    rk = 0
    for c in range(ncols):
        piv = None
        for r in range(rk, nrows):
            if not _is_zero(m[r][c]):
                piv = r
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        pv = m[rk][c]
        for r in range(rk + 1, nrows):
            if _is_zero(m[r][c]):
                continue
            factor = m[r][c] / pv
            row = m[r]
            prow = m[rk]
            for cc in range(c, ncols):
                row[cc] = row[cc] - factor * prow[cc]
        rk += 1
        if rk == nrows:
            break
    return rk


def solve_columns(columns: List[list], rhs: list, zero, one) -> Optional[list]:
    """Solve sum_c x_c * columns[c] = rhs exactly.

    The system may be (heavily) overdetermined; a solution is returned only
    if it satisfies *every* equation, else None.  Columns with no pivot get
    coefficient zero.  ``zero``/``one`` are the field constants.
    """
    ncols = len(columns)
    nrows = len(rhs)
    if any(len(col) != nrows for col in columns):
        raise ValueError("column length mismatch")
    # augmented rows
    m = [[columns[c][r] for c in range(ncols)] + [rhs[r]] for r in range(nrows)]
    pivot_row_of: dict = {}
    used: set = set()
    for c in range(ncols):
        piv = None
        for r in range(nrows):
            if r not in used and not _is_zero(m[r][c]):
                piv = r
                break
        if piv is None:
            continue
        used.add(piv)
        pivot_row_of[c] = piv
        pv = m[piv][c]
        for r in range(nrows):
            if r == piv or _is_zero(m[r][c]):
                continue
            factor = m[r][c] / pv
            row = m[r]
            prow = m[piv]
            for cc in range(c, ncols + 1):
                row[cc] = row[cc] - factor * prow[cc]
    x = [zero] * ncols
    for c, r in pivot_row_of.items():
        x[c] = m[r][ncols] / m[r][c]
    # full verification against the original system
    for r in range(nrows):
        acc = zero
        for c in range(ncols):
            if not _is_zero(x[c]):
                acc = acc + columns[c][r] * x[c]
        if not _is_zero(acc - rhs[r]):
            return None
    return x


def kernel_basis(rows: List[list], zero, one) -> List[list]:
    """Basis of the right kernel {x : rows @ x = 0}, exact RREF."""
    if not rows:
        return []
    nrows, ncols = len(rows), len(rows[0])
    m = [list(r) for r in rows]
    pivots = []  # (row, col)
    rk = 0
    for c in range(ncols):
        piv = None
        for r in range(rk, nrows):
            if not _is_zero(m[r][c]):
                piv = r
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        pv = m[rk][c]
        m[rk] = [v / pv for v in m[rk]]
        for r in range(nrows):
            if r != rk and not _is_zero(m[r][c]):
                factor = m[r][c]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rk])]
        pivots.append((rk, c))
        rk += 1
        if rk == nrows:
            break
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for r, c in pivots:
            vec[c] = zero - m[r][free]
        basis.append(vec)
    return basis
