"""Pure-Python polynomial kernel.

A polynomial lives in a fixed variable universe of size ``nvars`` and is a
dict mapping dense exponent tuples to nonzero coefficients.  Coefficients
are exact rationals (``_ratio.QQ``) except where noted: the arithmetic
helpers are coefficient-agnostic and are reused with plain ints by the gcd
machinery.

This module has a compiled twin (``_poly_cy.pyx``) with identical
signatures; ``_kernel`` picks one at import time.  Keep the two in sync.
"""


def grlex_key(mono):
    """Sort key for graded lexicographic term order."""
    return (sum(mono), mono)


def p_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    r = dict(a)
    for m, c in b.items():
        s = r.get(m)
        if s is None:
            r[m] = c
        else:
            s = s + c
            if s:
                r[m] = s
            else:
                del r[m]
    return r


def p_neg(a):
    return {m: -c for m, c in a.items()}


def p_sub(a, b):
    if not b:
        return dict(a)
    r = dict(a)
    for m, c in b.items():
        s = r.get(m)
        if s is None:
            r[m] = -c
        else:
            s = s - c
            if s:
                r[m] = s
            else:
                del r[m]
    return r


def p_mul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    r = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            c = r.get(m)
            if c is None:
                c = ca * cb
            else:
                c = c + ca * cb
            if c:
                r[m] = c
            elif m in r:
                del r[m]
    return r


def p_mul_term(a, mono, coeff):
    """Multiply by a single term ``coeff * x^mono``."""
    if not a or not coeff:
        return {}
    return {tuple(x + y for x, y in zip(m, mono)): c * coeff for m, c in a.items()}


def p_mul_scalar(a, coeff):
    if not coeff:
        return {}
    return {m: c * coeff for m, c in a.items()}


def p_lead(a):
    """Leading (mono, coeff) in graded-lex order.  ``a`` must be nonzero."""
    best = None
    bk = None
    for m in a:
        k = (sum(m), m)
        if bk is None or k > bk:
            bk = k
            best = m
    return best, a[best]


def p_total_degree(a):
    """Total degree; -1 for the zero polynomial."""
    if not a:
        return -1
    return max(sum(m) for m in a)


def p_deg_in(a, i):
    """Degree in variable ``i``; -1 for the zero polynomial."""
    if not a:
        return -1
    return max(m[i] for m in a)


def p_divmod(a, b):
    """Division with remainder by a single divisor, graded-lex leading terms.

    Coefficient division uses ``/`` and therefore requires field (QQ)
    coefficients.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    mb, cb = p_lead(b)
    q = {}
    r = {}
    f = dict(a)
    while f:
        mf, cf = p_lead(f)
        d = tuple(x - y for x, y in zip(mf, mb))
        if all(x >= 0 for x in d):
            qc = cf / cb
            q[d] = qc
            f = p_sub(f, p_mul_term(b, d, qc))
        else:
            r[mf] = cf
            del f[mf]
    return q, r


def p_eval_int(a, i, val):
    """Substitute the integer ``val`` for variable ``i``.

    Returns a dict whose monomials have a zero in slot ``i``.  Used with int
    coefficients by the heuristic gcd.
    """
    if not a:
        return {}
    powers = {0: 1}
    r = {}
    for m, c in a.items():
        e = m[i]
        p = powers.get(e)
        if p is None:
            p = val**e
            powers[e] = p
        mm = m[:i] + (0,) + m[i + 1 :]
        s = r.get(mm)
        if s is None:
            s = c * p
        else:
            s = s + c * p
        if s:
            r[mm] = s
        elif mm in r:
            del r[mm]
    return r
