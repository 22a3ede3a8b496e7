# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_poly_py``.  Same signatures, same semantics.

Monomials are Python tuples and coefficients arbitrary exact numbers, so
the win over the pure kernel comes from compiled loop/dispatch overhead,
not from unboxing.  Keep in sync with ``_poly_py.py``.
"""


def grlex_key(mono):
    return (sum(mono), mono)


def p_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict r = dict(a)
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


def p_neg(dict a):
    cdef dict r = {}
    for m, c in a.items():
        r[m] = -c
    return r


def p_sub(dict a, dict b):
    if not b:
        return dict(a)
    cdef dict r = dict(a)
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


cdef inline tuple _tadd(tuple x, tuple y):
    cdef Py_ssize_t i, n = len(x)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = <object> x[i] + <object> y[i]
    return tuple(out)


def p_mul(dict a, dict b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    cdef dict r = {}
    cdef tuple m
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = _tadd(<tuple> ma, <tuple> mb)
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


def p_mul_term(dict a, tuple mono, coeff):
    if not a or not coeff:
        return {}
    cdef dict r = {}
    for m, c in a.items():
        r[_tadd(<tuple> m, mono)] = c * coeff
    return r


def p_mul_scalar(dict a, coeff):
    if not coeff:
        return {}
    cdef dict r = {}
    for m, c in a.items():
        r[m] = c * coeff
    return r


def p_lead(dict a):
    best = None
    bk = None
    for m in a:
        k = (sum(m), m)
        if bk is None or k > bk:
            bk = k
            best = m
    return best, a[best]


def p_total_degree(dict a):
    if not a:
        return -1
    cdef long long best = -1
    cdef long long s
    for m in a:
        s = sum(m)
        if s > best:
            best = s
    return best


def p_deg_in(dict a, Py_ssize_t i):
    if not a:
        return -1
    cdef long long best = -1
    cdef long long e
    for m in a:
        e = <object> (<tuple> m)[i]
        if e > best:
            best = e
    return best


def p_divmod(dict a, dict b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    mb_cb = p_lead(b)
    cdef tuple mb = <tuple> mb_cb[0]
    cb = mb_cb[1]
    cdef dict q = {}
    cdef dict r = {}
    cdef dict f = dict(a)
    cdef Py_ssize_t i, n
    cdef bint ok
    while f:
        mf_cf = p_lead(f)
        mf = mf_cf[0]
        cf = mf_cf[1]
        n = len(<tuple> mf)
        ok = True
        d_list = [0] * n
        for i in range(n):
            x = <object> (<tuple> mf)[i] - <object> mb[i]
            if x < 0:
                ok = False
                break
            d_list[i] = x
        if ok:
            d = tuple(d_list)
            qc = cf / cb
            q[d] = qc
            f = p_sub(f, p_mul_term(b, d, qc))
        else:
            r[mf] = cf
            del f[mf]
    return q, r


def p_eval_int(dict a, Py_ssize_t i, val):
    if not a:
        return {}
    cdef dict powers = {0: 1}
    cdef dict r = {}
    cdef tuple m, mm
    for m_, c in a.items():
        m = <tuple> m_
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
