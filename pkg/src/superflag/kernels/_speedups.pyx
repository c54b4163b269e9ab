# cython: language_level=3
"""Compiled twin of ``_pure``; same API, same semantics.

Scalars stay Python ints (they can exceed machine words), so the win here is
loop/dispatch overhead, not big-int arithmetic itself.
"""

from math import gcd

Q_ZERO = (0, 0, 0, 0, 1)
Q_ONE = (1, 0, 0, 0, 1)


cpdef tuple q_normalize(a, b, c, d, den):
    if den < 0:
        a, b, c, d, den = -a, -b, -c, -d, -den
    g = gcd(gcd(gcd(a, b), gcd(c, d)), den)
    if g > 1:
        return (a // g, b // g, c // g, d // g, den // g)
    return (a, b, c, d, den)


cpdef tuple q_add(tuple x, tuple y):
    a1, b1, c1, d1, n1 = x
    a2, b2, c2, d2, n2 = y
    if n1 == n2:
        return q_normalize(a1 + a2, b1 + b2, c1 + c2, d1 + d2, n1)
    return q_normalize(a1 * n2 + a2 * n1, b1 * n2 + b2 * n1,
                       c1 * n2 + c2 * n1, d1 * n2 + d2 * n1, n1 * n2)


cpdef tuple q_neg(tuple x):
    a, b, c, d, den = x
    return (-a, -b, -c, -d, den)


cpdef tuple q_sub(tuple x, tuple y):
    return q_add(x, q_neg(y))


cpdef tuple q_mul(tuple x, tuple y):
    a1, b1, c1, d1, n1 = x
    a2, b2, c2, d2, n2 = y
    return q_normalize(
        a1 * a2 - b1 * b2 + 2 * (c1 * c2 - d1 * d2),
        a1 * b2 + b1 * a2 + 2 * (c1 * d2 + d1 * c2),
        a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2,
        a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        n1 * n2,
    )


cpdef tuple q_inv(tuple x):
    a, b, c, d, den = x
    e = a * a + b * b + 2 * (c * c + d * d)
    if e == 0:
        raise ZeroDivisionError("inverse of zero field element")
    f = 2 * (a * c + b * d)
    g = e * e - 2 * f * f
    return q_normalize(
        den * (a * e - 2 * c * f),
        den * (-b * e + 2 * d * f),
        den * (c * e - a * f),
        den * (-d * e + b * f),
        g,
    )


cpdef tuple merge_odd(tuple u, tuple v):
    cdef Py_ssize_t i, j, nu, nv
    cdef long swaps
    if not u:
        return (1, v)
    if not v:
        return (1, u)
    out = []
    i = 0
    j = 0
    nu = len(u)
    nv = len(v)
    swaps = 0
    while i < nu and j < nv:
        a = u[i]
        b = v[j]
        if a == b:
            return (0, ())
        if a < b:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
            swaps += nu - i
    out.extend(u[i:])
    out.extend(v[j:])
    return ((1 if swaps % 2 == 0 else -1), tuple(out))


cpdef tuple mul_even(tuple p, tuple q):
    cdef Py_ssize_t i, j, np_, nq
    if not p:
        return q
    if not q:
        return p
    out = []
    i = 0
    j = 0
    np_ = len(p)
    nq = len(q)
    while i < np_ and j < nq:
        vi, ei = p[i]
        vj, ej = q[j]
        if vi == vj:
            out.append((vi, ei + ej))
            i += 1
            j += 1
        elif vi < vj:
            out.append(p[i])
            i += 1
        else:
            out.append(q[j])
            j += 1
    out.extend(p[i:])
    out.extend(q[j:])
    return tuple(out)
