"""Dense univariate polynomial helpers on coefficient lists.

Lists hold coefficients constant term first.  Elements only need ``+ - * /``
and truthiness for zero tests, so the same code serves Q and Q(a).
"""


def trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def add(a, b):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        if k < len(a) and k < len(b):
            out.append(a[k] + b[k])
        elif k < len(a):
            out.append(a[k])
        else:
            out.append(b[k])
    return trim(out)


def neg(a):
    return [-x for x in a]


def sub(a, b):
    return add(a, neg(b))


def mul(a, b):
    if not a or not b:
        return []
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def scale(a, s):
    return trim([x * s for x in a])


def divmod_(a, b):
    """Quotient and remainder of ``a`` by non-zero ``b``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], trim(r)
    inv = 1 / b[-1]
    q = [b[-1] * 0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] = r[k + j] - c * y
    return trim(q), trim(r[:db])


def monic(a):
    if not a:
        return []
    lc = a[-1]
    inv = 1 / lc
    return [x * inv for x in a]


def gcdex(a, b, one):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic (or empty)."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], s0, t0
    lc = r0[-1]
    inv = 1 / lc
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)
