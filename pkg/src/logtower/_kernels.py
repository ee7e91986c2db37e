"""Pure-Python sparse polynomial kernels.

A monomial is a tuple of (var_id, exponent) pairs sorted by var_id; the
empty tuple is 1.  A term map is a dict monomial -> nonzero coefficient.
The compiled twin in ``_ckernels.pyx`` implements the same functions.
"""


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la = len(a)
    lb = len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_div(a, b):
    """a / b as a monomial, or None if b does not divide a."""
    if not b:
        return a
    out = []
    i = 0
    la = len(a)
    for vb, eb in b:
        while i < la and a[i][0] < vb:
            out.append(a[i])
            i += 1
        if i == la or a[i][0] != vb:
            return None
        e = a[i][1] - eb
        if e < 0:
            return None
        if e:
            out.append((vb, e))
        i += 1
    if i < la:
        out.extend(a[i:])
    return tuple(out)


def add_terms(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = dict(p)
    for m, c in q.items():
        old = out.get(m)
        if old is None:
            out[m] = c
        else:
            s = old + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def sub_terms(p, q):
    out = dict(p)
    for m, c in q.items():
        old = out.get(m)
        if old is None:
            out[m] = -c
        else:
            s = old - c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def mul_terms(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = {}
    for m2, c2 in q.items():
        for m1, c1 in p.items():
            m = mono_mul(m1, m2)
            c = c1 * c2
            old = out.get(m)
            if old is None:
                out[m] = c
            else:
                s = old + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out


def scale_terms(p, c):
    out = {}
    for m, a in p.items():
        v = a * c
        if v:
            out[m] = v
    return out


def mul_mono_terms(p, mono, c):
    """p * (c * mono)."""
    out = {}
    for m, a in p.items():
        v = a * c
        if v:
            out[mono_mul(m, mono)] = v
    return out
