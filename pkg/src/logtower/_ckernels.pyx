# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels``; same signatures and semantics."""


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, la, lb
    cdef long va, vb
    cdef list out
    cdef tuple ta, tb
    if not a:
        return b
    if not b:
        return a
    la = len(a)
    lb = len(b)
    out = []
    while i < la and j < lb:
        ta = <tuple>a[i]
        tb = <tuple>b[j]
        va = ta[0]
        vb = tb[0]
        if va == vb:
            out.append((va, <long>ta[1] + <long>tb[1]))
            i += 1
            j += 1
        elif va < vb:
            out.append(ta)
            i += 1
        else:
            out.append(tb)
            j += 1
    while i < la:
        out.append(a[i])
        i += 1
    while j < lb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef object mono_div(tuple a, tuple b):
    cdef Py_ssize_t i = 0, la = len(a)
    cdef long vb, eb, e
    cdef list out = []
    cdef tuple tb, ta
    if not b:
        return a
    for tb in b:
        vb = tb[0]
        eb = tb[1]
        while i < la and <long>(<tuple>a[i])[0] < vb:
            out.append(a[i])
            i += 1
        if i == la:
            return None
        ta = <tuple>a[i]
        if <long>ta[0] != vb:
            return None
        e = <long>ta[1] - eb
        if e < 0:
            return None
        if e:
            out.append((vb, e))
        i += 1
    while i < la:
        out.append(a[i])
        i += 1
    return tuple(out)


cpdef dict add_terms(dict p, dict q):
    cdef dict out
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


cpdef dict sub_terms(dict p, dict q):
    cdef dict out = dict(p)
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


cpdef dict mul_terms(dict p, dict q):
    cdef dict out = {}
    cdef tuple m
    if len(p) < len(q):
        p, q = q, p
    for m2, c2 in q.items():
        for m1, c1 in p.items():
            m = mono_mul(<tuple>m1, <tuple>m2)
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


cpdef dict scale_terms(dict p, object c):
    cdef dict out = {}
    for m, a in p.items():
        v = a * c
        if v:
            out[m] = v
    return out


cpdef dict mul_mono_terms(dict p, tuple mono, object c):
    cdef dict out = {}
    for m, a in p.items():
        v = a * c
        if v:
            out[mono_mul(<tuple>m, mono)] = v
    return out
