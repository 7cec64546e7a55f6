# cython: boundscheck=False, wraparound=False
"""Compiled twins of the kernels in _kernels_py.

Coefficients stay generic Python objects (exact rationals or generator
polynomials); the win over the pure version is C-level loop and container
handling around the object arithmetic, plus unrolled construction of the
short exponent tuples that key every polynomial dict.
"""

BACKEND_NAME = "compiled"


def conv_trunc(list a, list b, Py_ssize_t n, zero):
    """Truncated Cauchy product: out[k] = sum_{i+j=k} a[i]*b[j] for k <= n."""
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    cdef Py_ssize_t i, j, imax, jmax
    cdef list out = [zero] * (n + 1)
    cdef object ai, bj
    imax = la - 1
    if imax > n:
        imax = n
    for i in range(imax + 1):
        ai = a[i]
        if not ai:
            continue
        jmax = lb - 1
        if jmax > n - i:
            jmax = n - i
        for j in range(jmax + 1):
            bj = b[j]
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


cdef inline tuple _add_keys(tuple ka, tuple kb, Py_ssize_t width):
    if width == 1:
        return (ka[0] + kb[0],)
    if width == 2:
        return (ka[0] + kb[0], ka[1] + kb[1])
    if width == 3:
        return (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
    if width == 4:
        return (
            ka[0] + kb[0],
            ka[1] + kb[1],
            ka[2] + kb[2],
            ka[3] + kb[3],
        )
    return tuple(x + y for x, y in zip(ka, kb))


def exp_mul_dict(dict da, dict db):
    """Product of exponent-keyed dicts {(e1,..,ek): coeff}; zeros dropped."""
    cdef dict out = {}
    cdef list items_b = list(db.items())
    cdef tuple ka, kb, k, pair
    cdef object va, vb, c, prev, s
    cdef Py_ssize_t width = 0
    for ka, va in da.items():
        width = len(ka)
        break
    for ka, va in da.items():
        for pair in items_b:
            kb = <tuple> pair[0]
            vb = pair[1]
            k = _add_keys(ka, kb, width)
            c = va * vb
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out


def exp_mul_dict_capped(dict da, dict db, Py_ssize_t cap):
    """Like exp_mul_dict but drops products of total degree > cap."""
    cdef dict out = {}
    cdef list items_b = []
    cdef tuple ka, kb, k, trip
    cdef object va, vb, c, prev, s, e
    cdef Py_ssize_t deg_b, da_deg, room
    cdef Py_ssize_t width = 0
    for kb, vb in db.items():
        deg_b = 0
        for e in kb:
            deg_b += <Py_ssize_t> e
        items_b.append((kb, deg_b, vb))
    for ka, va in da.items():
        width = len(ka)
        break
    for ka, va in da.items():
        da_deg = 0
        for e in ka:
            da_deg += <Py_ssize_t> e
        room = cap - da_deg
        for trip in items_b:
            deg_b = <Py_ssize_t> trip[1]
            if deg_b > room:
                continue
            kb = <tuple> trip[0]
            vb = trip[2]
            k = _add_keys(ka, kb, width)
            c = va * vb
            prev = out.get(k)
            if prev is None:
                out[k] = c
            else:
                s = prev + c
                if s:
                    out[k] = s
                else:
                    del out[k]
    return out
