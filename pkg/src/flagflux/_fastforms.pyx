# cython: language_level=3
"""Compiled kernel for sparse exterior-form arithmetic.

Same contract as _pyforms: dicts keyed by strictly increasing index
tuples with exact int/Fraction coefficients.  Index merging and sign
bookkeeping run on C ints; coefficients stay Python objects so the
arithmetic remains exact and unbounded.
"""

from fractions import Fraction

BACKEND = "compiled"

DEF MAXDEG = 64


cdef inline object _norm(object c):
    if type(c) is Fraction and (<object>c).denominator == 1:
        return int(c)
    return c


cdef int _merge(tuple left, tuple right, long *buf, int *signp) except -1:
    cdef int ni = len(left)
    cdef int nj = len(right)
    cdef int i = 0, j = 0, k = 0
    cdef long inv = 0
    cdef long a, b
    if ni + nj > MAXDEG:
        raise OverflowError("form degree beyond kernel limit")
    while i < ni and j < nj:
        a = left[i]
        b = right[j]
        if a == b:
            signp[0] = 0
            return 0
        if a < b:
            buf[k] = a
            k += 1
            i += 1
        else:
            buf[k] = b
            k += 1
            inv += ni - i
            j += 1
    while i < ni:
        buf[k] = left[i]
        k += 1
        i += 1
    while j < nj:
        buf[k] = right[j]
        k += 1
        j += 1
    signp[0] = -1 if inv & 1 else 1
    return k


cdef inline tuple _astuple(long *buf, int n):
    cdef int i
    return tuple([buf[i] for i in range(n)])


def merge_indices(left, right):
    """Merge two increasing index tuples, returning (merged, sign)."""
    cdef long buf[MAXDEG]
    cdef int sign = 0
    cdef int n = _merge(tuple(left), tuple(right), buf, &sign)
    if sign == 0:
        return (), 0
    return _astuple(buf, n), sign


def add_terms(a, b):
    out = dict(a)
    for key, c in (<dict>b).items():
        s = out.get(key, 0) + c
        if s:
            out[key] = _norm(s)
        elif key in out:
            del out[key]
    return out


def scale_terms(a, c):
    if not c:
        return {}
    out = {}
    for key, v in (<dict>a).items():
        out[key] = _norm(v * c)
    return out


def wedge_terms(a, b):
    cdef long buf[MAXDEG]
    cdef int sign = 0
    cdef int n
    out = {}
    for ka, ca in (<dict>a).items():
        for kb, cb in (<dict>b).items():
            n = _merge(<tuple>ka, <tuple>kb, buf, &sign)
            if sign == 0:
                continue
            key = _astuple(buf, n)
            s = out.get(key, 0) + (ca * cb if sign > 0 else -(ca * cb))
            if s:
                out[key] = _norm(s)
            elif key in out:
                del out[key]
    return out


def interior_terms(x, a):
    cdef long target = x
    cdef int p
    cdef tuple key
    out = {}
    for key_obj, c in (<dict>a).items():
        key = <tuple>key_obj
        p = -1
        for q in range(len(key)):
            if <long>key[q] == target:
                p = q
                break
        if p < 0:
            continue
        rest = key[:p] + key[p + 1:]
        s = out.get(rest, 0) + (-c if p & 1 else c)
        if s:
            out[rest] = _norm(s)
        elif rest in out:
            del out[rest]
    return out


def ce_terms(diffs, a):
    """Antiderivation extension of de^k = diffs[k-1] applied to a term map."""
    cdef long buf[MAXDEG]
    cdef int sign = 0
    cdef int n, p
    cdef tuple key
    dseq = list(diffs)
    out = {}
    for key_obj, c in (<dict>a).items():
        key = <tuple>key_obj
        for p in range(len(key)):
            dterms = dseq[<long>key[p] - 1]
            if not dterms:
                continue
            rest = key[:p] + key[p + 1:]
            cp = -c if p & 1 else c
            for dk, dc in (<dict>dterms).items():
                n = _merge(<tuple>dk, rest, buf, &sign)
                if sign == 0:
                    continue
                merged = _astuple(buf, n)
                s = out.get(merged, 0) + (cp * dc if sign > 0 else -(cp * dc))
                if s:
                    out[merged] = _norm(s)
                elif merged in out:
                    del out[merged]
    return out
