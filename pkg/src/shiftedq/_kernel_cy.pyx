# cython: language_level=3
"""Cython build of the sparse Laurent-dict kernels (see _kernel_py).

Coefficients are arbitrary Python numbers (Fraction / GaussianRational);
the win over the pure fallback comes from C-API dict access without
method-lookup overhead in the inner loops.
"""

from cpython.dict cimport PyDict_DelItem, PyDict_GetItem, PyDict_SetItem
from cpython.object cimport PyObject

BACKEND = "cython"


def poly_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef PyObject *ptr
    cdef object e, c, s
    for e, c in b.items():
        ptr = PyDict_GetItem(out, e)
        if ptr == NULL:
            PyDict_SetItem(out, e, c)
        else:
            s = (<object>ptr) + c
            if s:
                PyDict_SetItem(out, e, s)
            else:
                PyDict_DelItem(out, e)
    return out


def poly_sub(dict a, dict b):
    cdef dict out = dict(a)
    cdef PyObject *ptr
    cdef object e, c, s
    for e, c in b.items():
        ptr = PyDict_GetItem(out, e)
        if ptr == NULL:
            PyDict_SetItem(out, e, -c)
        else:
            s = (<object>ptr) - c
            if s:
                PyDict_SetItem(out, e, s)
            else:
                PyDict_DelItem(out, e)
    return out


def poly_neg(dict a):
    cdef dict out = {}
    cdef object e, c
    for e, c in a.items():
        PyDict_SetItem(out, e, -c)
    return out


def poly_mul(dict a, dict b):
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    cdef dict out = {}
    cdef PyObject *ptr
    cdef object ea, ca, eb, cb, e, p, s
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            p = ca * cb
            ptr = PyDict_GetItem(out, e)
            if ptr == NULL:
                PyDict_SetItem(out, e, p)
            else:
                s = (<object>ptr) + p
                if s:
                    PyDict_SetItem(out, e, s)
                else:
                    PyDict_DelItem(out, e)
    return out


def poly_scale(dict a, c, long shift=0):
    if not c:
        return {}
    cdef dict out = {}
    cdef object e, co
    for e, co in a.items():
        PyDict_SetItem(out, e + shift, co * c)
    return out


def exps_combine(dict a, dict b, int sign):
    cdef dict out = dict(a)
    cdef PyObject *ptr
    cdef object k, e, s
    for k, e in b.items():
        ptr = PyDict_GetItem(out, k)
        if sign == 1:
            s = e if ptr == NULL else (<object>ptr) + e
        else:
            s = -e if ptr == NULL else (<object>ptr) - e
        if s:
            PyDict_SetItem(out, k, s)
        elif ptr != NULL:
            PyDict_DelItem(out, k)
    return out
