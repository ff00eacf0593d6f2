# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled character-sum kernel; same contract as k3i19._pykernel.char_sum."""

from array import array


def char_sum(long long p, int n, long long d, chi, coeffs, Py_ssize_t t_lo, Py_ssize_t t_hi):
    cdef long long[:] chi_v = _as_array(chi)
    cdef long long[:] cf = _as_array(coeffs)
    if n == 1:
        return _sum_prime(p, chi_v, cf, t_lo, t_hi)
    if n == 2:
        return _sum_quadratic(p, d, chi_v, cf, t_lo, t_hi)
    raise ValueError("kernel supports extension degree 1 or 2")


cdef object _as_array(obj):
    if isinstance(obj, array) and obj.typecode == "q":
        return obj
    return array("q", obj)


cdef long long _sum_prime(long long p, long long[:] chi, long long[:] cf,
                          Py_ssize_t t_lo, Py_ssize_t t_hi):
    cdef long long total = 0, c2, c1, c0, x, x2, v
    cdef Py_ssize_t j
    for j in range(t_lo, t_hi):
        c2 = cf[6 * j]
        c1 = cf[6 * j + 2]
        c0 = cf[6 * j + 4]
        for x in range(p):
            x2 = x * x % p
            v = (x2 * x + c2 * x2 + c1 * x + c0) % p
            total += chi[v]
    return total


cdef long long _sum_quadratic(long long p, long long d, long long[:] chi, long long[:] cf,
                              Py_ssize_t t_lo, Py_ssize_t t_hi):
    cdef long long total = 0
    cdef long long a0, a1, b0, b1, e0, e1, x0, x1, s0, s1, k0, k1, v0, v1
    cdef Py_ssize_t j, i, q = p * p
    cdef long long[:] pre = array("q", [0]) * (6 * q)
    for i in range(q):
        x0 = i % p
        x1 = i // p
        s0 = (x0 * x0 + d * x1 * x1) % p
        s1 = (2 * x0 * x1) % p
        pre[6 * i] = x0
        pre[6 * i + 1] = x1
        pre[6 * i + 2] = s0
        pre[6 * i + 3] = s1
        pre[6 * i + 4] = (s0 * x0 + d * s1 * x1) % p
        pre[6 * i + 5] = (s0 * x1 + s1 * x0) % p
    for j in range(t_lo, t_hi):
        a0 = cf[6 * j]
        a1 = cf[6 * j + 1]
        b0 = cf[6 * j + 2]
        b1 = cf[6 * j + 3]
        e0 = cf[6 * j + 4]
        e1 = cf[6 * j + 5]
        for i in range(q):
            x0 = pre[6 * i]
            x1 = pre[6 * i + 1]
            s0 = pre[6 * i + 2]
            s1 = pre[6 * i + 3]
            v0 = (pre[6 * i + 4] + a0 * s0 + d * a1 * s1 + b0 * x0 + d * b1 * x1 + e0) % p
            v1 = (pre[6 * i + 5] + a0 * s1 + a1 * s0 + b0 * x1 + b1 * x0 + e1) % p
            total += chi[v0 + p * v1]
    return total
