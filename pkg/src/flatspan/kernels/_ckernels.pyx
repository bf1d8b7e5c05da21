# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the residual grouping and coverage kernels.

Arithmetic is int64 with explicit overflow checks; any overflow hands the
call to the Python kernel, so results never depend on the backend.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport INT64_MIN, int64_t, uint64_t

from . import _pykernels

cnp.import_array()

cdef extern from *:
    """
    static inline int fs_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int fs_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int fs_popcount(unsigned long long x) {
        return __builtin_popcountll(x);
    }
    """
    int fs_mul_ovf(long long a, long long b, long long *r) nogil
    int fs_sub_ovf(long long a, long long b, long long *r) nogil
    int fs_popcount(unsigned long long x) nogil


cdef inline int64_t _gcd(int64_t a, int64_t b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _reduce(int64_t[:, ::1] R, int64_t[::1] piv, int64_t[::1] v) nogil:
    """Eliminate pivots from v in place, keeping v primitive; 1 on overflow."""
    cdef Py_ssize_t r, j, D = v.shape[0]
    cdef int64_t a, b, g
    cdef long long t1, t2
    for r in range(R.shape[0]):
        b = v[piv[r]]
        if b == 0:
            continue
        a = R[r, piv[r]]
        g = _gcd(a, b)
        a //= g
        b //= g
        for j in range(D):
            if fs_mul_ovf(a, v[j], &t1) or fs_mul_ovf(b, R[r, j], &t2) or fs_sub_ovf(t1, t2, &t1):
                return 1
            if t1 == INT64_MIN:  # would overflow on negation in _gcd
                return 1
            v[j] = t1
        g = 0
        for j in range(D):
            g = _gcd(g, v[j])
        if g > 1:
            for j in range(D):
                v[j] //= g
    return 0


cdef void _canonical(int64_t[::1] v) nogil:
    cdef Py_ssize_t j, D = v.shape[0]
    cdef int64_t g = 0, lead = 0
    for j in range(D):
        g = _gcd(g, v[j])
        if lead == 0:
            lead = v[j]
    if g == 0:
        return
    if lead < 0:
        g = -g
    for j in range(D):
        v[j] //= g


cdef Py_ssize_t _group_rows(int64_t[:, ::1] rows, int64_t[::1] table,
                            int64_t[::1] gid, int64_t[::1] rep) nogil:
    """Assign equal rows equal group ids via open addressing; returns the group count."""
    cdef Py_ssize_t n = rows.shape[0], D = rows.shape[1], mask = table.shape[0] - 1
    cdef Py_ssize_t i, j, slot, groups = 0
    cdef uint64_t h
    cdef int64_t other
    cdef int same
    for i in range(n):
        h = 1469598103934665603ULL
        for j in range(D):
            h = (h ^ <uint64_t>rows[i, j]) * 1099511628211ULL
        slot = <Py_ssize_t>(h & <uint64_t>mask)
        while True:
            other = table[slot]
            if other < 0:
                table[slot] = groups
                rep[groups] = i
                gid[i] = groups
                groups += 1
                break
            same = 1
            for j in range(D):
                if rows[rep[other], j] != rows[i, j]:
                    same = 0
                    break
            if same:
                gid[i] = other
                break
            slot = (slot + 1) & mask
    return groups


class ResidualKernel:
    """Drop-in replacement for the Python kernel of the same name."""

    backend = "cython"

    def __init__(self, points):
        self.py = _pykernels.ResidualKernel(points)
        pts = [tuple(p) for p in points]
        dim = len(pts[0]) if pts else 0
        # raises OverflowError for entries beyond int64; caller falls back
        self.P = np.array(pts, dtype=np.int64).reshape(len(pts), dim)
        self.n = len(pts)
        self.dim = dim
        self.words = max(1, (self.n + 63) // 64)

    def classes(self, rows, pivots, incident):
        cdef Py_ssize_t n = self.n, D = self.dim, i, j, cnt = 0, g
        try:
            R_arr = np.array(rows, dtype=np.int64).reshape(len(rows), D)
        except OverflowError:
            return self.py.classes(rows, pivots, incident)
        cdef int64_t[:, ::1] R = R_arr
        cdef int64_t[::1] piv = np.array(pivots, dtype=np.int64).reshape(len(pivots))
        skip_arr = np.zeros(n, dtype=np.uint8)
        for i in incident:
            skip_arr[i] = 1
        cdef cnp.uint8_t[::1] skip = skip_arr
        cdef int64_t[:, ::1] P = self.P
        res_arr = np.empty((n, D), dtype=np.int64)
        idx_arr = np.empty(n, dtype=np.int64)
        cdef int64_t[:, ::1] res = res_arr
        cdef int64_t[::1] idx = idx_arr
        cdef int overflow = 0
        cdef int zero
        with nogil:
            for i in range(n):
                if skip[i]:
                    continue
                for j in range(D):
                    res[cnt, j] = P[i, j]
                if _reduce(R, piv, res[cnt]):
                    overflow = 1
                    break
                zero = 1
                for j in range(D):
                    if res[cnt, j] != 0:
                        zero = 0
                        break
                if zero:
                    overflow = 2
                    break
                _canonical(res[cnt])
                idx[cnt] = i
                cnt += 1
        if overflow == 1:
            return self.py.classes(rows, pivots, incident)
        if overflow == 2:
            raise ValueError(f"point {i} lies on the flat but is not incident")
        if cnt == 0:
            return {}
        cdef Py_ssize_t W = self.words, groups
        gid_arr = np.empty(cnt, dtype=np.int64)
        rep_arr = np.empty(cnt, dtype=np.int64)
        cdef int64_t[::1] gid = gid_arr
        cdef int64_t[::1] rep = rep_arr
        cdef Py_ssize_t size = 1
        while size < 2 * cnt:
            size <<= 1
        table_arr = np.full(size, -1, dtype=np.int64)
        cdef int64_t[::1] table = table_arr
        words_arr = np.zeros((cnt, W), dtype=np.uint64)
        cdef uint64_t[:, ::1] words = words_arr
        cdef uint64_t one = 1
        with nogil:
            groups = _group_rows(res[:cnt], table, gid, rep)
            for j in range(cnt):
                i = idx[j]
                words[gid[j], i >> 6] |= one << (i & 63)
        out = {}
        for g in range(groups):
            key = tuple(res_arr[rep_arr[g]].tolist())
            out[key] = int.from_bytes(words_arr[g].astype("<u8").tobytes(), "little")
        return out


def coverage_gains(cnp.ndarray masks, cnp.ndarray covered):
    """Popcount of each row of ``masks`` outside ``covered``."""
    cdef Py_ssize_t C = masks.shape[0], W, r, w
    out_arr = np.zeros(C, dtype=np.int64)
    if C == 0:
        return out_arr
    m_arr = np.ascontiguousarray(masks, dtype=np.uint64)
    c_arr = np.ascontiguousarray(covered, dtype=np.uint64)
    cdef uint64_t[:, ::1] M = m_arr
    cdef uint64_t[::1] cov = c_arr
    cdef int64_t[::1] out = out_arr
    cdef int64_t s
    W = M.shape[1]
    with nogil:
        for r in range(C):
            s = 0
            for w in range(W):
                s += fs_popcount(M[r, w] & ~cov[w])
            out[r] = s
    return out_arr
