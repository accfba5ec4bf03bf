# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled twins of the functions in ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, uint32_t, int64_t, uint64_t
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort, unique

cnp.import_array()


cdef extern from *:
    int __builtin_popcount(unsigned int) nogil


cdef inline int popcount32(uint32_t x) noexcept nogil:
    return __builtin_popcount(x)


cdef cnp.ndarray _as_int64(vector[int64_t]& v):
    cdef cnp.ndarray[int64_t, ndim=1] out = np.empty(v.size(), dtype=np.int64)
    cdef Py_ssize_t i
    for i in range(<Py_ssize_t>v.size()):
        out[i] = v[i]
    return out


cdef Py_ssize_t _distinct(const uint32_t[::1] codes, uint32_t mask, vector[uint32_t]& buf) noexcept nogil:
    cdef Py_ssize_t i, m = codes.shape[0]
    buf.resize(m)
    for i in range(m):
        buf[i] = codes[i] & mask
    sort(buf.begin(), buf.end())
    return unique(buf.begin(), buf.end()) - buf.begin()


def distinct_count(const uint32_t[::1] codes, mask):
    cdef vector[uint32_t] buf
    return _distinct(codes, <uint32_t>mask, buf)


def is_product(const uint32_t[::1] codes, masks):
    cdef const uint32_t[::1] ms = np.ascontiguousarray(masks, dtype=np.uint32)
    cdef vector[uint32_t] buf
    cdef Py_ssize_t target = codes.shape[0]
    cdef Py_ssize_t prod = 1
    cdef Py_ssize_t k
    with nogil:
        for k in range(ms.shape[0]):
            prod *= _distinct(codes, ms[k], buf)
            if prod > target:
                break
    return prod == target


def dependent_pairs(const uint32_t[::1] codes, int n):
    cdef vector[uint32_t] buf
    cdef vector[Py_ssize_t] singles
    cdef int i, j
    cdef uint32_t bi, m
    out = []
    singles.resize(n)
    for i in range(n):
        singles[i] = _distinct(codes, (<uint32_t>1) << (n - 1 - i), buf)
    for i in range(n):
        bi = (<uint32_t>1) << (n - 1 - i)
        for j in range(i + 1, n):
            m = bi | ((<uint32_t>1) << (n - 1 - j))
            if _distinct(codes, m, buf) != singles[i] * singles[j]:
                out.append((i, j))
    return out


def has_nontrivial_factor(const uint32_t[::1] codes, int n):
    if n < 2:
        return False
    cdef vector[uint32_t] buf
    cdef Py_ssize_t target = codes.shape[0]
    cdef uint32_t full = ((<uint32_t>1) << n) - 1
    cdef uint32_t top = (<uint32_t>1) << (n - 1)
    cdef uint32_t sub, a
    cdef bint found = False
    with nogil:
        for sub in range((<uint32_t>1) << (n - 1)):
            a = top | sub
            if a == full:
                continue
            if _distinct(codes, a, buf) * _distinct(codes, full ^ a, buf) == target:
                found = True
                break
    return found


def min_distances(const uint32_t[::1] t_codes, const uint32_t[::1] f_codes, weights):
    cdef const int64_t[::1] w = np.ascontiguousarray(weights, dtype=np.int64)
    cdef int n = w.shape[0]
    cdef Py_ssize_t nt = t_codes.shape[0], nf = f_codes.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] out_arr = np.empty(nf, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef vector[int64_t] wpos
    cdef bint unit = True
    cdef Py_ssize_t a, b
    cdef int i
    cdef uint32_t x
    cdef int64_t d, best
    wpos.resize(n)
    for i in range(n):
        wpos[n - 1 - i] = w[i]
        if w[i] != 1:
            unit = False
    with nogil:
        for b in range(nf):
            best = -1
            for a in range(nt):
                x = t_codes[a] ^ f_codes[b]
                if unit:
                    d = popcount32(x)
                else:
                    d = 0
                    i = 0
                    while x:
                        if x & 1:
                            d += wpos[i]
                        x >>= 1
                        i += 1
                if best < 0 or d < best:
                    best = d
                    if d == 0:
                        break
            out[b] = best
    return out_arr


cdef vector[uint32_t] _minimal_xors(const uint32_t[::1] t_codes, const uint32_t[::1] f_codes) noexcept nogil:
    cdef vector[uint32_t] xs
    cdef vector[uint32_t] minima
    cdef Py_ssize_t a, b, k, m
    cdef vector[uint64_t] keyed
    cdef uint32_t x
    cdef bint dominated
    xs.reserve(t_codes.shape[0] * f_codes.shape[0])
    for a in range(t_codes.shape[0]):
        for b in range(f_codes.shape[0]):
            xs.push_back(t_codes[a] ^ f_codes[b])
    # order by (popcount, value) via a packed 64-bit key
    keyed.resize(xs.size())
    for k in range(<Py_ssize_t>xs.size()):
        keyed[k] = ((<uint64_t>popcount32(xs[k])) << 32) | xs[k]
    sort(keyed.begin(), keyed.end())
    m = unique(keyed.begin(), keyed.end()) - keyed.begin()
    for k in range(m):
        x = <uint32_t>keyed[k]
        dominated = False
        for a in range(<Py_ssize_t>minima.size()):
            if minima[a] & x == minima[a]:
                dominated = True
                break
        if not dominated:
            minima.push_back(x)
    sort(minima.begin(), minima.end())
    return minima

def minimal_xors(const uint32_t[::1] t_codes, const uint32_t[::1] f_codes):
    cdef vector[uint32_t] minima
    with nogil:
        minima = _minimal_xors(t_codes, f_codes)
    cdef cnp.ndarray[uint32_t, ndim=1] out = np.empty(minima.size(), dtype=np.uint32)
    cdef Py_ssize_t i
    for i in range(<Py_ssize_t>minima.size()):
        out[i] = minima[i]
    return out


def set_revision_hits(const uint32_t[::1] t_codes, const uint32_t[::1] f_codes):
    cdef vector[uint32_t] minima
    cdef Py_ssize_t nf = f_codes.shape[0], nt = t_codes.shape[0]
    cdef cnp.ndarray[uint8_t, ndim=1] out_arr = np.zeros(nf, dtype=np.uint8)
    cdef uint8_t[::1] out = out_arr
    cdef Py_ssize_t a, b, pos
    cdef uint32_t x
    with nogil:
        minima = _minimal_xors(t_codes, f_codes)
        for b in range(nf):
            for a in range(nt):
                x = t_codes[a] ^ f_codes[b]
                # minima is sorted: binary search
                pos = _lower_bound(minima, x)
                if pos < <Py_ssize_t>minima.size() and minima[pos] == x:
                    out[b] = 1
                    break
    return out_arr


cdef inline Py_ssize_t _lower_bound(vector[uint32_t]& v, uint32_t x) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = v.size(), mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if v[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def preference_edges(phi, psi, strict):
    cdef const uint8_t[:, ::1] ph = np.ascontiguousarray(phi, dtype=np.uint8)
    cdef const uint8_t[:, ::1] ps = np.ascontiguousarray(psi, dtype=np.uint8)
    cdef const uint8_t[:, ::1] st = np.ascontiguousarray(strict, dtype=np.uint8)
    cdef Py_ssize_t nd = ph.shape[0], cube = ph.shape[1]
    cdef vector[int64_t] src, dst, dft
    cdef vector[Py_ssize_t] sep
    cdef Py_ssize_t a, b, k, j, s, t
    cdef bint beaten
    with nogil:
        for a in range(cube):
            for b in range(a + 1, cube):
                sep.clear()
                for k in range(nd):
                    if ph[k, a] and ph[k, b] and ps[k, a] != ps[k, b]:
                        sep.push_back(k)
                for s in range(<Py_ssize_t>sep.size()):
                    k = sep[s]
                    beaten = False
                    for t in range(<Py_ssize_t>sep.size()):
                        if st[sep[t], k]:
                            beaten = True
                            break
                    if beaten:
                        continue
                    if ps[k, a]:
                        src.push_back(a)
                        dst.push_back(b)
                    else:
                        src.push_back(b)
                        dst.push_back(a)
                    dft.push_back(k)
    return _as_int64(src), _as_int64(dst), _as_int64(dft)


def affine_image(const uint32_t[::1] codes, rows, offset, int n):
    cdef const uint32_t[::1] rs = np.ascontiguousarray(rows, dtype=np.uint32)
    cdef uint32_t off = <uint32_t>offset
    cdef Py_ssize_t m = codes.shape[0], i
    cdef int r
    cdef cnp.ndarray[uint32_t, ndim=1] out_arr = np.empty(m, dtype=np.uint32)
    cdef uint32_t[::1] out = out_arr
    cdef uint32_t y
    with nogil:
        for i in range(m):
            y = 0
            for r in range(rs.shape[0]):
                if popcount32(rs[r] & codes[i]) & 1:
                    y |= (<uint32_t>1) << (n - 1 - r)
            out[i] = y ^ off
    return out_arr
