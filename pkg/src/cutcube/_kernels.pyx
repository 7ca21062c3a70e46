# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels.  Walls are limited to 64 (one machine word per orientation)."""
from libc.stdlib cimport calloc, malloc, free, qsort
from libc.stdint cimport uint64_t

MAX_WALLS = 64


cdef int _cmp_u64(const void *a, const void *b) noexcept nogil:
    cdef uint64_t x = (<uint64_t *> a)[0]
    cdef uint64_t y = (<uint64_t *> b)[0]
    return (x > y) - (x < y)


def principal_codes(point_masks):
    cdef Py_ssize_t n = len(point_masks)
    cdef Py_ssize_t a, b, c, t = 0, u, total
    cdef uint64_t ab, aob, span = 0
    if n < 3:
        return []
    total = n * (n - 1) * (n - 2) // 6
    cdef uint64_t *pm = <uint64_t *> malloc(n * sizeof(uint64_t))
    if pm == NULL:
        raise MemoryError()
    for a in range(n):
        pm[a] = <uint64_t> point_masks[a]
        span |= pm[a]
    # narrow families: mark codes in a bitmap instead of sorting every triple
    cdef int width = 0
    while width < 64 and (span >> width):
        width += 1
    cdef unsigned char *seen
    cdef uint64_t *buf
    try:
        if width <= 22:
            seen = <unsigned char *> calloc((<size_t> 1) << width, 1)
            if seen == NULL:
                raise MemoryError()
            try:
                with nogil:
                    for a in range(n):
                        for b in range(a + 1, n):
                            ab = pm[a] & pm[b]
                            aob = pm[a] | pm[b]
                            for c in range(b + 1, n):
                                seen[ab | (aob & pm[c])] = 1
                return [u for u in range((<Py_ssize_t> 1) << width) if seen[u]]
            finally:
                free(seen)
        buf = <uint64_t *> malloc(total * sizeof(uint64_t))
        if buf == NULL:
            raise MemoryError()
        try:
            with nogil:
                for a in range(n):
                    for b in range(a + 1, n):
                        ab = pm[a] & pm[b]
                        aob = pm[a] | pm[b]
                        for c in range(b + 1, n):
                            buf[t] = ab | (aob & pm[c])
                            t += 1
                qsort(buf, total, sizeof(uint64_t), _cmp_u64)
            out = [buf[0]]
            for u in range(1, total):
                if buf[u] != buf[u - 1]:
                    out.append(buf[u])
            return out
        finally:
            free(buf)
    finally:
        free(pm)


def occupancy(codes, int k):
    cdef Py_ssize_t m = len(codes), r
    cdef int i, j
    cdef uint64_t code
    cdef unsigned char *occ = <unsigned char *> malloc(k * k + 1)
    cdef int bits[64]
    if occ == NULL:
        raise MemoryError()
    try:
        for i in range(k * k):
            occ[i] = 0
        for r in range(m):
            code = <uint64_t> codes[r]
            for i in range(k):
                bits[i] = (code >> i) & 1
            for i in range(k):
                for j in range(k):
                    occ[i * k + j] |= 1 << ((bits[i] << 1) | bits[j])
        return [[occ[i * k + j] for j in range(k)] for i in range(k)]
    finally:
        free(occ)


def consistent_scan(int k, bad_pp, bad_pm, bad_mp, bad_mm):
    cdef uint64_t pp[64]
    cdef uint64_t pmk[64]
    cdef uint64_t mp[64]
    cdef uint64_t mm[64]
    cdef uint64_t full, m, nm, top
    cdef int i
    cdef bint ok
    for i in range(k):
        pp[i] = bad_pp[i]
        pmk[i] = bad_pm[i]
        mp[i] = bad_mp[i]
        mm[i] = bad_mm[i]
    full = ((<uint64_t> 1) << k) - 1
    top = (<uint64_t> 1) << k
    out = []
    m = 0
    while m < top:
        nm = full & ~m
        ok = True
        for i in range(k):
            if (m >> i) & 1:
                if (pp[i] & m) or (pmk[i] & nm):
                    ok = False
                    break
            elif (mp[i] & m) or (mm[i] & nm):
                ok = False
                break
        if ok:
            out.append(m)
        m += 1
    return out
