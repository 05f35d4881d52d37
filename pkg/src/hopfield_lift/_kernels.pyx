# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for Gray-code enumeration and bit-flip local search.

Both kernels take the transposed matrix ``ht`` (shape ``n x m``, C-contiguous)
so that column ``j`` of H is the contiguous row ``ht[j]``. Spins are int8 +/-1.
The return contract is identical to :mod:`hopfield_lift._fallback`.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    KAHAN_THRESHOLD = 10000


cdef inline double _sqnorm(double* v, Py_ssize_t m) noexcept nogil:
    cdef Py_ssize_t i
    cdef double acc = 0.0, comp = 0.0, y, t
    if m > KAHAN_THRESHOLD:
        for i in range(m):
            y = v[i] * v[i] - comp
            t = acc + y
            comp = (t - acc) - y
            acc = t
        return acc
    for i in range(m):
        acc += v[i] * v[i]
    return acc


cdef inline int _ctz(unsigned long long k) noexcept nogil:
    return __builtin_ctzll(k)


def gray_sweep(const double[:, ::1] ht, signed char[::1] signs, Py_ssize_t lo,
               Py_ssize_t nbits, bint maximize):
    """Enumerate all ``2**nbits`` flips of spins ``lo .. lo+nbits-1``.

    ``signs`` is the start state and is mutated into the final Gray state.
    Returns ``(best_sq, best_counter, v)`` where ``best_counter`` is the Gray
    counter of the first state attaining the optimum (its Gray code
    ``k ^ (k >> 1)`` marks the flipped bits) and ``v`` is the running
    ``H s`` after the last flip.
    """
    cdef Py_ssize_t n = ht.shape[0], m = ht.shape[1]
    cdef Py_ssize_t i, j
    cdef unsigned long long k, total = 1ULL << nbits, best_k = 0
    cdef double best, cur, y, t, comp, acc, twice_s
    cdef double[::1] v = np.zeros(m, dtype=np.float64)
    cdef double* vp = &v[0]
    cdef const double* col
    cdef bint kahan = m > KAHAN_THRESHOLD

    with nogil:
        for j in range(n):
            col = &ht[j, 0]
            if signs[j] > 0:
                for i in range(m):
                    vp[i] += col[i]
            else:
                for i in range(m):
                    vp[i] -= col[i]
        best = _sqnorm(vp, m)
        for k in range(1, total):
            j = lo + _ctz(k)
            col = &ht[j, 0]
            twice_s = 2.0 * signs[j]
            signs[j] = -signs[j]
            acc = 0.0
            if kahan:
                comp = 0.0
                for i in range(m):
                    vp[i] -= twice_s * col[i]
                    y = vp[i] * vp[i] - comp
                    t = acc + y
                    comp = (t - acc) - y
                    acc = t
            else:
                for i in range(m):
                    vp[i] -= twice_s * col[i]
                    acc += vp[i] * vp[i]
            cur = acc
            if maximize:
                if cur > best:
                    best = cur
                    best_k = k
            elif cur < best:
                best = cur
                best_k = k
    return best, best_k, np.asarray(v)


def local_search(const double[:, ::1] ht, signed char[::1] signs, bint maximize,
                 bint steepest, Py_ssize_t start, Py_ssize_t max_sweeps, double threshold):
    """Single-flip descent from ``signs`` (mutated in place).

    Returns ``(sq_norm, sweeps, evaluations, flips, hit_max_sweeps)``.
    """
    cdef Py_ssize_t n = ht.shape[0], m = ht.shape[1]
    cdef Py_ssize_t i, j, jj, best_j, sweeps = 0, flips = 0, since
    cdef long long evals = 0
    cdef double dot, delta, best_delta, sq, twice_s, sgn
    cdef double[::1] v = np.zeros(m, dtype=np.float64)
    cdef double[::1] colsq = np.empty(n, dtype=np.float64)
    cdef double* vp = &v[0]
    cdef const double* col
    cdef bint hit = False, improved

    sgn = 1.0 if maximize else -1.0
    with nogil:
        for j in range(n):
            col = &ht[j, 0]
            colsq[j] = _sqnorm(<double*>col, m)
            if signs[j] > 0:
                for i in range(m):
                    vp[i] += col[i]
            else:
                for i in range(m):
                    vp[i] -= col[i]
        sq = _sqnorm(vp, m)
        if steepest:
            while True:
                if sweeps >= max_sweeps:
                    hit = True
                    break
                sweeps += 1
                best_j = -1
                best_delta = threshold
                for j in range(n):
                    col = &ht[j, 0]
                    dot = 0.0
                    for i in range(m):
                        dot += col[i] * vp[i]
                    # ||v - 2 s_j h_j||^2 - ||v||^2
                    delta = sgn * (4.0 * colsq[j] - 4.0 * signs[j] * dot)
                    evals += 1
                    if delta > best_delta:
                        best_delta = delta
                        best_j = j
                if best_j < 0:
                    break
                col = &ht[best_j, 0]
                twice_s = 2.0 * signs[best_j]
                signs[best_j] = -signs[best_j]
                for i in range(m):
                    vp[i] -= twice_s * col[i]
                sq = _sqnorm(vp, m)
                flips += 1
        else:
            jj = start % n
            while True:
                if sweeps >= max_sweeps:
                    hit = True
                    break
                sweeps += 1
                improved = False
                for since in range(n):
                    j = jj
                    jj += 1
                    if jj == n:
                        jj = 0
                    col = &ht[j, 0]
                    dot = 0.0
                    for i in range(m):
                        dot += col[i] * vp[i]
                    delta = sgn * (4.0 * colsq[j] - 4.0 * signs[j] * dot)
                    evals += 1
                    if delta > threshold:
                        twice_s = 2.0 * signs[j]
                        signs[j] = -signs[j]
                        for i in range(m):
                            vp[i] -= twice_s * col[i]
                        flips += 1
                        improved = True
                if not improved:
                    break
            sq = _sqnorm(vp, m)
    return sq, sweeps, evals, flips, hit
