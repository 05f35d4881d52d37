"""Pure-Python/numpy versions of the compiled kernels.

Same signatures and return contracts as ``_kernels``; used when the
extension is not built or ``HOPFIELD_PURE_PYTHON=1`` is set. Roughly two
orders of magnitude slower on the Gray-code sweep.
"""

import math

import numpy as np

KAHAN_THRESHOLD = 10000


def _sqnorm(v):
    if v.shape[0] > KAHAN_THRESHOLD:
        return math.fsum((v * v).tolist())
    acc = 0.0
    for x in (v * v).tolist():
        acc += x
    return acc


def _initial(ht, signs):
    v = np.zeros(ht.shape[1])
    for j in range(ht.shape[0]):
        if signs[j] > 0:
            v += ht[j]
        else:
            v -= ht[j]
    return v


def gray_sweep(ht, signs, lo, nbits, maximize):
    v = _initial(ht, signs)
    best = _sqnorm(v)
    best_k = 0
    for k in range(1, 1 << nbits):
        j = lo + ((k & -k).bit_length() - 1)
        twice_s = 2.0 * signs[j]
        signs[j] = -signs[j]
        v -= twice_s * ht[j]
        cur = _sqnorm(v)
        if (cur > best) if maximize else (cur < best):
            best = cur
            best_k = k
    return best, best_k, v


def local_search(ht, signs, maximize, steepest, start, max_sweeps, threshold):
    n = ht.shape[0]
    sgn = 1.0 if maximize else -1.0
    colsq = np.array([_sqnorm(ht[j]) for j in range(n)])
    v = _initial(ht, signs)
    sweeps = evals = flips = 0
    hit = False
    if steepest:
        while True:
            if sweeps >= max_sweeps:
                hit = True
                break
            sweeps += 1
            dots = ht @ v
            deltas = sgn * (4.0 * colsq - 4.0 * signs * dots)
            evals += n
            best_j = int(np.argmax(deltas))
            if not deltas[best_j] > threshold:
                break
            v -= 2.0 * signs[best_j] * ht[best_j]
            signs[best_j] = -signs[best_j]
            flips += 1
    else:
        jj = start % n
        while True:
            if sweeps >= max_sweeps:
                hit = True
                break
            sweeps += 1
            improved = False
            for _ in range(n):
                j = jj
                jj = (jj + 1) % n
                delta = sgn * (4.0 * colsq[j] - 4.0 * signs[j] * float(ht[j] @ v))
                evals += 1
                if delta > threshold:
                    v -= 2.0 * signs[j] * ht[j]
                    signs[j] = -signs[j]
                    flips += 1
                    improved = True
            if not improved:
                break
    return _sqnorm(v), sweeps, evals, flips, hit
