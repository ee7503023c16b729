# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tuple-evaluation kernel; same contract as ``_kernel_py``.

All arithmetic is in 64-bit integers. The Python wrapper only dispatches
here after bounding every intermediate value below 2**62.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _mask_sign(unsigned long long a, unsigned long long b) noexcept nogil:
    cdef int inv = 0
    cdef unsigned long long low
    while b:
        low = b & (~b + 1)
        inv += __builtin_popcountll(a & ~((low << 1) - 1))
        b ^= low
    return -1 if (inv & 1) else 1


def find_nonvanishing(long long dim, const long long[:] offsets, const long long[:] tab_k,
                      const long long[:] tab_c, const long long[:] monos, const long long[:] coefs,
                      long long d, const long long[:] cand_counts, const unsigned long long[:] cand_mask,
                      const long long[:] cand_off, const long long[:] cand_idx, const long long[:] cand_val):
    cdef Py_ssize_t n_monos = coefs.shape[0]
    cdef Py_ssize_t s, m, pos, i, e, e2, k, c, total_cands = 0
    cdef long long evaluated = 0
    cdef long long x, w, f
    cdef int sign, found = 0, nonzero
    cdef unsigned long long cur, mk

    if d == 0:
        return None, 0
    for s in range(d):
        if cand_counts[s] == 0:
            return None, 0

    cdef long long *starts = <long long *> malloc(d * sizeof(long long))
    cdef long long *choice = <long long *> malloc(d * sizeof(long long))
    cdef unsigned long long *used = <unsigned long long *> malloc((d + 1) * sizeof(unsigned long long))
    cdef long long *vec = <long long *> malloc(dim * sizeof(long long))
    cdef long long *newv = <long long *> malloc(dim * sizeof(long long))
    cdef long long *total = <long long *> malloc(dim * sizeof(long long))
    cdef long long *tmp
    if not (starts and choice and used and vec and newv and total):
        free(starts); free(choice); free(used); free(vec); free(newv); free(total)
        raise MemoryError()

    try:
        for s in range(d):
            starts[s] = total_cands
            total_cands += cand_counts[s]

        with nogil:
            s = 0
            choice[0] = -1
            used[0] = 0
            while s >= 0:
                choice[s] += 1
                if choice[s] >= cand_counts[s]:
                    s -= 1
                    continue
                mk = cand_mask[starts[s] + choice[s]]
                if mk & used[s]:
                    continue
                if s < d - 1:
                    used[s + 1] = used[s] | mk
                    s += 1
                    choice[s] = -1
                    continue
                # leaf: evaluate every monomial on the chosen tuple
                evaluated += 1
                memset(total, 0, dim * sizeof(long long))
                for m in range(n_monos):
                    sign = 1
                    cur = 0
                    for pos in range(d):
                        c = starts[monos[m * d + pos]] + choice[monos[m * d + pos]]
                        if cand_mask[c]:
                            sign *= _mask_sign(cur, cand_mask[c])
                            cur |= cand_mask[c]
                    memset(vec, 0, dim * sizeof(long long))
                    c = starts[monos[m * d]] + choice[monos[m * d]]
                    for e in range(cand_off[c], cand_off[c + 1]):
                        vec[cand_idx[e]] = cand_val[e]
                    nonzero = 1
                    for pos in range(1, d):
                        c = starts[monos[m * d + pos]] + choice[monos[m * d + pos]]
                        memset(newv, 0, dim * sizeof(long long))
                        nonzero = 0
                        for i in range(dim):
                            x = vec[i]
                            if x == 0:
                                continue
                            for e in range(cand_off[c], cand_off[c + 1]):
                                w = cand_val[e] * x
                                k = i * dim + cand_idx[e]
                                for e2 in range(offsets[k], offsets[k + 1]):
                                    newv[tab_k[e2]] += w * tab_c[e2]
                                    nonzero = 1
                        tmp = vec
                        vec = newv
                        newv = tmp
                        if not nonzero:
                            break
                    if not nonzero:
                        continue
                    f = coefs[m] * sign
                    for i in range(dim):
                        if vec[i]:
                            total[i] += f * vec[i]
                for i in range(dim):
                    if total[i]:
                        found = 1
                        break
                if found:
                    break
        if found:
            return tuple([choice[s] for s in range(d)]), evaluated
        return None, evaluated
    finally:
        free(starts); free(choice); free(used); free(vec); free(newv); free(total)
