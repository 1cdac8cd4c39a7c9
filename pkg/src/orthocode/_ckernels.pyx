# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled enumeration kernels: exhaustive weight distributions and the
low-weight combination scans used by the minimum-distance engines.

The generator matrix arrives as a C-contiguous int64 array with entries
already reduced mod q.  All loops run odometer-style so each enumerated
codeword costs one row update, not a full matrix-vector product.
"""

from libc.stdlib cimport calloc, free
from libc.string cimport memset


cdef inline void _add_row(long long* cw, long long* wt,
                          const long long* row, Py_ssize_t n, long long q) nogil:
    cdef Py_ssize_t j
    cdef long long old, new
    for j in range(n):
        if row[j] != 0:
            old = cw[j]
            new = old + row[j]
            if new >= q:
                new -= q
            cw[j] = new
            wt[0] += (new != 0) - (old != 0)


def weight_distribution(long long[:, ::1] gen, long long q):
    """Counts of codewords by Hamming weight over all q**k messages."""
    cdef Py_ssize_t k = gen.shape[0]
    cdef Py_ssize_t n = gen.shape[1]
    cdef long long total = 1
    cdef Py_ssize_t i
    for i in range(k):
        total *= q
    cdef long long* cw = <long long*> calloc(n if n else 1, sizeof(long long))
    cdef long long* digits = <long long*> calloc(k if k else 1, sizeof(long long))
    cdef long long* counts = <long long*> calloc(n + 1, sizeof(long long))
    if cw == NULL or digits == NULL or counts == NULL:
        free(cw); free(digits); free(counts)
        raise MemoryError()
    cdef long long wt = 0, step
    cdef Py_ssize_t pos
    try:
        with nogil:
            counts[0] += 1  # zero message
            for step in range(1, total):
                pos = 0
                while digits[pos] == q - 1:
                    digits[pos] = 0
                    # rolling q-1 -> 0 adds the row once more (q * row = 0)
                    _add_row(cw, &wt, &gen[pos, 0], n, q)
                    pos += 1
                digits[pos] += 1
                _add_row(cw, &wt, &gen[pos, 0], n, q)
                counts[wt] += 1
        return [counts[i] for i in range(n + 1)]
    finally:
        free(cw); free(digits); free(counts)


def min_weight(long long[:, ::1] gen, long long q, long long abort_below=0):
    """Minimum nonzero codeword weight; returns early once a nonzero codeword
    of weight <= abort_below is seen."""
    cdef Py_ssize_t k = gen.shape[0]
    cdef Py_ssize_t n = gen.shape[1]
    cdef long long total = 1
    cdef Py_ssize_t i
    for i in range(k):
        total *= q
    cdef long long* cw = <long long*> calloc(n if n else 1, sizeof(long long))
    cdef long long* digits = <long long*> calloc(k if k else 1, sizeof(long long))
    if cw == NULL or digits == NULL:
        free(cw); free(digits)
        raise MemoryError()
    cdef long long wt = 0, best = n + 1, step
    cdef Py_ssize_t pos
    try:
        with nogil:
            for step in range(1, total):
                pos = 0
                while digits[pos] == q - 1:
                    digits[pos] = 0
                    _add_row(cw, &wt, &gen[pos, 0], n, q)
                    pos += 1
                digits[pos] += 1
                _add_row(cw, &wt, &gen[pos, 0], n, q)
                if wt < best:
                    best = wt
                    if best <= abort_below:
                        break
        return best
    finally:
        free(cw); free(digits)


def min_weight_weight_w(long long[:, ::1] gen, long long q, long long w,
                        long long abort_below=0):
    """Minimum codeword weight over all combinations of exactly w rows with
    nonzero coefficients, the first coefficient fixed to 1."""
    cdef Py_ssize_t k = gen.shape[0]
    cdef Py_ssize_t n = gen.shape[1]
    if w < 1 or w > k:
        return n + 1
    cdef long long* cw = <long long*> calloc(n if n else 1, sizeof(long long))
    cdef long long* coef = <long long*> calloc(w, sizeof(long long))
    cdef Py_ssize_t* sel = <Py_ssize_t*> calloc(w, sizeof(Py_ssize_t))
    if cw == NULL or coef == NULL or sel == NULL:
        free(cw); free(coef); free(sel)
        raise MemoryError()
    cdef long long wt, best = n + 1
    cdef Py_ssize_t i, j, pos
    cdef bint more_combs = True, more_coeffs, aborted = False
    try:
        with nogil:
            for i in range(w):
                sel[i] = i
            while more_combs and not aborted:
                # reset codeword to the all-ones-coefficient combination
                memset(cw, 0, n * sizeof(long long))
                wt = 0
                for i in range(w):
                    coef[i] = 1
                    _add_row(cw, &wt, &gen[sel[i], 0], n, q)
                while True:
                    if wt < best:
                        best = wt
                        if best <= abort_below:
                            aborted = True
                            break
                    # advance coefficient odometer over positions 1..w-1
                    more_coeffs = False
                    for pos in range(1, w):
                        if coef[pos] < q - 1:
                            coef[pos] += 1
                            _add_row(cw, &wt, &gen[sel[pos], 0], n, q)
                            more_coeffs = True
                            break
                        # roll q-1 back to 1: add the row twice (1-(q-1) = 2 mod q)
                        coef[pos] = 1
                        _add_row(cw, &wt, &gen[sel[pos], 0], n, q)
                        _add_row(cw, &wt, &gen[sel[pos], 0], n, q)
                    if not more_coeffs:
                        break
                # next combination (lexicographic)
                more_combs = False
                for i in range(w - 1, -1, -1):
                    if sel[i] < k - (w - i):
                        sel[i] += 1
                        for j in range(i + 1, w):
                            sel[j] = sel[j - 1] + 1
                        more_combs = True
                        break
        return best
    finally:
        free(cw); free(coef); free(sel)
