# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: RREF over F_p and the minimum-union configuration search.

Contracts match `_kernels_py`; the selection layer in `kernels.py` falls
back to the pure versions when this module is not built or when masks do
not fit in 64 bits.
"""

from libc.stdlib cimport free, malloc


cdef long long _inv_mod(long long a, long long p):
    cdef long long result = 1, base = a % p, e = p - 2
    while e:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_mod_p(rows, long long p):
    """Reduced row echelon form over F_p; returns (rank, pivot_cols, rref_rows)."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    cdef Py_ssize_t i, j, col, r, pivot
    cdef long long inv, f, v
    cdef long long *mat
    if nrows == 0 or ncols == 0:
        return 0, [], [list(row) for row in rows]
    mat = <long long *> malloc(nrows * ncols * sizeof(long long))
    if mat == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                mat[i * ncols + j] = row[j] % p
        pivot_cols = []
        r = 0
        for col in range(ncols):
            if r == nrows:
                break
            pivot = -1
            for i in range(r, nrows):
                if mat[i * ncols + col] != 0:
                    pivot = i
                    break
            if pivot < 0:
                continue
            if pivot != r:
                for j in range(ncols):
                    v = mat[r * ncols + j]
                    mat[r * ncols + j] = mat[pivot * ncols + j]
                    mat[pivot * ncols + j] = v
            inv = _inv_mod(mat[r * ncols + col], p)
            for j in range(ncols):
                mat[r * ncols + j] = mat[r * ncols + j] * inv % p
            for i in range(nrows):
                if i != r:
                    f = mat[i * ncols + col]
                    if f != 0:
                        for j in range(ncols):
                            v = mat[i * ncols + j] - f * mat[r * ncols + j] % p
                            mat[i * ncols + j] = v % p if v >= 0 else (v % p + p) % p
            pivot_cols.append(col)
            r += 1
        out = [[mat[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
        return r, pivot_cols, out
    finally:
        free(mat)


def min_union(options):
    """Minimum-popcount union, one mask per level; masks must fit in 64 bits."""
    cdef Py_ssize_t depth = len(options)
    cdef Py_ssize_t level, i, total = 0
    cdef unsigned long long acc
    cdef int best_size = -1, size
    cdef Py_ssize_t *counts
    cdef Py_ssize_t *offsets
    cdef Py_ssize_t *idx
    cdef Py_ssize_t *best_idx
    cdef unsigned long long *masks
    cdef unsigned long long *partial

    if depth == 0:
        return 0, ()
    for level in range(depth):
        total += len(options[level])
    counts = <Py_ssize_t *> malloc(depth * sizeof(Py_ssize_t))
    offsets = <Py_ssize_t *> malloc(depth * sizeof(Py_ssize_t))
    idx = <Py_ssize_t *> malloc(depth * sizeof(Py_ssize_t))
    best_idx = <Py_ssize_t *> malloc(depth * sizeof(Py_ssize_t))
    masks = <unsigned long long *> malloc(total * sizeof(unsigned long long))
    partial = <unsigned long long *> malloc((depth + 1) * sizeof(unsigned long long))
    if not (counts and offsets and idx and best_idx and masks and partial):
        free(counts); free(offsets); free(idx); free(best_idx); free(masks); free(partial)
        raise MemoryError()
    try:
        i = 0
        for level in range(depth):
            offsets[level] = i
            counts[level] = len(options[level])
            for mask in options[level]:
                masks[i] = mask
                i += 1
        partial[0] = 0
        level = 0
        idx[0] = 0
        while level >= 0:
            if idx[level] >= counts[level]:
                level -= 1
                if level >= 0:
                    idx[level] += 1
                continue
            acc = partial[level] | masks[offsets[level] + idx[level]]
            size = _popcount(acc)
            if best_size >= 0 and size >= best_size:
                idx[level] += 1
                continue
            if level == depth - 1:
                best_size = size
                for i in range(depth):
                    best_idx[i] = idx[i]
                idx[level] += 1
            else:
                partial[level + 1] = acc
                level += 1
                idx[level] = 0
        return best_size, tuple(best_idx[i] for i in range(depth))
    finally:
        free(counts); free(offsets); free(idx); free(best_idx); free(masks); free(partial)


cdef inline int _popcount(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c
