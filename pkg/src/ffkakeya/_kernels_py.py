"""Pure-Python reference kernels for the two hot inner loops.

Same contracts as the compiled versions in `_kernels.pyx`; these are the
fallback selected at import time when the extension is unavailable, and
the baseline for the kernel benchmark.
"""

from __future__ import annotations


def rref_mod_p(rows, p):
    """Reduced row echelon form over F_p (p prime) with first-nonzero pivoting.

    `rows` is a list of equal-length lists of ints in [0, p).  Returns
    (rank, pivot_cols, rref_rows) without mutating the input.
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivot_cols = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if mat[i][col]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][col], p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        row_r = mat[r]
        for i in range(nrows):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], row_r)]
        pivot_cols.append(col)
        r += 1
    return r, pivot_cols, mat


def min_union(options):
    """Minimum-popcount union over one mask choice per level.

    `options` is a list (one entry per level) of nonempty lists of int
    bitmasks.  Returns (min_size, indices) where indices is the lex-least
    choice achieving the minimum.  Branches whose partial union already
    matches the best size are pruned (unions only grow).
    """
    depth = len(options)
    best_size = None
    best_idx = None
    idx = [0] * depth

    def walk(level, acc):
        nonlocal best_size, best_idx
        if best_size is not None and acc.bit_count() >= best_size:
            return
        if level == depth:
            best_size = acc.bit_count()
            best_idx = tuple(idx)
            return
        for i, mask in enumerate(options[level]):
            idx[level] = i
            walk(level + 1, acc | mask)

    walk(0, 0)
    return best_size, best_idx
