# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``."""

from libc.stdlib cimport malloc, free


cdef long _rec(int k, int size, int n, int* pos, int* grid, int* cell_r, int* cell_c,
               int* row_off, int* shape) nogil:
    cdef int r, c, a, lo, hi, t
    cdef long total = 0
    if k == size:
        return 1
    r = cell_r[k]
    c = cell_c[k]
    lo = grid[row_off[r - 1] + c] + 1 if r > 0 else 0
    hi = grid[row_off[r] + c + 1] - 1 if c + 1 < shape[r] else n - 2
    for a in range(lo, hi + 1):
        if pos[a] > pos[a + 1]:
            t = pos[a]; pos[a] = pos[a + 1]; pos[a + 1] = t
            grid[row_off[r] + c] = a
            total += _rec(k + 1, size, n, pos, grid, cell_r, cell_c, row_off, shape)
            t = pos[a]; pos[a] = pos[a + 1]; pos[a + 1] = t
    return total


def count_word_tableaux(values, int start, shape):
    cdef int n = len(values)
    cdef int nrows = len(shape)
    cdef int size = 0, inv = 0, i, j, r, c, k
    cdef long total
    vals = list(values)
    for i in range(n):
        for j in range(i + 1, n):
            if vals[i] > vals[j]:
                inv += 1
    for m in shape:
        size += m
    if size != inv:
        return 0
    if size == 0:
        return 1
    cdef int* pos = <int*>malloc(n * sizeof(int))
    cdef int* grid = <int*>malloc(size * sizeof(int))
    cdef int* cell_r = <int*>malloc(size * sizeof(int))
    cdef int* cell_c = <int*>malloc(size * sizeof(int))
    cdef int* row_off = <int*>malloc(nrows * sizeof(int))
    cdef int* shp = <int*>malloc(nrows * sizeof(int))
    try:
        for i in range(n):
            pos[vals[i] - start] = i
        k = 0
        for r in range(nrows):
            shp[r] = shape[r]
            row_off[r] = k
            k += shp[r]
        k = 0
        for r in range(nrows):
            for c in range(shp[r] - 1, -1, -1):
                cell_r[k] = r
                cell_c[k] = c
                k += 1
        with nogil:
            total = _rec(0, size, n, pos, grid, cell_r, cell_c, row_off, shp)
        return total
    finally:
        free(pos); free(grid); free(cell_r); free(cell_c); free(row_off); free(shp)
