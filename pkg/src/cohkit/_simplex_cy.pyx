# cython: language_level=3
"""Compiled simplex pivot kernel; same contract as cohkit._simplex_py.

The rationals stay Python objects (exact arithmetic), the win is in the
pivot bookkeeping: typed indices, direct list access, no per-iteration
attribute lookups.
"""


def run_simplex(list tableau, list basis):
    """Pivot until optimal (-1) or unbounded (entering column index)."""
    cdef Py_ssize_t m = len(tableau) - 1
    cdef Py_ssize_t width = len(<list>tableau[0])
    cdef Py_ssize_t rhs = width - 1
    cdef Py_ssize_t enter, leave, i, j
    cdef list obj = <list>tableau[m]
    cdef list row, pivot_row
    cdef object a, ratio, best, factor, coeff

    while True:
        enter = -1
        for j in range(rhs):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return -1
        leave = -1
        best = None
        for i in range(m):
            row = <list>tableau[i]
            a = row[enter]
            if a > 0:
                ratio = row[rhs] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and <object>basis[i] < <object>basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return enter
        pivot_row = <list>tableau[leave]
        factor = pivot_row[enter]
        if factor != 1:
            for j in range(width):
                pivot_row[j] = pivot_row[j] / factor
        for i in range(m + 1):
            if i == leave:
                continue
            row = <list>tableau[i]
            coeff = row[enter]
            if coeff != 0:
                for j in range(width):
                    row[j] = row[j] - coeff * pivot_row[j]
        basis[leave] = enter
