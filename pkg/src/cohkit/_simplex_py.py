"""Pure-Python simplex pivot kernel.

The tableau is a list of rows (lists of exact rationals); the last row is
the reduced-cost row of a minimization problem and the last column the
right-hand side.  Bland's rule is used in both the entering and leaving
choices, which guarantees termination.  cohkit._simplex_cy is the
compiled twin with the same contract.
"""


def run_simplex(tableau, basis):
    """Pivot until optimal or unbounded.

    tableau: (m+1) x (n+1) rows, objective row last, rhs column last,
    with nonnegative rhs entries on constraint rows and reduced costs
    already in the objective row.  basis: list of m basic column indices,
    updated in place.  Returns -1 at optimality, else the entering column
    proving unboundedness.
    """
    m = len(tableau) - 1
    width = len(tableau[0])
    rhs = width - 1
    obj = tableau[m]
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
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][rhs] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return enter
        pivot_row = tableau[leave]
        factor = pivot_row[enter]
        if factor != 1:
            for j in range(width):
                pivot_row[j] = pivot_row[j] / factor
        for i in range(m + 1):
            if i == leave:
                continue
            row = tableau[i]
            coeff = row[enter]
            if coeff != 0:
                for j in range(width):
                    row[j] = row[j] - coeff * pivot_row[j]
        basis[leave] = enter
