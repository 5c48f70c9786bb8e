"""Exact rational linear programming.

A dense two-phase simplex with Bland's rule; every answer is verified
against its defining inequalities before being returned, so callers can
rely on zero-residual witnesses and certificates.  The convex-hull
membership test and the polytope range query used by the coherence
engine live here as specialized entry points that keep the nonnegative
weight variables native instead of splitting signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ._kernel import KERNEL_NAME, run_simplex
from .rationals import rat

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)

FEASIBILITY = None


class LPError(Exception):
    pass


class LPInternalError(LPError):
    """A computed witness failed exact verification; indicates a bug."""


def kernel_name() -> str:
    return KERNEL_NAME


@dataclass(frozen=True)
class LinearProgram:
    """min/max of objective . x subject to rows coeffs . x (rel) rhs.

    Variables are free; bounds are ordinary constraint rows.  objective
    None means a pure feasibility problem.
    """

    num_vars: int
    constraints: tuple
    objective: Optional[tuple] = FEASIBILITY
    maximize: bool = False

    @staticmethod
    def build(num_vars, constraints, objective=FEASIBILITY, maximize=False):
        rows = []
        for coeffs, rel, rhs in constraints:
            coeffs = tuple(rat(c) for c in coeffs)
            if len(coeffs) != num_vars:
                raise LPError(
                    f"row width {len(coeffs)} does not match {num_vars} variables"
                )
            if rel not in _RELATIONS:
                raise LPError(f"unknown relation {rel!r}")
            rows.append((coeffs, rel, rat(rhs)))
        obj = None if objective is FEASIBILITY else tuple(rat(c) for c in objective)
        if obj is not None and len(obj) != num_vars:
            raise LPError("objective width does not match variable count")
        return LinearProgram(num_vars, tuple(rows), obj, maximize)


@dataclass(frozen=True)
class Optimal:
    status = "optimal"
    value: object
    solution: tuple


@dataclass(frozen=True)
class Feasible:
    status = "feasible"
    solution: tuple


@dataclass(frozen=True)
class Infeasible:
    """Farkas certificate y: y.A == 0 and y.b > 0, with y <= 0 on <= rows
    and y >= 0 on >= rows (free on equalities), so any feasible x would
    force 0 = y.A.x >= y.b > 0."""

    status = "infeasible"
    certificate: tuple


@dataclass(frozen=True)
class Unbounded:
    """Improving ray d from a feasible point: A.d respects every row
    direction at rhs 0 and the objective strictly improves along d."""

    status = "unbounded"
    ray: tuple


def _phase1(rows, rhs_col):
    """Set up and run phase 1 on equality rows; returns tableau pieces.

    rows: list of coefficient lists (equalities), rhs_col: list of right
    hand sides.  Rows are sign-fixed to nonnegative rhs; artificials are
    appended.  Returns (tableau, basis, flips, ncols) after the phase-1
    run, with the objective row expressing sum of artificials.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    flips = []
    tab = []
    for i in range(m):
        coeffs = list(rows[i])
        b = rhs_col[i]
        if b < 0:
            coeffs = [-c for c in coeffs]
            b = -b
            flips.append(True)
        else:
            flips.append(False)
        row = coeffs + [rat(0)] * m + [b]
        row[n + i] = rat(1)
        tab.append(row)
    obj = [rat(0)] * (n + m + 1)
    for i in range(m):
        row = tab[i]
        for j in range(n + m + 1):
            obj[j] -= row[j]
    for i in range(m):
        obj[n + i] = rat(0)
    tab.append(obj)
    basis = [n + i for i in range(m)]
    result = run_simplex(tab, basis)
    if result != -1:
        raise LPInternalError("phase 1 cannot be unbounded")
    return tab, basis, flips, n


def _basic_solution(tab, basis, n):
    width = len(tab[0])
    x = [rat(0)] * n
    for i, col in enumerate(basis):
        if col < n:
            x[col] = tab[i][width - 1]
    return x


def _phase1_duals(tab, flips, n):
    """Duals y_i = 1 - reduced cost of artificial column i, unflipped."""
    m = len(tab) - 1
    obj = tab[m]
    duals = []
    for i in range(m):
        y = rat(1) - obj[n + i]
        duals.append(-y if flips[i] else y)
    return duals


def _drive_out_artificials(tab, basis, n):
    """Pivot basic artificials out; drop rows that are fully redundant."""
    m = len(tab) - 1
    width = len(tab[0])
    drop = []
    for i in range(m):
        if basis[i] < n:
            continue
        pivot_col = -1
        for j in range(n):
            if tab[i][j] != 0:
                pivot_col = j
                break
        if pivot_col < 0:
            drop.append(i)
            continue
        factor = tab[i][pivot_col]
        row = tab[i]
        for j in range(width):
            row[j] = row[j] / factor
        for k in range(m + 1):
            if k == i:
                continue
            other = tab[k]
            coeff = other[pivot_col]
            if coeff != 0:
                for j in range(width):
                    other[j] = other[j] - coeff * row[j]
        basis[i] = pivot_col
    for i in reversed(drop):
        del tab[i]
        del basis[i]


def _strip_columns(tab, keep_width):
    for row in tab:
        del row[keep_width:-1]


def solve(lp: LinearProgram):
    """Solve an exact LP; returns Optimal/Feasible/Infeasible/Unbounded."""
    if not isinstance(lp, LinearProgram):
        raise LPError("expected a LinearProgram")
    n = lp.num_vars
    m = len(lp.constraints)
    # split free variables, add slack/surplus columns
    nslack = sum(1 for _c, rel, _b in lp.constraints if rel != EQ)
    rows = []
    rhs_col = []
    slack_cols = {}
    next_slack = 2 * n
    for i, (coeffs, rel, b) in enumerate(lp.constraints):
        row = [rat(0)] * (2 * n + nslack)
        for j, c in enumerate(coeffs):
            row[2 * j] = c
            row[2 * j + 1] = -c
        if rel != EQ:
            row[next_slack] = rat(1) if rel == LE else rat(-1)
            slack_cols[i] = next_slack
            next_slack += 1
        rows.append(row)
        rhs_col.append(b)
    if m == 0:
        if lp.objective is None:
            return Feasible(tuple())
        zero = tuple(rat(0) for _ in range(n))
        if any(c != 0 for c in lp.objective):
            return Unbounded(_verify_ray(lp, _objective_ray(lp)))
        return Optimal(rat(0), zero)

    tab, basis, flips, total = _phase1(rows, rhs_col)
    width = len(tab[0])
    if tab[-1][width - 1] < 0:
        duals = _phase1_duals(tab, flips, total)
        return Infeasible(_verify_certificate(lp, duals))

    _drive_out_artificials(tab, basis, total)
    _strip_columns(tab, total)

    if lp.objective is None:
        x = _split_solution(_basic_solution(tab, basis, total), n)
        _verify_feasible(lp, x)
        return Feasible(tuple(x))

    costs = [rat(0)] * total
    sign = rat(-1) if lp.maximize else rat(1)
    for j, c in enumerate(lp.objective):
        costs[2 * j] = sign * c
        costs[2 * j + 1] = -sign * c
    width = len(tab[0])
    obj = [rat(0)] * width
    for j in range(total):
        obj[j] = costs[j]
    for i, col in enumerate(basis):
        coeff = obj[col]
        if coeff != 0:
            row = tab[i]
            for j in range(width):
                obj[j] = obj[j] - coeff * row[j]
    tab[-1] = obj
    result = run_simplex(tab, basis)
    if result != -1:
        ray = _ray_from_tableau(tab, basis, result, total, n)
        return Unbounded(_verify_ray(lp, ray))
    x = _split_solution(_basic_solution(tab, basis, total), n)
    _verify_feasible(lp, x)
    value = sum((c * xi for c, xi in zip(lp.objective, x)), rat(0))
    return Optimal(value, tuple(x))


def _split_solution(cols, n):
    return [cols[2 * j] - cols[2 * j + 1] for j in range(n)]


def _objective_ray(lp):
    sign = rat(1) if lp.maximize else rat(-1)
    return [sign * c for c in lp.objective]


def _ray_from_tableau(tab, basis, enter, total, n):
    direction = [rat(0)] * total
    direction[enter] = rat(1)
    width = len(tab[0])
    for i, col in enumerate(basis):
        if col < total:
            direction[col] = -tab[i][enter]
    return _split_solution(direction, n)


def _verify_feasible(lp, x):
    for coeffs, rel, b in lp.constraints:
        lhs = sum((c * xi for c, xi in zip(coeffs, x)), rat(0))
        ok = lhs <= b if rel == LE else lhs >= b if rel == GE else lhs == b
        if not ok:
            raise LPInternalError("solution fails exact feasibility check")
    return x


def _verify_certificate(lp, duals):
    n = lp.num_vars
    combo = [rat(0)] * n
    total = rat(0)
    for y, (coeffs, rel, b) in zip(duals, lp.constraints):
        if rel == LE and y > 0:
            raise LPInternalError("certificate sign error on <= row")
        if rel == GE and y < 0:
            raise LPInternalError("certificate sign error on >= row")
        for j, c in enumerate(coeffs):
            combo[j] += y * c
        total += y * b
    if any(c != 0 for c in combo) or total <= 0:
        raise LPInternalError("certificate fails exact Farkas check")
    return tuple(duals)


def _verify_ray(lp, ray):
    improving = sum((c * d for c, d in zip(lp.objective, ray)), rat(0))
    if lp.maximize:
        improving = -improving
    if improving >= 0:
        raise LPInternalError("ray does not improve the objective")
    for coeffs, rel, _b in lp.constraints:
        along = sum((c * d for c, d in zip(coeffs, ray)), rat(0))
        ok = along <= 0 if rel == LE else along >= 0 if rel == GE else along == 0
        if not ok:
            raise LPInternalError("ray escapes the feasible cone")
    return tuple(ray)


# -- convex hull membership ------------------------------------------------

@dataclass(frozen=True)
class HullInside:
    status = "inside"
    weights: tuple


@dataclass(frozen=True)
class HullOutside:
    """Separator s with s.q > s.p for every hull point q; normalized so
    the largest absolute component is 1."""

    status = "outside"
    separator: tuple
    margin: object


def _weights_phase1(points, target):
    """Phase 1 on sum(w)=1, sum(w q) = target, w >= 0."""
    m = len(points)
    dim = len(target)
    rows = []
    rhs_col = []
    for i in range(dim):
        rows.append([q[i] for q in points])
        rhs_col.append(target[i])
    rows.append([rat(1)] * m)
    rhs_col.append(rat(1))
    return _phase1(rows, rhs_col)


def hull_membership(points: Sequence, p: Sequence):
    """Is p a convex combination of the points?

    Returns HullInside with exact weights, or HullOutside with a strict
    linear separator (both verified before returning).
    """
    pts = [tuple(rat(c) for c in q) for q in points]
    if not pts:
        raise LPError("empty point list")
    target = tuple(rat(c) for c in p)
    dim = len(target)
    if any(len(q) != dim for q in pts):
        raise LPError("dimension mismatch between points and target")

    # duplicated points only grow the tableau
    unique = []
    origin = []
    seen = {}
    for idx, q in enumerate(pts):
        if q not in seen:
            seen[q] = len(unique)
            unique.append(q)
            origin.append(idx)
    tab, basis, flips, total = _weights_phase1(unique, target)
    width = len(tab[0])
    if tab[-1][width - 1] == 0:
        cols = _basic_solution(tab, basis, total)
        weights = [rat(0)] * len(pts)
        for j, w in enumerate(cols):
            weights[origin[j]] = w
        recomposed = [rat(0)] * dim
        mass = rat(0)
        for w, q in zip(weights, pts):
            if w < 0:
                raise LPInternalError("negative hull weight")
            mass += w
            for i in range(dim):
                recomposed[i] += w * q[i]
        if mass != 1 or any(r != t for r, t in zip(recomposed, target)):
            raise LPInternalError("hull weights fail exact recomposition")
        return HullInside(tuple(weights))

    duals = _phase1_duals(tab, flips, total)
    separator = [-duals[i] for i in range(dim)]
    largest = max(abs(c) for c in separator)
    if largest == 0:
        raise LPInternalError("zero separating vector")
    separator = [c / largest for c in separator]
    offset = sum((s * c for s, c in zip(separator, target)), rat(0))
    margin = None
    for q in pts:
        gap = sum((s * c for s, c in zip(separator, q)), rat(0)) - offset
        if gap <= 0:
            raise LPInternalError("separator fails strictness check")
        if margin is None or gap < margin:
            margin = gap
    return HullOutside(tuple(separator), margin)


def polytope_range(points: Sequence, fixed: Sequence, scores: Sequence):
    """Range of sum(w s_h) over w >= 0, sum w = 1, sum(w q_h) = fixed.

    points: rows q_h (possibly empty tuples when fixed is empty); scores:
    one value per row.  Returns (lo, hi) or None when the polytope is
    empty.
    """
    pts = [tuple(rat(c) for c in q) for q in points]
    vals = [rat(s) for s in scores]
    target = tuple(rat(c) for c in fixed)
    dim = len(target)
    if not pts or any(len(q) != dim for q in pts):
        raise LPError("bad polytope description")

    tab, basis, flips, total = _weights_phase1(pts, target)
    width = len(tab[0])
    if tab[-1][width - 1] < 0:
        return None
    _drive_out_artificials(tab, basis, total)
    _strip_columns(tab, total)

    bounds = []
    for sign in (rat(1), rat(-1)):
        work = [row[:] for row in tab]
        wbasis = basis[:]
        wwidth = len(work[0])
        obj = [rat(0)] * wwidth
        for j in range(total):
            obj[j] = sign * vals[j]
        for i, col in enumerate(wbasis):
            coeff = obj[col]
            if coeff != 0:
                row = work[i]
                for j in range(wwidth):
                    obj[j] = obj[j] - coeff * row[j]
        work[-1] = obj
        if run_simplex(work, wbasis) != -1:
            raise LPInternalError("bounded polytope reported unbounded")
        cols = _basic_solution(work, wbasis, total)
        value = sum((w * v for w, v in zip(cols, vals)), rat(0))
        bounds.append(value)
    return bounds[0], bounds[1]
