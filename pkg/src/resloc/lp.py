"""Exact rational linear programming: strict feasibility with a slack margin.

A point satisfying equalities and strict inequalities is found by maximizing
a margin t under the closed relaxation (every strict inequality is padded by
t) and accepting iff the optimum is positive.  The simplex uses Bland's rule,
so it terminates; problem sizes here are tiny.
"""

from __future__ import annotations

from fractions import Fraction


class _Unbounded(Exception):
    pass


def _simplex_max(A, b, c):
    """max c.x s.t. A x = b, x >= 0, b >= 0 assumed; two-phase, Bland's rule.

    Returns (optimum, x) or None if infeasible.
    """
    m = len(A)
    n = len(A[0]) if m else 0

    def run(T, basis, n_total, obj_row):
        # T: m rows of n_total coefficients plus rhs at index n_total
        # obj_row: length n_total + 1, stores -reduced costs convention below
        while True:
            enter = next((j for j in range(n_total) if obj_row[j] > 0), None)
            if enter is None:
                return
            best = None
            for i in range(m):
                if T[i][enter] > 0:
                    ratio = T[i][n_total] / T[i][enter]
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise _Unbounded()
            leave = best[1]
            piv = T[leave][enter]
            T[leave] = [x / piv for x in T[leave]]
            for i in range(m):
                if i != leave and T[i][enter] != 0:
                    f = T[i][enter]
                    T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
            if obj_row[enter] != 0:
                f = obj_row[enter]
                obj_row[:] = [x - f * y for x, y in zip(obj_row, T[leave])]
            basis[leave] = enter

    # phase 1: artificial variables
    n1 = n + m
    T = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)] + [Fraction(bv)]
         for i, (row, bv) in enumerate(zip(A, b))]
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * (n1 + 1)
    for j in range(n1 + 1):
        obj[j] = -sum(T[i][j] for i in range(m))
    for i in range(m):
        obj[n + i] = Fraction(0)
    obj = [-x for x in obj]  # maximize -(sum of artificials)
    try:
        run(T, basis, n1, obj)
    except _Unbounded:  # pragma: no cover - phase 1 is bounded
        return None
    if obj[n1] != 0:
        return None
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= n:
            enter = next((j for j in range(n) if T[i][j] != 0), None)
            if enter is None:
                continue
            piv = T[i][enter]
            T[i] = [x / piv for x in T[i]]
            for k in range(m):
                if k != i and T[k][enter] != 0:
                    f = T[k][enter]
                    T[k] = [x - f * y for x, y in zip(T[k], T[i])]
            basis[i] = enter
    # phase 2
    T2 = [row[:n] + [row[n1]] for i, row in enumerate(T) if basis[i] < n]
    basis2 = [bv for bv in basis if bv < n]
    m2 = len(T2)
    obj = [Fraction(cv) for cv in c] + [Fraction(0)]
    for i, bv in enumerate(basis2):
        if obj[bv] != 0:
            f = obj[bv]
            obj = [x - f * y for x, y in zip(obj, T2[i])]

    def run2():
        nonlocal obj
        while True:
            enter = next((j for j in range(n) if obj[j] > 0), None)
            if enter is None:
                return
            best = None
            for i in range(m2):
                if T2[i][enter] > 0:
                    ratio = T2[i][n] / T2[i][enter]
                    if best is None or ratio < best[0] or (ratio == best[0] and basis2[i] < basis2[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise _Unbounded()
            leave = best[1]
            piv = T2[leave][enter]
            T2[leave] = [x / piv for x in T2[leave]]
            for i in range(m2):
                if i != leave and T2[i][enter] != 0:
                    f = T2[i][enter]
                    T2[i] = [x - f * y for x, y in zip(T2[i], T2[leave])]
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, T2[leave])]
            basis2[leave] = enter

    run2()
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis2):
        x[bv] = T2[i][n]
    value = sum(Fraction(cv) * xv for cv, xv in zip(c, x))
    return value, x


def lp_strict_feasible(n_vars, equalities, strict, margin_cap=Fraction(1)):
    """Find x in Q^n_vars with a.x = b for (a, b) in equalities and
    a.x < b  /  a.x > b  for (a, b, sense) in strict (sense "<" or ">").

    Returns a tuple of Fractions, or None when no strictly feasible point
    exists.  The witness maximizes the worst slack (capped, so an unbounded
    margin is clamped; any positive witness works).
    """
    # variables: x = p - q (p, q >= 0), margin t, one slack per strict row
    ns = len(strict)
    width = 2 * n_vars + 1 + ns
    A, b = [], []
    for coeffs, rhs in equalities:
        row = [Fraction(0)] * width
        for i, cv in enumerate(coeffs):
            row[i] += Fraction(cv)
            row[n_vars + i] -= Fraction(cv)
        A.append(row)
        b.append(Fraction(rhs))
    for k, (coeffs, rhs, sense) in enumerate(strict):
        row = [Fraction(0)] * width
        sign = 1 if sense == "<" else -1
        for i, cv in enumerate(coeffs):
            row[i] += sign * Fraction(cv)
            row[n_vars + i] -= sign * Fraction(cv)
        row[2 * n_vars] = Fraction(1)       # margin
        row[2 * n_vars + 1 + k] = Fraction(1)  # slack
        A.append(row)
        b.append(sign * Fraction(rhs))
    # cap the margin: t + s = cap
    row = [Fraction(0)] * width
    row[2 * n_vars] = Fraction(1)
    A.append(row + [Fraction(1)])
    b.append(Fraction(margin_cap))
    # widen rows for the cap slack column
    for i in range(len(A) - 1):
        A[i] = A[i] + [Fraction(0)]
    width += 1
    # normalize rhs signs
    for i in range(len(A)):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
    c = [Fraction(0)] * width
    c[2 * n_vars] = Fraction(1)
    result = _simplex_max(A, b, c)
    if result is None:
        return None
    value, x = result
    if value <= 0:
        return None
    return tuple(x[i] - x[n_vars + i] for i in range(n_vars))
