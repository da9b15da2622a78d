"""Exact linear algebra over the integers and rationals.

Matrices are plain nested lists in row-major order. Integer routines demand
int entries; rational routines accept ints or Fractions. Nothing here touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

IntMatrix = list[list[int]]


def _copy_int_matrix(m) -> IntMatrix:
    out = []
    width = None
    for row in m:
        r = list(row)
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise ValueError("ragged matrix")
        for x in r:
            if not isinstance(x, int):
                raise ValueError(f"integer matrix required, got {x!r}")
        out.append(r)
    return out


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matrix_multiply(a, b):
    if not a or not b:
        return []
    inner = len(b)
    assert all(len(row) == inner for row in a)
    cols = len(b[0])
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for row in a
    ]


def hermite_normal_form(m) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (h, u) with u unimodular and u * m = h. Pivot entries are
    positive, entries above each pivot are reduced into [0, pivot), and zero
    rows sit at the bottom.
    """
    h = _copy_int_matrix(m)
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = identity_matrix(rows)
    row = 0
    for col in range(cols):
        if row == rows:
            break
        # gcd elimination below the pivot slot
        while True:
            live = [i for i in range(row, rows) if h[i][col] != 0]
            if not live:
                break
            piv = min(live, key=lambda i: abs(h[i][col]))
            if piv != row:
                h[row], h[piv] = h[piv], h[row]
                u[row], u[piv] = u[piv], u[row]
            done = True
            for i in range(row + 1, rows):
                if h[i][col] != 0:
                    q = h[i][col] // h[row][col]
                    _row_sub(h, i, row, q)
                    _row_sub(u, i, row, q)
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if h[row][col] == 0:
            continue
        if h[row][col] < 0:
            _row_negate(h, row)
            _row_negate(u, row)
        for i in range(row):
            q = h[i][col] // h[row][col]
            if q:
                _row_sub(h, i, row, q)
                _row_sub(u, i, row, q)
        row += 1
    return h, u


def _row_sub(m, i, j, q):
    if q:
        mi, mj = m[i], m[j]
        for k in range(len(mi)):
            mi[k] -= q * mj[k]


def _row_negate(m, i):
    m[i] = [-x for x in m[i]]


def smith_normal_form(m) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms.

    Returns (d, u, v) with u, v unimodular, u * m * v = d, d diagonal with
    nonnegative entries and d[i] | d[i+1] along the chain.
    """
    d = _copy_int_matrix(m)
    rows = len(d)
    cols = len(d[0]) if rows else 0
    u = identity_matrix(rows)
    v = identity_matrix(cols)
    t = 0
    while True:
        pos = _min_nonzero(d, t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            d[t], d[i] = d[i], d[t]
            u[t], u[i] = u[i], u[t]
        if j != t:
            _col_swap(d, t, j)
            _col_swap(v, t, j)
        # clear row and column t, restarting when remainders appear
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    _row_sub(d, i, t, q)
                    _row_sub(u, i, t, q)
                    if d[i][t] != 0:
                        d[t], d[i] = d[i], d[t]
                        u[t], u[i] = u[i], u[t]
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    _col_sub(d, j, t, q)
                    _col_sub(v, j, t, q)
                    if d[t][j] != 0:
                        _col_swap(d, t, j)
                        _col_swap(v, t, j)
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of the remaining block
        offender = None
        if d[t][t] != 0:
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % d[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
        if offender is not None:
            _row_sub(d, t, offender, -1)
            _row_sub(u, t, offender, -1)
            continue
        if d[t][t] < 0:
            _row_negate(d, t)
            _row_negate(u, t)
        t += 1
    return d, u, v


def _min_nonzero(d, t):
    best = None
    for i in range(t, len(d)):
        for j in range(t, len(d[i])):
            if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                best = (i, j)
    return best


def _col_swap(m, a, b):
    for row in m:
        row[a], row[b] = row[b], row[a]


def _col_sub(m, a, b, q):
    if q:
        for row in m:
            row[a] -= q * row[b]


def diagonal_of(d) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def integer_determinant(m) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    a = _copy_int_matrix(m)
    n = len(a)
    if n == 0:
        return 1
    if len(a[0]) != n:
        raise ValueError("determinant requires a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _rows_as_integers(m) -> IntMatrix:
    out = []
    for row in m:
        r = list(row)
        if any(isinstance(x, Fraction) for x in r):
            scale = lcm(*(Fraction(x).denominator for x in r)) if r else 1
            ints = []
            for x in r:
                f = Fraction(x) * scale
                assert f.denominator == 1
                ints.append(int(f))
            out.append(ints)
        else:
            out.append([int(x) for x in r])
    return out


def rational_rank(m) -> int:
    """Rank over the rationals. Accepts int or Fraction entries; rows are
    cleared to integers, then eliminated fraction-free."""
    a = _rows_as_integers(m)
    rows = len(a)
    if rows == 0:
        return 0
    cols = len(a[0])
    rank = 0
    prev = 1
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, rows):
            for j in range(col + 1, cols):
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        if rank == rows:
            break
    return rank


def rational_kernel_basis(m) -> list[tuple[Fraction, ...]]:
    """Basis of {x : m x = 0} over the rationals (column kernel)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * cols
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -a[row_idx][fc]
        basis.append(tuple(vec))
    return basis
