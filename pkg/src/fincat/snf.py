"""Integer Smith normal form with transform tracking.

Small exact-arithmetic routines used as the presentation-matrix oracle
for kernels and cokernels of finite abelian group homomorphisms.
Matrices are lists of row lists of Python ints; columns are plain lists.
"""

from __future__ import annotations

from fractions import Fraction


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner = len(a), len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(rows)
    ]


def smith_normal_form(mat: list[list[int]]):
    """Return (u, v, d) with d = u * mat * v diagonal and d[i][i] | d[i+1][i+1].

    u and v are unimodular.  Diagonal entries are non-negative.  The
    divisibility chain is restored by merging offending pairs and
    rediagonalizing, which terminates because the leading entries strictly
    shrink.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    d = [row[:] for row in mat]
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < rows and t < cols:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            clean = True
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    add_row(t, i, -(d[i][t] // d[t][t]))
                    if d[i][t] != 0:
                        swap_rows(t, i)
                        clean = False
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    add_col(t, j, -(d[t][j] // d[t][t]))
                    if d[t][j] != 0:
                        swap_cols(t, j)
                        clean = False
            if not clean:
                continue
            # The pivot must divide the whole remaining block or the
            # divisibility chain can break; pull in an offending row and
            # keep reducing (the pivot magnitude strictly shrinks).
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % d[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, v, d


def integer_nullspace(mat: list[list[int]]) -> list[list[int]]:
    """Basis, as columns, of the integer solutions of mat * x = 0."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    u, v, d = smith_normal_form(mat)
    basis = []
    for j in range(cols):
        if j >= rows or d[j][j] == 0:
            basis.append([v[i][j] for i in range(cols)])
    return basis


def column_lattice_basis(gens: list[list[int]], length: int) -> list[list[int]]:
    """Basis of the lattice spanned by the given columns of a fixed length.

    Uses integer column reduction only, so no transform bookkeeping is
    needed; the result is in column echelon form.
    """
    work = [col[:] for col in gens if any(x != 0 for x in col)]
    lead = 0
    for row in range(length):
        live = [j for j in range(lead, len(work)) if work[j][row] != 0]
        if not live:
            continue
        while True:
            live = [j for j in range(lead, len(work)) if work[j][row] != 0]
            if len(live) <= 1:
                break
            small = min(live, key=lambda j: abs(work[j][row]))
            work[lead], work[small] = work[small], work[lead]
            for j in live:
                jj = lead if j == small else (small if j == lead else j)
                if jj != lead and work[jj][row] != 0:
                    q = work[jj][row] // work[lead][row]
                    work[jj] = [x - q * y for x, y in zip(work[jj], work[lead])]
        live = [j for j in range(lead, len(work)) if work[j][row] != 0]
        if live:
            work[lead], work[live[0]] = work[live[0]], work[lead]
            lead += 1
    return [col for col in work if any(x != 0 for x in col)]


def exact_inverse(mat: list[list[int]]) -> list[list[Fraction]]:
    """Exact inverse of a square integer matrix via Fraction elimination."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                factor = a[i][col]
                a[i] = [x - factor * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def integer_inverse(mat: list[list[int]]) -> list[list[int]]:
    """Inverse of an integer matrix that is invertible over the integers."""
    inv = exact_inverse(mat)
    out = []
    for row in inv:
        assert all(x.denominator == 1 for x in row), "matrix not unimodular"
        out.append([int(x) for x in row])
    return out
