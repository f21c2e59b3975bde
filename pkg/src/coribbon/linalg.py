"""Exact linear algebra over the cyclotomic coefficient field.

Plain Gauss-Jordan elimination on lists of lists of CycloScalar.  Every
system that arises here is small (a few hundred rows at the very worst,
usually under forty), so there is no pivoting subtlety beyond "first
nonzero entry" — which also keeps every routine fully deterministic.
"""

from __future__ import annotations

from coribbon.cyclotomic import one, zero


def identity_matrix(level, n):
    return [
        [one(level) if i == j else zero(level) for j in range(n)]
        for i in range(n)
    ]


def zero_matrix(level, rows, cols):
    return [[zero(level) for _ in range(cols)] for _ in range(rows)]


def mat_mul(a, b):
    if not a or not b:
        return []
    inner = len(b)
    if any(len(row) != inner for row in a):
        raise ValueError("matrix shapes do not compose")
    cols = len(b[0])
    out = []
    for row in a:
        out_row = []
        for j in range(cols):
            total = None
            for k in range(inner):
                term = row[k] * b[k][j]
                total = term if total is None else total + term
            out_row.append(total)
        out.append(out_row)
    return out


def mat_vec(a, v):
    return [col[0] for col in mat_mul(a, [[x] for x in v])]


def transpose(a):
    return [list(col) for col in zip(*a)]


def row_reduce(level, rows):
    """Reduced row echelon form.

    Returns (rref, pivot_columns, rank); the input is not modified.
    """
    work = [list(row) for row in rows]
    height = len(work)
    width = len(work[0]) if work else 0
    pivots = []
    row_at = 0
    for col in range(width):
        if row_at >= height:
            break
        pivot_row = None
        for i in range(row_at, height):
            if not work[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[row_at], work[pivot_row] = work[pivot_row], work[row_at]
        inv = work[row_at][col].inverse()
        work[row_at] = [entry * inv for entry in work[row_at]]
        for i in range(height):
            if i == row_at or work[i][col].is_zero():
                continue
            factor = work[i][col]
            work[i] = [
                entry - factor * lead
                for entry, lead in zip(work[i], work[row_at])
            ]
        pivots.append(col)
        row_at += 1
    return work, pivots, len(pivots)


def matrix_rank(level, rows):
    if not rows:
        return 0
    return row_reduce(level, rows)[2]


def matrix_det(level, rows):
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return one(level)
    work = [list(row) for row in rows]
    det = one(level)
    for col in range(n):
        pivot_row = None
        for i in range(col, n):
            if not work[i][col].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return zero(level)
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        det = det * work[col][col]
        inv = work[col][col].inverse()
        for i in range(col + 1, n):
            if work[i][col].is_zero():
                continue
            factor = work[i][col] * inv
            work[i] = [
                entry - factor * lead
                for entry, lead in zip(work[i], work[col])
            ]
    return det


def matrix_inverse(level, rows):
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("inverse needs a square matrix")
    augmented = [
        list(row) + list(idrow)
        for row, idrow in zip(rows, identity_matrix(level, n))
    ]
    rref, pivots, rank = row_reduce(level, augmented)
    if rank < n or pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rref]


def solve_linear(level, rows, rhs):
    """One exact solution of rows * x = rhs (free variables set to zero).

    Raises ValueError("inconsistent linear system") when none exists.
    """
    if len(rows) != len(rhs):
        raise ValueError("right-hand side length mismatch")
    width = len(rows[0]) if rows else 0
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    rref, pivots, _ = row_reduce(level, augmented)
    if width in pivots:
        raise ValueError("inconsistent linear system")
    solution = [zero(level) for _ in range(width)]
    for i, col in enumerate(pivots):
        solution[col] = rref[i][width]
    return solution


def solve_many(level, rows, rhs_columns):
    """Exact solutions of rows * x = b for every column b at once.

    Returns one solution vector per right-hand side (free variables set to
    zero); raises ValueError("inconsistent linear system") if any column
    has none.  One elimination pass serves all columns.
    """
    count = len(rhs_columns)
    if any(len(col) != len(rows) for col in rhs_columns):
        raise ValueError("right-hand side length mismatch")
    width = len(rows[0]) if rows else 0
    augmented = [
        list(row) + [col[i] for col in rhs_columns]
        for i, row in enumerate(rows)
    ]
    rref, pivots, _ = row_reduce(level, augmented)
    if any(p >= width for p in pivots):
        raise ValueError("inconsistent linear system")
    solutions = []
    for k in range(count):
        vec = [zero(level) for _ in range(width)]
        for i, col in enumerate(pivots):
            vec[col] = rref[i][width + k]
        solutions.append(vec)
    return solutions


def nullspace(level, rows):
    """Deterministic basis of the right nullspace, one vector per free column."""
    width = len(rows[0]) if rows else 0
    rref, pivots, _ = row_reduce(level, rows)
    free_cols = [c for c in range(width) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [zero(level) for _ in range(width)]
        vec[free] = one(level)
        for i, col in enumerate(pivots):
            vec[col] = -rref[i][free]
        basis.append(vec)
    return basis


def column_space_basis(level, rows):
    """Pivot columns of the matrix: a deterministic basis of its image."""
    if not rows:
        return []
    _, pivots, _ = row_reduce(level, rows)
    return [[row[c] for row in rows] for c in pivots]


def span_intersection(level, basis_a, basis_b):
    """Basis of span(basis_a) ∩ span(basis_b); vectors given as rows."""
    if not basis_a or not basis_b:
        return []
    width = len(basis_a[0])
    # Columns of the stacked system are [A^T | -B^T]; nullspace vectors
    # give coefficient pairs with A-part equal to the B-part.
    stacked = [
        [basis_a[k][i] for k in range(len(basis_a))]
        + [-basis_b[k][i] for k in range(len(basis_b))]
        for i in range(width)
    ]
    vectors = []
    for coeffs in nullspace(level, stacked):
        vec = [zero(level) for _ in range(width)]
        for k, weight in enumerate(coeffs[: len(basis_a)]):
            if weight.is_zero():
                continue
            vec = [x + weight * y for x, y in zip(vec, basis_a[k])]
        vectors.append(vec)
    if not vectors:
        return []
    rref, _, rank = row_reduce(level, vectors)
    return rref[:rank]
