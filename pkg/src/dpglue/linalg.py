"""Exact dense linear algebra over any of the package's fields.

Matrices are plain lists of rows.  Everything is fraction-free-agnostic:
we just divide, which is fine because all coefficient fields here are
exact.  Dimensions stay small (<= ~100), so Gaussian elimination is the
only algorithm needed.
"""

from __future__ import annotations


def zeros(field, rows: int, cols: int):
    return [[field.zero for _ in range(cols)] for _ in range(rows)]


def identity(field, n: int):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def mat_mul(field, a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(field, rows, cols)
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            aik = ai[k]
            if not aik:
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                oi[j] = oi[j] + aik * bk[j]
    return out

def mat_vec(field, a, v):
    out = []
    for row in a:
        acc = field.zero
        for c, x in zip(row, v):
            if c and x:
                acc = acc + c * x
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def rref(field, mat):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [list(row) for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = field.one / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(field, mat) -> int:
    if not mat:
        return 0
    return len(rref(field, mat)[1])


def nullspace(field, mat):
    """Basis of the right kernel, as a list of vectors."""
    if not mat:
        return []
    cols = len(mat[0])
    red, pivots = rref(field, mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * cols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(field, mat, rhs):
    """One solution of mat @ x = rhs, or None if inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [list(mat[i]) + [rhs[i]] for i in range(rows)]
    red, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x

def det(field, mat):
    n = len(mat)
    m = [list(row) for row in mat]
    sign = field.one
    result = field.one
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            return field.zero
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        result = result * m[c][c]
        inv = field.one / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * result


def in_span(field, basis, vec) -> bool:
    if not basis:
        return all(not x for x in vec)
    return solve(field, transpose(basis), vec) is not None


def span_dim(field, vectors) -> int:
    return rank(field, vectors)


def row_space_basis(field, vectors):
    """Echelonized basis of the span of the given vectors."""
    if not vectors:
        return []
    red, pivots = rref(field, vectors)
    return [red[i] for i in range(len(pivots))]


def charpoly(field, mat):
    """Characteristic polynomial det(t*I - M) as a Poly over the field.

    Works in any characteristic by eliminating over the rational
    function field field(t).
    """
    from dpglue.polynomials import Poly
    from dpglue.rational import FunctionField, RationalFunction

    n = len(mat)
    ft = FunctionField(field, "t")
    t = ft.x
    m = [
        [
            (t if i == j else ft.zero) - RationalFunction.const(field, mat[i][j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    d = det(ft, m)
    if d.den.degree != 0:
        raise AssertionError("characteristic polynomial must be polynomial")
    return Poly(field, d.num.coeffs).monic() if d.num.coeffs else Poly.zero(field)
