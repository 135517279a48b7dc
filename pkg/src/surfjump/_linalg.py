"""Small exact linear algebra over Fraction / int."""

from fractions import Fraction


def det_int(matrix):
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def leading_minors(matrix):
    return [det_int([row[:k] for row in matrix[:k]]) for k in range(1, len(matrix) + 1)]


def _gauss_jordan(matrix, rhs_cols):
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(c[i]) for c in rhs_cols]
           for i, row in enumerate(matrix)]
    width = n + len(rhs_cols)
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        row_c = [v / p for v in aug[col]]
        aug[col] = row_c
        nz = [j for j in range(col, width) if row_c[j] != 0]
        for r in range(n):
            f = aug[r][col]
            if r != col and f != 0:
                row = aug[r]
                for j in nz:
                    row[j] -= f * row_c[j]
    return [row[n:] for row in aug]


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` exactly; ``matrix`` must be invertible."""
    return [row[0] for row in _gauss_jordan(matrix, [rhs])]


def inverse(matrix):
    n = len(matrix)
    eye = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return _gauss_jordan(matrix, eye)
