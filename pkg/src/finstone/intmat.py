"""Small exact integer matrix helpers (lists of lists of Python ints)."""


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def shape(A, ncols=None):
    return (len(A), len(A[0]) if A else (ncols or 0))


def transpose(A, ncols=0):
    if not A:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*A)]


def matmul(A, B, inner=None):
    """``A @ B``; ``inner`` gives the shared dimension when ``A`` has no rows."""
    if not A:
        return []
    n = len(A[0])
    if n == 0:
        return [[0] * (len(B[0]) if B else (inner or 0)) for _ in A]
    cols = len(B[0]) if B else 0
    Bt = transpose(B) if B else []
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] if cols else []
            for row in A]


def matvec(A, x):
    return [sum(a * b for a, b in zip(row, x) if a) for row in A]


def det(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    M = [list(row) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def is_unimodular(A):
    return len(A) == (len(A[0]) if A else 0) and abs(det(A)) == 1


def is_diagonal(A):
    return all(x == 0 for i, row in enumerate(A) for j, x in enumerate(row) if i != j)


def hstack(A, B):
    return [list(a) + list(b) for a, b in zip(A, B)]
