"""Dense exact linear algebra over the scalar field (LaurentFraction entries).

Small systems only; straightforward Gauss-Jordan with first-nonzero pivoting
(deterministic).
"""

from __future__ import annotations

from .scalars import LaurentFraction


def _rref(M, space, width):
    """In-place reduced row echelon form; returns pivot column list."""
    pivots = []
    r = 0
    for c in range(width):
        pr = next((i for i in range(r, len(M)) if not M[i][c].is_zero), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and not M[i][c].is_zero:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return pivots


def solve_affine(A, b, space):
    """All solutions of A t = b.

    Returns (particular, nullspace_basis) with vectors as lists of
    LaurentFraction, or None when inconsistent.  A is a list of rows; the
    number of unknowns is inferred from the row length.
    """
    if not A:
        return [], []
    n = len(A[0])
    M = [list(row) + [bv] for row, bv in zip(A, b)]
    pivots = _rref(M, space, n)
    rank = len(pivots)
    for i in range(rank, len(M)):
        if not M[i][n].is_zero:
            return None
    zero = LaurentFraction.zero(space)
    particular = [zero] * n
    for r, c in enumerate(pivots):
        particular[c] = M[r][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * n
        vec[fc] = LaurentFraction.one(space)
        for r, c in enumerate(pivots):
            vec[c] = -M[r][fc]
        basis.append(vec)
    return particular, basis


def nullspace(A, space, n=None):
    if not A:
        if n is None:
            raise ValueError("need the number of unknowns for an empty system")
        basis = []
        one = LaurentFraction.one(space)
        zero = LaurentFraction.zero(space)
        for i in range(n):
            vec = [zero] * n
            vec[i] = one
            basis.append(vec)
        return basis
    zero = LaurentFraction.zero(space)
    res = solve_affine(A, [zero] * len(A), space)
    return res[1]


def rank(A, space):
    if not A:
        return 0
    M = [list(row) for row in A]
    return len(_rref(M, space, len(M[0])))
