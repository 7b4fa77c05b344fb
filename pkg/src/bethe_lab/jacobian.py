"""Exact Jacobian rank certificates for algebraic independence.

A family of polynomials over Q is algebraically independent iff its
Jacobian has full rank over the rational function field; full rank at
any single rational point certifies it.  Points are sampled with small
integer coordinates and resampled a few times so that an unlucky hit of
the (measure-zero) degeneracy locus cannot fail a verification run.
"""

import random
from fractions import Fraction


def exact_rank(rows):
    """Rank of a matrix of Fractions by exact Gaussian elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for r in range(row + 1, len(m)):
            if m[r][col]:
                f = m[r][col] / pv
                for c in range(col, ncols):
                    m[r][c] -= f * m[row][c]
        rank += 1
        row += 1
        if row == len(m):
            break
    return rank


def jacobian_rank(family, variables, point):
    """Rank over Q of the matrix (df_i/dx_j) evaluated at ``point``."""
    missing = set().union(*(f.variables() for f in family)) - set(variables) if family else set()
    if missing:
        raise ValueError(f"family uses variables outside the declared list: {sorted(missing)}")
    rows = []
    for f in family:
        rows.append([f.derivative(v).eval(point) for v in variables])
    return exact_rank(rows)


def jacobian_rank_randomized(family, variables, seed=0, retries=8):
    """Best Jacobian rank over up to ``retries`` random points with
    integer coordinates in [-9, 9]."""
    rng = random.Random(seed)
    best = 0
    for _ in range(retries):
        point = {v: Fraction(rng.randint(-9, 9)) for v in variables}
        r = jacobian_rank(family, variables, point)
        if r > best:
            best = r
        if best == len(family):
            break
    return best
