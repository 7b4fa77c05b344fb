"""Antidominant shift vectors and twist matrices.

A shift is an integer vector mu = (d_1, ..., d_n) with d_1 <= ... <= d_n.
Derived data: the pairings omega_star(k) = -(d_{n-k+1} + ... + d_n)
(the vanishing thresholds of the Bethe generators), and the Levi block
structure (maximal runs of equal d_i), which governs which twist
matrices centralize the shift.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .scalar import rat


class AntidominanceError(ValueError):
    def __init__(self, index, d):
        self.index = index
        super().__init__(
            f"shift vector {list(d)} is not antidominant: d_{index} > d_{index + 1}"
        )


@dataclass(frozen=True)
class ShiftVector:
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))

    @property
    def n(self):
        return len(self.d)

    def omega_star(self, k):
        """-(d_{n-k+1} + ... + d_n); the support threshold for the k-th
        family of Bethe generators."""
        if not 0 <= k <= self.n:
            raise ValueError("k out of range")
        return -sum(self.d[self.n - k :])

    def levi_blocks(self):
        """Maximal runs of equal entries, as lists of 1-based indices."""
        blocks = []
        cur = [1]
        for i in range(1, self.n):
            if self.d[i] == self.d[i - 1]:
                cur.append(i + 1)
            else:
                blocks.append(cur)
                cur = [i + 1]
        blocks.append(cur)
        return blocks

    def top_weight_subsets(self, k):
        """k-subsets I of {1..n} (1-based, sorted tuples) maximizing
        sum_{i in I} d_i; they index the wedge basis of the extremal
        Levi subrepresentation of the k-th exterior power."""
        best = None
        out = []
        for I in combinations(range(1, self.n + 1), k):
            s = sum(self.d[i - 1] for i in I)
            if best is None or s > best:
                best = s
                out = [I]
            elif s == best:
                out.append(I)
        return out


def validate_shift(mu):
    """Validate antidominance and wrap; reports the first violated index."""
    d = tuple(int(x) for x in mu)
    for i in range(len(d) - 1):
        if d[i] > d[i + 1]:
            raise AntidominanceError(i + 1, d)
    return ShiftVector(d)


class TwistMatrix:
    """The twist C: an n x n matrix of exact rationals with regularity
    metadata.  Regularity certification is implemented for diagonal
    matrices (distinct diagonal entries); general matrices are accepted
    for the algebra but cannot be certified regular."""

    __slots__ = ("mat",)

    def __init__(self, rows):
        self.mat = tuple(tuple(rat(x) for x in row) for row in rows)
        n = len(self.mat)
        if any(len(row) != n for row in self.mat):
            raise ValueError("twist matrix must be square")

    @classmethod
    def diagonal(cls, entries):
        entries = [rat(x) for x in entries]
        n = len(entries)
        return cls([[entries[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)])

    @property
    def n(self):
        return len(self.mat)

    def __getitem__(self, ij):
        i, j = ij
        return self.mat[i][j]

    def rows(self):
        return [list(r) for r in self.mat]

    def is_diagonal(self):
        return all(not self.mat[i][j] for i in range(self.n) for j in range(self.n) if i != j)

    def diagonal_entries(self):
        return [self.mat[i][i] for i in range(self.n)]

    def is_regular(self):
        """Distinct eigenvalues; certified for diagonal matrices only."""
        if not self.is_diagonal():
            raise ValueError("regularity check implemented for diagonal twists only")
        diag = self.diagonal_entries()
        return len(set(diag)) == len(diag)

    def is_block_diagonal(self, blocks):
        index_block = {}
        for b, block in enumerate(blocks):
            for i in block:
                index_block[i] = b
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                if index_block[i] != index_block[j] and self.mat[i - 1][j - 1]:
                    return False
        return True

    def is_blockwise_regular(self, blocks):
        """Regular within every Levi block (diagonal matrices)."""
        if not self.is_diagonal():
            raise ValueError("regularity check implemented for diagonal twists only")
        for block in blocks:
            vals = [self.mat[i - 1][i - 1] for i in block]
            if len(set(vals)) != len(vals):
                return False
        return True

    def scale(self, c):
        c = rat(c)
        return TwistMatrix([[c * x for x in row] for row in self.mat])

    def minor(self, rows, cols):
        """det of the submatrix on 1-based row/col index tuples."""
        k = len(rows)
        if k == 0:
            return Fraction(1)
        sub = [[self.mat[r - 1][c - 1] for c in cols] for r in rows]
        return _det(sub)

    def conjugate(self, P, Pinv):
        """P^{-1} C P for rational matrices given as lists of lists."""
        n = self.n
        tmp = [[sum(Pinv[i][a] * self.mat[a][j] for a in range(n)) for j in range(n)] for i in range(n)]
        out = [[sum(tmp[i][a] * P[a][j] for a in range(n)) for j in range(n)] for i in range(n)]
        return TwistMatrix(out)

    def exterior_trace(self, subsets):
        """trace of the k-th exterior power of C restricted to the span of
        the wedge vectors indexed by ``subsets``: sum of the corresponding
        principal minors."""
        return sum((self.minor(I, I) for I in subsets), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, TwistMatrix) and self.mat == other.mat

    def __repr__(self):
        return f"TwistMatrix({[list(map(str, r)) for r in self.mat]})"


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * _det(minor)
    return total
