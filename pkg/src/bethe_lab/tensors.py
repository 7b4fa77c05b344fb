"""Sparse operators on tensor powers (C^n)^{otimes k}.

The key operator is the antisymmetrizer A_k: the idempotent projecting
onto the exterior power, A_k = (1/k!) sum_{s in S_k} sgn(s) P_s.
"""

import itertools
from fractions import Fraction


def permutations_with_sign(k):
    for p in itertools.permutations(range(k)):
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if p[i] > p[j])
        yield p, (-1) ** inv


class TensorOp:
    """Sparse map (C^n)^{otimes k} -> itself; entries[(out_idx, in_idx)] = scalar,
    multi-indices are k-tuples over range(n)."""

    __slots__ = ("n", "k", "entries")

    def __init__(self, n, k, entries):
        self.n = n
        self.k = k
        self.entries = {key: c for key, c in entries.items() if c}

    @classmethod
    def identity(cls, n, k):
        return cls(n, k, {(I, I): Fraction(1) for I in itertools.product(range(n), repeat=k)})

    @classmethod
    def permutation(cls, n, perm):
        """Operator permuting tensor factors: output slot m carries input
        slot perm(m)."""
        k = len(perm)
        entries = {}
        for J in itertools.product(range(n), repeat=k):
            out = tuple(J[perm[m]] for m in range(k))
            entries[(out, J)] = Fraction(1)
        return cls(n, k, entries)

    def compose(self, other):
        """self o other."""
        by_in = {}
        for (out, mid), c in self.entries.items():
            by_in.setdefault(mid, []).append((out, c))
        entries = {}
        for (mid, inp), c2 in other.entries.items():
            for out, c1 in by_in.get(mid, ()):
                key = (out, inp)
                s = entries.get(key, 0) + c1 * c2
                if s:
                    entries[key] = s
                else:
                    entries.pop(key, None)
        return TensorOp(self.n, self.k, entries)

    def scale(self, c):
        return TensorOp(self.n, self.k, {key: c * v for key, v in self.entries.items()})

    def add(self, other):
        entries = dict(self.entries)
        for key, c in other.entries.items():
            s = entries.get(key, 0) + c
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
        return TensorOp(self.n, self.k, entries)

    def trace(self):
        return sum((c for (out, inp), c in self.entries.items() if out == inp), Fraction(0))

    def factorwise_matrix(self, mats):
        """Compose on the right with M_1 x M_2 x ... x M_k for n x n
        matrices of scalars (one per tensor slot)."""
        entries = {}
        for (out, mid), c in self.entries.items():
            # expand (self o (M_1 x ... x M_k))_{out, J}
            choices = []
            for slot in range(self.k):
                col = [(j, mats[slot][mid[slot]][j]) for j in range(self.n) if mats[slot][mid[slot]][j]]
                choices.append(col)
            for combo in itertools.product(*choices):
                J = tuple(j for j, _ in combo)
                val = c
                for _, f in combo:
                    val *= f
                key = (out, J)
                s = entries.get(key, 0) + val
                if s:
                    entries[key] = s
                else:
                    entries.pop(key, None)
        return TensorOp(self.n, self.k, entries)

    def __eq__(self, other):
        return (
            isinstance(other, TensorOp)
            and self.n == other.n
            and self.k == other.k
            and self.entries == other.entries
        )


def antisymmetrizer(k, n):
    """A_k = (1/k!) sum sgn(s) P_s, normalized so that A_k^2 = A_k."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    acc = None
    for perm, sgn in permutations_with_sign(k):
        op = TensorOp.permutation(n, perm).scale(Fraction(sgn))
        acc = op if acc is None else acc.add(op)
    norm = 1
    for i in range(2, k + 1):
        norm *= i
    return acc.scale(Fraction(1, norm))


def twisted_antisymmetrizer(k, C):
    """A_k C_1 ... C_k for an n x n scalar matrix C (C acting in every slot)."""
    n = len(C)
    A = antisymmetrizer(k, n)
    return A.factorwise_matrix([C] * k)
