"""Truncated Poincare series in q with nonnegative integer coefficients."""


class QSeries:
    __slots__ = ("coeffs", "cap")

    def __init__(self, coeffs, cap=None):
        coeffs = list(coeffs)
        if cap is None:
            cap = len(coeffs) - 1
        if len(coeffs) != cap + 1:
            raise ValueError("coefficient list does not match cap")
        if any(c < 0 for c in coeffs):
            raise ValueError("Poincare coefficients must be nonnegative")
        self.coeffs = coeffs
        self.cap = cap

    @classmethod
    def one(cls, cap):
        return cls([1] + [0] * cap, cap)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.cap == other.cap and self.coeffs == other.coeffs

    def __mul__(self, other):
        cap = min(self.cap, other.cap)
        out = [0] * (cap + 1)
        for i, a in enumerate(self.coeffs[: cap + 1]):
            if not a:
                continue
            for j in range(cap + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return QSeries(out, cap)

    def __repr__(self):
        return f"QSeries({self.coeffs})"


def qseries_free_algebra(degrees, cap):
    """Poincare series of a free commutative polynomial algebra on
    generators of the given positive degrees (with multiplicity),
    truncated at q^cap."""
    out = [1] + [0] * cap
    for d in degrees:
        if d <= 0:
            raise ValueError("generator degrees must be positive")
        # multiply by 1/(1 - q^d)
        for m in range(d, cap + 1):
            out[m] += out[m - d]
    return QSeries(out, cap)


def qseries_partition_product(copies, cap):
    """Coefficients of prod_{r>=1} (1 - q^r)^{-copies} up to q^cap:
    ``copies`` independent towers of generators in degrees 1,2,3,..."""
    if copies < 0 or cap < 0:
        raise ValueError("copies and cap must be nonnegative")
    degrees = [r for _ in range(copies) for r in range(1, cap + 1)]
    return qseries_free_algebra(degrees, cap)
