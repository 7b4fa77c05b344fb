"""Windowed formal series in z^{-1} (or u^{-1}).

A series is a finitely supported map ``r -> coefficient`` standing for
``sum_r a_r z^{-r}``, together with a validity window ``[lo, hi]``:

* ``lo`` is a hard support floor: every coefficient with r < lo is
  certified zero;
* coefficients with lo <= r <= hi are exactly the stored values
  (absent means zero);
* coefficients with r > hi are unknown.  ``hi=None`` means the series
  is exact everywhere (all coefficients above the stored support are
  genuinely zero) -- used for constants and finite Laurent expressions.

Multiplication shrinks the window: the product of windows [lo1,hi1] and
[lo2,hi2] is certified on [lo1+lo2, min(hi1+lo2, hi2+lo1)].  A window
never stores a coefficient it cannot certify exact.

Coefficients may be scalars, commutative polynomials or noncommutative
expressions; for the latter the factor order of products is preserved.
"""

from fractions import Fraction


class WindowError(ValueError):
    """Requested coefficient lies outside the certified window."""


def _wadd(a, b):
    # extended-integer addition where None plays the role of +infinity
    if a is None or b is None:
        return None
    return a + b


def _wmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class Series:
    __slots__ = ("coeffs", "lo", "hi")

    def __init__(self, coeffs, lo, hi):
        cs = {r: c for r, c in coeffs.items() if c}
        if cs:
            m = min(cs)
            if m < lo:
                raise ValueError(f"coefficient at {m} below declared support floor {lo}")
            if hi is not None and max(cs) > hi:
                raise ValueError("stored coefficient beyond certification ceiling")
        self.coeffs = cs
        self.lo = lo
        self.hi = hi

    @classmethod
    def const(cls, c):
        """An exact constant (known at every exponent)."""
        return cls({0: c} if c else {}, 0, None)

    @classmethod
    def monomial(cls, r, c):
        """An exact single term c * z^{-r}."""
        return cls({r: c} if c else {}, r, None)

    @classmethod
    def zero(cls):
        return cls({}, 0, None)

    def coeff(self, r):
        """Exact coefficient of z^{-r}; raises WindowError above the ceiling."""
        if r < self.lo:
            return Fraction(0)
        if self.hi is not None and r > self.hi:
            raise WindowError(f"exponent {r} beyond certified window [{self.lo}, {self.hi}]")
        return self.coeffs.get(r, Fraction(0))

    def is_certified(self, r):
        return self.hi is None or r <= self.hi

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        lo = min(self.lo, other.lo)
        hi = _wmin(self.hi, other.hi)
        out = dict(self.coeffs)
        for r, c in other.coeffs.items():
            s = out.get(r, 0) + c
            if s:
                out[r] = s
            else:
                out.pop(r, None)
        if hi is not None:
            out = {r: c for r, c in out.items() if r <= hi}
        return Series(out, lo, hi)

    def __neg__(self):
        return Series({r: -c for r, c in self.coeffs.items()}, self.lo, self.hi)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Convolution with the window-shrink rule; domains must be
        compatible (coefficient products must be defined)."""
        if not isinstance(other, Series):
            return NotImplemented
        lo = self.lo + other.lo
        hi = _wmin(_wadd(self.hi, other.lo), _wadd(other.hi, self.lo))
        out = {}
        for r1, c1 in self.coeffs.items():
            for r2, c2 in other.coeffs.items():
                r = r1 + r2
                if hi is not None and r > hi:
                    continue
                try:
                    p = c1 * c2
                except TypeError as exc:  # pragma: no cover - defensive
                    raise TypeError("incompatible coefficient domains") from exc
                s = out.get(r, 0) + p
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return Series(out, lo, hi)

    def scale(self, c):
        return Series({r: c * v for r, v in self.coeffs.items()}, self.lo, self.hi)

    def truncate(self, hi):
        """Forget coefficients above ``hi`` (narrows the certification)."""
        new_hi = _wmin(self.hi, hi)
        out = {r: c for r, c in self.coeffs.items() if new_hi is None or r <= new_hi}
        return Series(out, self.lo, new_hi)

    def support(self):
        return sorted(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.coeffs == other.coeffs and self.lo == other.lo and self.hi == other.hi

    def __repr__(self):
        hi = "inf" if self.hi is None else self.hi
        return f"Series({self.coeffs!r}, window=[{self.lo}, {hi}])"


def mat_mul(A, B):
    """Product of matrices of Series."""
    n = len(A)
    m = len(B[0])
    k = len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for l in range(k):
                term = A[i][l] * B[l][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def series_det(M):
    """Leibniz determinant of a square matrix of Series (commutative
    coefficients assumed)."""
    n = len(M)
    perms = [((), 1)]
    for _ in range(n):
        perms = [(p + (j,), s * (-1) ** sum(1 for x in p if x > j)) for p, s in perms for j in range(n) if j not in p]
    acc = None
    for p, sgn in perms:
        term = None
        for i in range(n):
            f = M[i][p[i]]
            term = f if term is None else term * f
        term = term.scale(Fraction(sgn))
        acc = term if acc is None else acc + term
    return acc
