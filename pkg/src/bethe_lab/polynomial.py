"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by
variable id; a polynomial is a map from monomials to nonzero rationals.
Variable ids are arbitrary comparable tuples, e.g. ``("d", i, j, r)``
for a matrix-coefficient variable; the modules that own a variable
family declare their own id layout.
"""

from fractions import Fraction

from .scalar import rat_to_str

EMPTY = ()


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = dict(m1)
    for v, e in m2:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def mono_degree(m, weight=None):
    if weight is None:
        return sum(e for _, e in m)
    return sum(weight(v) * e for v, e in m)


class Poly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        object.__setattr__(self, "terms", {m: c for m, c in terms.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls({EMPTY: c}) if c else cls()

    @classmethod
    def var(cls, v, exp=1, coeff=1):
        c = Fraction(coeff)
        if not c:
            return cls()
        return cls({((v, exp),): c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and EMPTY in self.terms)

    def constant_value(self):
        """The scalar value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(EMPTY, Fraction(0))

    def variables(self):
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def coeff(self, m):
        return self.terms.get(m, Fraction(0))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly()
            return Poly({m: c * v for m, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def derivative(self, v):
        out = {}
        for m, c in self.terms.items():
            for i, (w, e) in enumerate(m):
                if w == v:
                    nm = m[:i] + ((w, e - 1),) + m[i + 1 :] if e > 1 else m[:i] + m[i + 1 :]
                    s = out.get(nm, 0) + c * e
                    if s:
                        out[nm] = s
                    else:
                        out.pop(nm, None)
                    break
        return Poly(out)

    def subs(self, mapping):
        """Substitute variables by polynomials (or scalars); variables not
        in the mapping are kept."""
        result = Poly()
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                if v in mapping:
                    repl = mapping[v]
                    if isinstance(repl, (int, Fraction)):
                        repl = Poly.const(repl)
                    term = term * repl**e
                else:
                    term = term * Poly.var(v, e)
            result = result + term
        return result

    def eval(self, point):
        """Evaluate at a full assignment variable -> rational."""
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val *= point[v] ** e
            total += val
        return total

    def degree(self, weight=None):
        """Max term degree under an optional weight map; -inf sentinel (None)
        for the zero polynomial."""
        if not self.terms:
            return None
        return max(mono_degree(m, weight) for m in self.terms)

    def top_part(self, weight=None):
        """Sum of the terms of maximal (weighted) degree."""
        d = self.degree(weight)
        if d is None:
            return Poly()
        return Poly({m: c for m, c in self.terms.items() if mono_degree(m, weight) == d})

    def homogeneous_part(self, d, weight=None):
        return Poly({m: c for m, c in self.terms.items() if mono_degree(m, weight) == d})

    def map_coeffs(self, fn):
        return Poly({m: fn(c) for m, c in self.terms.items()})

    def canonical_terms(self):
        """Terms sorted in graded-lexicographic order on the variable ids."""
        return sorted(self.terms.items(), key=lambda mc: (mono_degree(mc[0]), mc[0]))

    def to_json(self):
        return [
            {
                "monomial": [[list(v), e] for v, e in m],
                "coeff": rat_to_str(c),
            }
            for m, c in self.canonical_terms()
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.canonical_terms():
            factors = [rat_to_str(c)] if (c != 1 or not m) else []
            for v, e in m:
                name = "_".join(str(x) for x in v) if isinstance(v, tuple) else str(v)
                factors.append(name if e == 1 else f"{name}^{e}")
            bits.append("*".join(factors))
        return " + ".join(bits)
