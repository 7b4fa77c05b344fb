"""Sparse elements of free associative algebras.

A word is a tuple of generator ids; an expression is a map from words
to nonzero rationals.  Multiplication is word concatenation extended
bilinearly, so the factor order of every product is preserved exactly.
"""

from fractions import Fraction

from .polynomial import Poly
from .scalar import rat_to_str


class NC:
    """Immutable noncommutative expression over an arbitrary generator alphabet."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        object.__setattr__(self, "terms", {w: c for w, c in terms.items() if c})

    def __setattr__(self, *a):
        raise AttributeError("NC is immutable")

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls({(): c}) if c else cls()

    @classmethod
    def gen(cls, g, coeff=1):
        c = Fraction(coeff)
        if not c:
            return cls()
        return cls({(g,): c})

    @classmethod
    def word(cls, letters, coeff=1):
        c = Fraction(coeff)
        if not c:
            return cls()
        return cls({tuple(letters): c})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def scalar_value(self):
        if not self.is_scalar():
            raise ValueError("expression is not a scalar")
        return self.terms.get((), Fraction(0))

    def scalar_part(self):
        return self.terms.get((), Fraction(0))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NC.const(other)
        if not isinstance(other, NC):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NC(out)

    __radd__ = __add__

    def __neg__(self):
        return NC({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NC.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return NC()
            return NC({w: c * v for w, v in self.terms.items()})
        if not isinstance(other, NC):
            return NotImplemented
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, 0) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NC(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NC.const(other)
        if not isinstance(other, NC):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def commutator(self, other):
        return self * other - other * self

    def map_words(self, fn):
        """Rebuild the expression applying ``fn: word -> NC`` to each word."""
        out = NC()
        for w, c in self.terms.items():
            out = out + fn(w) * c
        return out

    def abelianize(self, gen_to_var):
        """Commutative image: each letter is sent through ``gen_to_var`` to
        either a polynomial variable id or a scalar (for normalized letters)."""
        result = Poly()
        for w, c in self.terms.items():
            term = Poly.const(c)
            for g in w:
                img = gen_to_var(g)
                if isinstance(img, (int, Fraction)):
                    term = term * img
                else:
                    term = term * Poly.var(img)
            result = result + term
        return result

    def degree(self, weight):
        """Max word degree under a per-letter weight; None for zero."""
        if not self.terms:
            return None
        return max(sum(weight(g) for g in w) for w in self.terms)

    def top_part(self, weight):
        d = self.degree(weight)
        if d is None:
            return NC()
        return NC({w: c for w, c in self.terms.items() if sum(weight(g) for g in w) == d})

    def homogeneous_part(self, d, weight):
        return NC({w: c for w, c in self.terms.items() if sum(weight(g) for g in w) == d})

    def canonical_terms(self):
        return sorted(self.terms.items(), key=lambda wc: (len(wc[0]), wc[0]))

    def to_json(self):
        return [
            {"word": [list(g) for g in w], "coeff": rat_to_str(c)}
            for w, c in self.canonical_terms()
        ]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in self.canonical_terms():
            factors = [rat_to_str(c)] if (c != 1 or not w) else []
            factors += ["_".join(str(x) for x in g) for g in w]
            bits.append("*".join(factors))
        return " + ".join(bits)
