"""The universal RTT algebra of matrix-loop quantum coefficients.

Generators t_ij^(r) (levels r >= -N, lower levels are zero) subject to

    [t_ij^(p+1), t_kl^(q)] - [t_ij^(p), t_kl^(q+1)]
        = t_kj^(q) t_il^(p) - t_kj^(p) t_il^(q).

Telescoping against the level floor gives the commutator of any two
generators as an explicit quadratic expression (the recursion is
re-checked in the tests, term by term, as the primary correctness
oracle).  Ordered monomials in the generators form a linear basis, so
rewriting any word into weakly increasing order -- inserting commutator
corrections for each adjacent swap -- computes a canonical normal form.
Each correction strictly lowers the total level, which is bounded below
by the floor, so rewriting terminates; uniqueness of the result follows
from the basis property rather than from any confluence analysis.

The quantum Bethe generators tau_k(u, C) are the traces of
A_k C_1 ... C_k T_1(u) T_2(u-1) ... T_k(u-k+1) over the k-th tensor
power; their coefficients pairwise commute.
"""

from dataclasses import dataclass
from fractions import Fraction

from .classical_loop import dvar
from .ncword import NC
from .polynomial import Poly
from .report import Report
from .scalar import binomial
from .series import Series, WindowError
from .tensors import twisted_antisymmetrizer


def tgen(i, j, r):
    return ("t", i, j, r)


def _order_key(g):
    # graded by level, then row, then column
    _, i, j, r = g
    return (r, i, j)


@dataclass(frozen=True)
class YContext:
    n: int
    N: int
    u_window: tuple = (-4, 8)

    def __post_init__(self):
        if self.n < 1 or self.N < 0:
            raise ValueError("need n >= 1 and N >= 0")

    def check_window(self, r):
        lo, hi = self.u_window
        if not lo <= r <= hi:
            raise WindowError(f"exponent {r} outside context window [{lo}, {hi}]")

    def gen_nc(self, i, j, r):
        if r < -self.N:
            return NC()
        return NC.gen(tgen(i, j, r))


_REGISTRY = {}


def _tables(ctx):
    key = (ctx.n, ctx.N)
    if key not in _REGISTRY:
        _REGISTRY[key] = {"comm": {}, "nf": {}}
    return _REGISTRY[key]


def derived_commutator(a, b, ctx):
    """[t_a, t_b] for generator triples a=(i,j,p), b=(k,l,q), as the
    telescoped quadratic expression; memoized."""
    i, j, p = a
    k, l, q = b
    if p < -ctx.N or q < -ctx.N:
        return NC()
    table = _tables(ctx)["comm"]
    key = (i, j, p, k, l, q)
    if key in table:
        return table[key]
    out = NC()
    for s in range(1, p + ctx.N + 1):
        lo_level = p - s
        hi_level = q + s - 1
        if hi_level < -ctx.N:
            continue
        out = out + NC.word((tgen(k, j, hi_level), tgen(i, l, lo_level)))
        out = out - NC.word((tgen(k, j, lo_level), tgen(i, l, hi_level)))
    table[key] = out
    return out


def _nf_prepend(g, w, ctx, memo):
    """Normal form of the word g.w for an already-ordered word w, as a
    dict word -> coefficient.  Straightens by pushing the new letter in
    from the left; every correction strictly lowers the total level, so
    the (letter, ordered word) recursion is well founded."""
    key = (g, w)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if not w or _order_key(g) <= _order_key(w[0]):
        res = {(g,) + w: Fraction(1)}
        memo[key] = res
        return res
    w0, rest = w[0], w[1:]
    acc = {}
    #  g w0 rest = w0 (g rest) + [g, w0] rest
    for word, c in _nf_prepend(g, rest, ctx, memo).items():
        for word2, c2 in _nf_prepend(w0, word, ctx, memo).items():
            s = acc.get(word2, 0) + c * c2
            if s:
                acc[word2] = s
            else:
                acc.pop(word2, None)
    comm = derived_commutator(g[1:], w0[1:], ctx)
    for cw, cc in comm.terms.items():
        a, b = cw
        for word, c in _nf_prepend(b, rest, ctx, memo).items():
            for word2, c2 in _nf_prepend(a, word, ctx, memo).items():
                s = acc.get(word2, 0) + cc * c * c2
                if s:
                    acc[word2] = s
                else:
                    acc.pop(word2, None)
    memo[key] = acc
    return acc


def _nf_word(w, ctx, nf_memo):
    if len(w) <= 1:
        return {w: Fraction(1)}
    out = {w[-1:]: Fraction(1)}
    for g in reversed(w[:-1]):
        nxt = {}
        for word, c in out.items():
            for word2, c2 in _nf_prepend(g, word, ctx, nf_memo).items():
                s = nxt.get(word2, 0) + c * c2
                if s:
                    nxt[word2] = s
                else:
                    nxt.pop(word2, None)
        out = nxt
    return out


def normal_form(x, ctx):
    """Canonical form: every word weakly increasing in the generator order."""
    nf_memo = _tables(ctx)["nf"]
    acc = {}
    for w, c in x.terms.items():
        for w2, c2 in _nf_word(w, ctx, nf_memo).items():
            s = acc.get(w2, 0) + c * c2
            if s:
                acc[w2] = s
            else:
                acc.pop(w2, None)
    return NC(acc)


def t_series(ctx, i, j, shift, hi):
    """Generating series of t_ij(u - shift) re-expanded in u^{-1}, certified
    up to u^{-hi}; every coefficient is a finite sum thanks to the floor."""
    coeffs = {}
    for c in range(-ctx.N, hi + 1):
        acc = NC()
        for r in range(-ctx.N, c + 1):
            w = binomial(-r, c - r) * Fraction(-shift) ** (c - r)
            if w:
                acc = acc + NC.gen(tgen(i, j, r)) * w
        if acc:
            coeffs[c] = acc
    return Series(coeffs, -ctx.N, hi)


def tau_universal(C, k, r, ctx, normalize=True):
    """u^{-r}-coefficient of tr A_k C_1...C_k T_1(u)...T_k(u-k+1), in
    canonical normal form."""
    if not 1 <= k <= ctx.n:
        raise ValueError("k out of range")
    ctx.check_window(r)
    M = twisted_antisymmetrizer(k, C.rows())
    hi = r + (k - 1) * ctx.N
    series_cache = {}

    def factor(a, b, m):
        key = (a, b, m)
        if key not in series_cache:
            series_cache[key] = t_series(ctx, a, b, m, hi)
        return series_cache[key]

    acc = {}
    for (out_idx, in_idx), c in M.entries.items():
        term = None
        for m in range(k):
            f = factor(in_idx[m] + 1, out_idx[m] + 1, m)
            term = f if term is None else term * f
        cf = term.coeff(r)
        if isinstance(cf, Fraction):
            continue  # absent coefficient: exact zero
        for w, c2 in cf.terms.items():
            s = acc.get(w, 0) + c * c2
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
    total = NC(acc)
    return normal_form(total, ctx) if normalize else total


def verify_tau_commutativity(C, ctx, pairs):
    """normal_form([tau_k^(r), tau_l^(s)]) = 0 for each requested pair."""
    rep = Report("quantum commutativity (universal)")
    cache = {}

    def tau(k, r):
        if (k, r) not in cache:
            cache[(k, r)] = tau_universal(C, k, r, ctx)
        return cache[(k, r)]

    for k, r, l, s in pairs:
        x, y = tau(k, r), tau(l, s)
        z = normal_form(x * y - y * x, ctx)
        rep.add(
            f"tau-comm:k={k},r={r},l={l},s={s}",
            "quantum Bethe coefficients pairwise commute",
            {"k": k, "r": r, "l": l, "s": s, "n": ctx.n, "N": ctx.N},
            z.is_zero(),
            witness=None if z.is_zero() else repr(z),
        )
    return rep


def mu_twisted_degree(g, mu):
    """Filtration degree of a generator under the shift twist: r + d_j."""
    _, _i, j, r = g
    return r + mu.d[j - 1]


def quantum_weight(mu):
    return lambda g: mu_twisted_degree(g, mu)


def symbol_quantum(x, mu, ctx):
    """Commutative image of the top-degree words under the twisted
    filtration: t_ij^(r) -> Delta_ij^(r).  Returns the zero polynomial
    for zero input."""
    if x.is_zero():
        return Poly()
    top = x.top_part(quantum_weight(mu))
    return top.abelianize(lambda g: dvar(g[1], g[2], g[3]))


def substitute_basis_change(x, g, ginv, ctx):
    """Algebra automorphism induced by a constant basis change:
    t_ij^(r) -> sum_ab (g^{-1})_{ia} t_ab^(r) g_{bj}, extended to words."""
    n = ctx.n

    def image_of_letter(letter):
        _, i, j, r = letter
        out = NC()
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                c = ginv[i - 1][a - 1] * g[b - 1][j - 1]
                if c:
                    out = out + NC.gen(tgen(a, b, r)) * c
        return out

    def image_of_word(w):
        acc = NC.const(1)
        for letter in w:
            acc = acc * image_of_letter(letter)
        return acc

    return x.map_words(image_of_word)


class Tensor2:
    """Elements of the tensor square of the algebra: sparse combinations
    of pairs of words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, x, y):
        out = {}
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                out[(w1, w2)] = out.get((w1, w2), 0) + c1 * c2
        return cls(out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Tensor2(out)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def scale(self, c):
        return Tensor2({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for (a1, a2), c1 in self.terms.items():
            for (b1, b2), c2 in other.terms.items():
                k = (a1 + b1, a2 + b2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return Tensor2(out)

    def normal_form(self, ctx):
        memo = _tables(ctx)["nf"]
        out = Tensor2()
        for (w1, w2), c in self.terms.items():
            n1 = NC(_nf_word(w1, ctx, memo))
            n2 = NC(_nf_word(w2, ctx, memo))
            out = out + Tensor2.of(n1, n2).scale(c)
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Tensor2) and self.terms == other.terms


def coproduct(x, ctx):
    """The comultiplication of the level-zero algebra:
    t_ij^(r) -> sum_k sum_{p+q=r} t_ik^(p) x t_kj^(q)."""
    if ctx.N != 0:
        raise ValueError("comultiplication is defined on the level-zero algebra only")
    n = ctx.n

    def image_of_letter(letter):
        _, i, j, r = letter
        out = Tensor2()
        for k in range(1, n + 1):
            for p in range(0, r + 1):
                q = r - p
                out = out + Tensor2.of(NC.gen(tgen(i, k, p)), NC.gen(tgen(k, j, q)))
        return out

    result = Tensor2()
    for w, c in x.terms.items():
        acc = Tensor2({((), ()): Fraction(1)})
        for letter in w:
            acc = acc * image_of_letter(letter)
        result = result + acc.scale(c)
    return result


def evaluate_to_functions(x, ctx):
    """Evaluation onto matrix functions: t_ij^(r) -> delta_{0,r} Delta_ij."""
    if ctx.N != 0:
        raise ValueError("evaluation is defined on the level-zero algebra only")

    def letter_image(g):
        _, i, j, r = g
        return dvar(i, j, 0) if r == 0 else None

    out = Poly()
    for w, c in x.terms.items():
        term = Poly.const(c)
        dead = False
        for g in w:
            img = letter_image(g)
            if img is None:
                dead = True
                break
            term = term * Poly.var(img)
        if not dead:
            out = out + term
    return out


def shift_iso(x, ctx):
    """Releveling isomorphism onto the level-zero algebra:
    t_ij^(r) -> t_ij^(r+N)."""
    N = ctx.N
    out = {}
    for w, c in x.terms.items():
        nw = tuple(tgen(g[1], g[2], g[3] + N) for g in w)
        out[nw] = out.get(nw, 0) + c
    return NC(out), YContext(ctx.n, 0, ctx.u_window)


def comm_table_snapshot(ctx):
    """The memoized commutator table in serializable form."""
    table = _tables(ctx)["comm"]
    return {",".join(map(str, k)): v.to_json() for k, v in sorted(table.items())}


def comm_table_restore(ctx, payload):
    """Install a previously saved commutator table (trusted content)."""
    table = _tables(ctx)["comm"]
    for key, terms in payload.items():
        k = tuple(int(x) for x in key.split(","))
        nc = NC(
            {
                tuple(tuple([g[0]] + [int(v) for v in g[1:]]) for g in t["word"]): Fraction(t["coeff"])
                for t in terms
            }
        )
        table[k] = nc
