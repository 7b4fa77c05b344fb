"""The Poisson algebra of matrix loop coefficients and its Bethe generators.

Coordinates: Delta_{ij}^{(r)} is the z^{-r}-coefficient of the (i,j)
matrix entry of a loop g(z); a truncation depth N keeps only levels
r >= -N (lower levels are the zero polynomial, not variables).

The Poisson bracket is determined by the two-term recursion

    {D_ij^(p+1), D_kl^(q)} - {D_ij^(p), D_kl^(q+1)}
        = D_il^(p) D_kj^(q) - D_kj^(p) D_il^(q)

together with vanishing once a level drops below the floor.  Telescoping
the recursion against the floor gives the closed form implemented here;
the recursion itself is the primary correctness test of that form.

The Bethe generators sigma_k(C)^{(r)} are the z^{-r}-coefficients of
the traces of C acting on exterior powers of g(z), i.e. of the sums of
principal k x k minors of C*g(z).
"""

from dataclasses import dataclass
from itertools import combinations

from .jacobian import jacobian_rank_randomized
from .polynomial import Poly
from .report import Report
from .series import Series, WindowError, series_det
from .tensors import twisted_antisymmetrizer


def dvar(i, j, r):
    """Variable id of Delta_{ij}^{(r)}."""
    return ("d", i, j, r)


@dataclass(frozen=True)
class LoopContext:
    n: int
    N: int
    u_window: tuple = (-4, 8)

    def __post_init__(self):
        if self.n < 1 or self.N < 0:
            raise ValueError("need n >= 1 and N >= 0")
        lo, hi = self.u_window
        if lo > hi:
            raise ValueError("empty window")

    def check_window(self, r):
        lo, hi = self.u_window
        if not lo <= r <= hi:
            raise WindowError(f"exponent {r} outside context window [{lo}, {hi}]")

    def delta_poly(self, i, j, r):
        """Delta_{ij}^{(r)} as a polynomial; zero below the level floor."""
        if r < -self.N:
            return Poly()
        return Poly.var(dvar(i, j, r))

    def delta_series(self, i, j, hi):
        """The generating series of the (i,j) entry, certified up to z^{-hi}."""
        coeffs = {r: Poly.var(dvar(i, j, r)) for r in range(-self.N, hi + 1)}
        return Series(coeffs, -self.N, hi)


def poisson_bracket_generators(a, b, ctx):
    """{Delta_a, Delta_b} for generator index triples a=(i,j,p), b=(k,l,q).

    Closed form obtained by telescoping the defining recursion down to
    the level floor:

        sum_{s=1}^{p+N} D_il^(p-s) D_kj^(q+s-1) - D_kj^(p-s) D_il^(q+s-1)
    """
    i, j, p = a
    k, l, q = b
    if p < -ctx.N or q < -ctx.N:
        return Poly()
    out = Poly()
    for s in range(1, p + ctx.N + 1):
        lo_level = p - s
        hi_level = q + s - 1
        if hi_level < -ctx.N:
            continue
        t1 = ctx.delta_poly(i, l, lo_level) * ctx.delta_poly(k, j, hi_level)
        t2 = ctx.delta_poly(k, j, lo_level) * ctx.delta_poly(i, l, hi_level)
        out = out + t1 - t2
    return out


def poisson_bracket(f, g, ctx):
    """Bilinear, antisymmetric, Leibniz extension of the generator bracket."""
    out = Poly()
    fvars = sorted(f.variables())
    gvars = sorted(g.variables())
    for vf in fvars:
        df = f.derivative(vf)
        if df.is_zero():
            continue
        _, i, j, p = vf
        for vg in gvars:
            dg = g.derivative(vg)
            if dg.is_zero():
                continue
            _, k, l, q = vg
            br = poisson_bracket_generators((i, j, p), (k, l, q), ctx)
            if br.is_zero():
                continue
            out = out + df * dg * br
    return out


def _twisted_matrix_series(C, ctx, hi):
    """Matrix of series for C * g(z), certified up to z^{-hi}."""
    n = ctx.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            coeffs = {}
            for r in range(-ctx.N, hi + 1):
                acc = Poly()
                for a in range(1, n + 1):
                    cia = C[i - 1, a - 1]
                    if cia:
                        acc = acc + Poly.var(dvar(a, j, r)) * cia
                if acc:
                    coeffs[r] = acc
            row.append(Series(coeffs, -ctx.N, hi))
        rows.append(row)
    return rows


def sigma_universal(C, k, r, ctx):
    """z^{-r}-coefficient of the sum of principal k x k minors of C*g(z)."""
    if not 1 <= k <= ctx.n:
        raise ValueError("k out of range")
    ctx.check_window(r)
    # size the component windows so the k-fold convolution certifies r
    hi = r + (k - 1) * ctx.N
    M = _twisted_matrix_series(C, ctx, hi)
    total = Poly()
    for I in combinations(range(ctx.n), k):
        sub = [[M[a][b] for b in I] for a in I]
        total = total + series_det(sub).coeff(r)
    return total


def sigma_universal_tensor(C, k, r, ctx):
    """Independent oracle for sigma via the literal tensor-space trace of
    A_k (C g(z))^{x k}; agrees with the minor route on the nose."""
    ctx.check_window(r)
    n = ctx.n
    A = twisted_antisymmetrizer(k, C.rows())
    hi = r + (k - 1) * ctx.N
    g = [[ctx.delta_series(i, j, hi) for j in range(1, n + 1)] for i in range(1, n + 1)]
    total = Poly()
    for (out_idx, in_idx), c in A.entries.items():
        term = None
        for m in range(k):
            f = g[in_idx[m]][out_idx[m]]
            term = f if term is None else term * f
        total = total + term.coeff(r) * c
    return total


def substitute_conjugation(f, P, Pinv, ctx):
    """The algebra map induced by g(z) -> P g(z) P^{-1} on loop coordinates:
    Delta^{(r)} -> (P Delta^{(r)} P^{-1}) entrywise."""
    n = ctx.n
    mapping = {}
    for v in f.variables():
        _, i, j, r = v
        img = Poly()
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                c = P[i - 1][a - 1] * Pinv[b - 1][j - 1]
                if c:
                    img = img + ctx.delta_poly(a, b, r) * c
        mapping[v] = img
    return f.subs(mapping)


def verify_poisson_commutativity(C, ctx, pairs):
    """Check {sigma_k(C)^{(r)}, sigma_l(C)^{(s)}} = 0 for each (k,r,l,s)."""
    rep = Report("classical Poisson commutativity")
    cache = {}

    def sig(k, r):
        if (k, r) not in cache:
            cache[(k, r)] = sigma_universal(C, k, r, ctx)
        return cache[(k, r)]

    for k, r, l, s in pairs:
        br = poisson_bracket(sig(k, r), sig(l, s), ctx)
        rep.add(
            f"poisson-comm:k={k},r={r},l={l},s={s}",
            "classical Bethe generators Poisson-commute",
            {"k": k, "r": r, "l": l, "s": s, "n": ctx.n, "N": ctx.N},
            br.is_zero(),
            witness=None if br.is_zero() else repr(br),
        )
    return rep


def verify_universal_independence(C, ctx, degree_cap, seed=0):
    """Jacobian-rank certificate that the nonzero sigma coefficients in the
    window (of total degree <= degree_cap) are algebraically independent."""
    if not C.is_regular():
        raise ValueError("twist matrix must be regular (distinct diagonal entries)")
    rep = Report("classical universal independence")
    lo, hi = ctx.u_window
    family = []
    labels = []
    for k in range(1, ctx.n + 1):
        for r in range(lo, hi + 1):
            f = sigma_universal(C, k, r, ctx)
            if f.is_zero():
                continue
            if (f.degree() or 0) > degree_cap:
                continue
            family.append(f)
            labels.append((k, r))
    variables = sorted(set().union(*(f.variables() for f in family))) if family else []
    rank = jacobian_rank_randomized(family, variables, seed=seed)
    rep.add(
        "universal-independence",
        "Fourier coefficients of the universal Bethe generators are algebraically independent",
        {"n": ctx.n, "N": ctx.N, "window": list(ctx.u_window), "family_size": len(family)},
        rank == len(family),
        witness={"rank": rank, "family": [list(x) for x in labels]},
    )
    return rep
