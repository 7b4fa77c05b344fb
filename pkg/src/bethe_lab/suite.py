"""Verification-suite orchestration.

A SuiteConfig selects the grids; run_suite executes the chosen suites in
dependency order and assembles one report.  A fixed seed makes the run
fully deterministic (the JSON output is byte-identical between runs up
to the timing field).
"""

import random
import time
from dataclasses import dataclass

from . import classical_loop as cloop
from . import classical_slice as cslice
from . import yangian_shifted as yshift
from . import yangian_universal as yuniv
from .cache import CacheStore
from .gl2 import gl2_verify_commutativity
from .qseries import qseries_partition_product
from .report import SCHEMA, Report
from .shift import TwistMatrix, validate_shift

ALL_SUITES = ("classical", "universal", "shifted", "gl2", "poincare", "distinctness")


@dataclass
class SuiteConfig:
    n: int = 2
    mu: tuple = (-1, 0)
    twist: tuple = ("1", "2")
    N: int = 1
    u_window: tuple = (-2, 4)
    z_window: tuple = (-8, 8)
    degree_cap: int = 4
    q_cap: int = 6
    suites: tuple = ALL_SUITES
    seed: int = 0
    cache_dir: str = None
    assoc_samples: int = 100
    quant_samples: int = 25

    def validated(self):
        mu = validate_shift(self.mu)
        if mu.n != self.n:
            raise ValueError(f"shift vector has length {mu.n}, expected n={self.n}")
        if len(self.twist) != self.n:
            raise ValueError("twist diagonal needs one entry per row")
        unknown = set(self.suites) - set(ALL_SUITES)
        if unknown:
            raise ValueError(f"unknown suites: {sorted(unknown)}")
        if "gl2" in self.suites and self.n != 2:
            raise ValueError("the gl2 suite requires n = 2")
        return self

    def twist_matrix(self):
        return TwistMatrix.diagonal(self.twist)

    def echo(self):
        return {
            "n": self.n,
            "mu": list(self.mu),
            "twist": [str(t) for t in self.twist],
            "N": self.N,
            "u_window": list(self.u_window),
            "z_window": list(self.z_window),
            "degree_cap": self.degree_cap,
            "q_cap": self.q_cap,
            "suites": list(self.suites),
            "seed": self.seed,
            "cache_dir": self.cache_dir,
        }


def _pairs_grid(n, window):
    lo, hi = window
    out = []
    for k in range(1, n + 1):
        for l in range(k, n + 1):
            for r in range(lo, hi + 1):
                for s in range(lo, hi + 1):
                    if l == k and s < r:
                        continue
                    out.append((k, r, l, s))
    return out


def _random_word(rng, ctx, max_len):
    length = rng.randint(1, max_len)
    letters = []
    for _ in range(length):
        i = rng.randint(1, ctx.n)
        j = rng.randint(1, ctx.n)
        r = rng.randint(-ctx.N, 2)
        letters.append(yuniv.tgen(i, j, r))
    return tuple(letters)


def run_classical(config, rep):
    ctx = cloop.LoopContext(config.n, config.N, tuple(config.u_window))
    C = config.twist_matrix()
    rep.extend(cloop.verify_poisson_commutativity(C, ctx, _pairs_grid(config.n, config.u_window)))
    if C.is_regular():
        rep.extend(cloop.verify_universal_independence(C, ctx, config.degree_cap, seed=config.seed))
    mu = validate_shift(config.mu)
    sctx = cslice.SliceContext(mu, tuple(config.z_window))
    loop_ctx = cloop.LoopContext(config.n, max(config.N, max(0, max(mu.d))), tuple(config.u_window))
    for k in range(1, config.n + 1):
        r = mu.omega_star(k) + 2
        ok, direct, composed = cslice.verify_restriction_identity(C, sctx, loop_ctx, k, r)
        rep.add(
            f"restriction-identity:k={k},r={r}",
            "slice Bethe coefficient equals the restriction of the universal one",
            {"k": k, "r": r, "mu": list(mu.d)},
            ok,
            witness=None if ok else {"direct": repr(direct), "composed": repr(composed)},
        )
    blocks = mu.levi_blocks()
    if C.is_block_diagonal(blocks) and C.is_blockwise_regular(blocks):
        rep.extend(cslice.verify_slice_grading(C, sctx, config.degree_cap, seed=config.seed))


def run_universal(config, rep, cache=None):
    ctx = yuniv.YContext(config.n, config.N, tuple(config.u_window))
    C = config.twist_matrix()
    cache_params = {"n": config.n, "N": config.N}
    if cache is not None:
        payload, note = cache.load("universal-comm", cache_params)
        if note:
            rep.note(note)
        if payload is not None:
            yuniv.comm_table_restore(ctx, payload)
    rng = random.Random(config.seed)
    failures = 0
    for _ in range(config.assoc_samples):
        x = yuniv.NC({_random_word(rng, ctx, 3): 1})
        y = yuniv.NC({_random_word(rng, ctx, 3): 1})
        z = yuniv.NC({_random_word(rng, ctx, 3): 1})
        a = yuniv.normal_form(x * yuniv.normal_form(y * z, ctx), ctx)
        b = yuniv.normal_form(yuniv.normal_form(x * y, ctx) * z, ctx)
        if a != b:
            failures += 1
    rep.add(
        "pbw-associativity",
        "rewriting to the ordered basis is associative on random word triples",
        {"samples": config.assoc_samples, "n": config.n, "N": config.N, "seed": config.seed},
        failures == 0,
        witness={"failures": failures},
    )
    rep.extend(yuniv.verify_tau_commutativity(C, ctx, _pairs_grid(config.n, config.u_window)))
    mu = validate_shift(config.mu)
    lctx = cloop.LoopContext(config.n, config.N, tuple(config.u_window))
    weight = yuniv.quantum_weight(mu)
    bad = 0
    for _ in range(config.quant_samples):
        w1 = _random_word(rng, ctx, 2)
        w2 = _random_word(rng, ctx, 2)
        x, y = yuniv.NC({w1: 1}), yuniv.NC({w2: 1})
        comm = yuniv.normal_form(x * y - y * x, ctx)
        dx = sum(weight(g) for g in w1)
        dy = sum(weight(g) for g in w2)
        got = comm.homogeneous_part(dx + dy - 1, weight).abelianize(
            lambda g: cloop.dvar(g[1], g[2], g[3])
        )
        sx = yuniv.symbol_quantum(x, mu, ctx)
        sy = yuniv.symbol_quantum(y, mu, ctx)
        expect = cloop.poisson_bracket(sx, sy, lctx)
        if got != expect:
            bad += 1
    rep.add(
        "graded-poisson",
        "the symbol of a commutator one degree down equals the Poisson bracket of symbols",
        {"samples": config.quant_samples, "n": config.n, "N": config.N, "mu": list(mu.d)},
        bad == 0,
        witness={"failures": bad},
    )
    if cache is not None:
        ok, note = cache.store("universal-comm", cache_params, yuniv.comm_table_snapshot(ctx))
        if note:
            rep.note(note)


def run_shifted(config, rep):
    mu = validate_shift(config.mu)
    ctx = yshift.shifted_context(config.mu, tuple(config.u_window))
    sctx = cslice.SliceContext(mu, tuple(config.z_window))
    C = config.twist_matrix()
    rep.extend(yshift.verify_vanishing_leading(C, ctx))
    blocks = mu.levi_blocks()
    if C.is_block_diagonal(blocks) and C.is_blockwise_regular(blocks):
        rep.extend(yshift.verify_symbol_correspondence(C, ctx, sctx, config.degree_cap))


def run_gl2(config, rep):
    ctx = yshift.shifted_context(config.mu, tuple(config.u_window))
    C = config.twist_matrix()
    hi = min(config.u_window[1], max(ctx.mu.omega_star(2) + 3, 3))
    rep.extend(gl2_verify_commutativity(C, ctx, hi))


def run_poincare(config, rep):
    mu = validate_shift(config.mu)
    sctx = cslice.SliceContext(mu, tuple(config.z_window))
    C = config.twist_matrix()
    rep.extend(cslice.poincare_compare(C, sctx, config.q_cap))
    rep.add(
        "partition-towers",
        "partition-tower product at the configured cap",
        {"n": config.n, "cap": config.q_cap},
        True,
        witness={"series": qseries_partition_product(config.n, config.q_cap).coeffs},
    )


def run_distinctness(config, rep):
    for n_shift, h in ((1, 1), (2, 2)):
        rep.extend(cslice.pullback_distinctness_demo(n_shift, h))


def run_suite(config):
    """Execute the selected suites; returns (Report, json_document)."""
    config = config.validated()
    rep = Report("verification suite")
    cache = CacheStore(config.cache_dir) if config.cache_dir else None
    started = time.time()
    if "classical" in config.suites:
        run_classical(config, rep)
    if "universal" in config.suites:
        run_universal(config, rep, cache)
    if "shifted" in config.suites:
        run_shifted(config, rep)
    if "gl2" in config.suites:
        run_gl2(config, rep)
    if "poincare" in config.suites:
        run_poincare(config, rep)
    if "distinctness" in config.suites:
        run_distinctness(config, rep)
    elapsed = time.time() - started
    doc = {
        "schema": SCHEMA,
        "config": config.echo(),
        "timing_seconds": elapsed,
        "report": rep.to_json(),
    }
    return rep, doc


def poincare_tsv(config):
    """Poincare tables as TSV (degree, Bethe series, tower product)."""
    config = config.validated()
    mu = validate_shift(config.mu)
    sctx = cslice.SliceContext(mu, tuple(config.z_window))
    C = config.twist_matrix()
    degrees = []
    for k in range(1, config.n + 1):
        w = mu.omega_star(k)
        for r in range(w + 1, w + config.q_cap + 1):
            s = cslice.sigma_mu(C, k, r, sctx)
            d = cslice.filtration_degree(s, sctx)
            if d is not None:
                degrees.append(d)
    from .qseries import qseries_free_algebra

    bethe = qseries_free_algebra(degrees, config.q_cap)
    towers = qseries_partition_product(config.n, config.q_cap)
    lines = ["degree\tbethe\ttowers"]
    for m in range(config.q_cap + 1):
        lines.append(f"{m}\t{bethe.coeffs[m]}\t{towers.coeffs[m]}")
    return "\n".join(lines) + "\n"
