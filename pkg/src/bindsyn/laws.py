"""Sampled law suites: monad and functor laws, module laws, Lambek round-trips,
quotient compatibility and model laws.

Every suite is deterministic in ``seed`` and returns a :class:`Report`.
"""
from __future__ import annotations

import random

from ._nodes import Var
from .context import act_on_fresh, identity
from .context import compose as compose_renamings
from .gen import TermGenerator, generator_context, random_renaming
from .model import Model, check_model_laws, fold
from .quotient import PresentableSignature, Report, check_compatibility
from .signature import AlgebraicSignature
from .term import compose, decompose, lift, rename, sigma, subst, subst_p, weaken


def _target_ctx(rng, gen, hi, depth, need_nonempty=False):
    """A context in ``0..hi`` with terms of the given depth (non-empty if asked)."""
    lo = 1 if need_nonempty or not gen._possible(False, depth) else 0
    return rng.randint(lo, max(lo, hi))


def check_monad(sig: AlgebraicSignature, samples: int = 1000, seed: int = 0, *, max_ctx: int = 6, max_depth: int = 7, sub_depth: int = 3) -> Report:
    """Unit, right-unit and associativity of ``subst``; identity and composition of ``rename``;
    and ``rename`` agreeing with substitution of variables."""
    rng = random.Random(seed)
    gen = TermGenerator(sig, rng)
    report = Report(f"monad[{sig.name}]")
    for _ in range(samples):
        n = generator_context(rng, gen, max_ctx, max_depth)
        t = gen.term(n, max_depth)
        k = _target_ctx(rng, gen, max_ctx, sub_depth, n > 0)
        l = _target_ctx(rng, gen, max_ctx, sub_depth, k > 0)
        f = gen.substitution(n, k, sub_depth)
        g = gen.substitution(k, l, sub_depth)
        if n:
            i = rng.randrange(n)
            if subst(Var(i), f) != f[i]:
                report.fail("left-unit", index=i, substitution=f)
        if subst(t, [Var(i) for i in range(n)]) != t:
            report.fail("right-unit", term=t)
        if subst(subst(t, f), g) != subst(t, [subst(u, g) for u in f]):
            report.fail("associativity", term=t, f=f, g=g)
        if rename(t, identity(n)) != t:
            report.fail("rename-identity", term=t)
        r1 = random_renaming(rng, n, k)
        r2 = random_renaming(rng, k, l)
        if rename(rename(t, r1), r2) != rename(t, compose_renamings(r1, r2)):
            report.fail("rename-composition", term=t, f=r1.map, g=r2.map)
        if rename(t, r1) != subst(t, [Var(j) for j in r1.map]):
            report.fail("rename-is-subst", term=t, f=r1.map)
        report.checked += 1
    return report


def check_module(sig: AlgebraicSignature, samples: int = 1000, seed: int = 0, *, max_ctx: int = 4, max_depth: int = 5, max_p: int = 4) -> Report:
    """Linearity of ``sigma``, coherence of p-substitution along maps ``u: p -> q``,
    the derivation law for weakening, and ``subst_p`` with one term agreeing with ``sigma``."""
    rng = random.Random(seed)
    gen = TermGenerator(sig, rng)
    report = Report(f"module[{sig.name}]")
    for _ in range(samples):
        # sigma is linear: subst(sigma(t, u), f) = sigma(subst(t, lift f), subst(u, f))
        n = _target_ctx(rng, gen, max_ctx, 3)
        m = _target_ctx(rng, gen, max_ctx, 3, n > 0)
        t = gen.term(n + 1, max_depth)
        u = gen.term(n, 3) if gen._possible(n > 0, 3) else None
        if u is not None:
            f = gen.substitution(n, m, 3)
            lhs = subst(sigma(t, u), f)
            rhs = sigma(subst(t, lift(f, 1)), subst(u, f))
            if lhs != rhs:
                report.fail("sigma-linearity", term=t, arg=u, substitution=f)
            report.saw("sigma-linearity")
            if subst_p(t, [u]) != sigma(t, u):
                report.fail("subst1-is-sigma", term=t, arg=u)

        # p-substitution coherence along u: p -> q
        p = rng.randint(0, max_p)
        q = rng.randint(1 if p else 0, max_p)
        n = _target_ctx(rng, gen, max_ctx, 3, q > 0 and not gen._possible(False, 3))
        umap = random_renaming(rng, p, q)
        body = gen.term(n + p, max_depth) if gen._possible(n + p > 0, max_depth) else None
        if body is not None:
            ss = gen.substitution(q, n, 3)
            lhs = subst_p(rename(body, act_on_fresh(umap, n)), ss)
            rhs = subst_p(body, [ss[j] for j in umap.map])
            if lhs != rhs:
                report.fail("substp-coherence", term=body, u=umap.map, args=ss)
            report.saw("substp-coherence")

        # derivation: weaken(subst(t, f), k) = subst(weaken(t, k), lift(f, k))
        n = generator_context(rng, gen, max_ctx, max_depth)
        m = _target_ctx(rng, gen, max_ctx, 3, n > 0)
        k = rng.randint(0, 3)
        t = gen.term(n, max_depth)
        f = gen.substitution(n, m, 3)
        if weaken(subst(t, f), k) != subst(weaken(t, k), lift(f, k)):
            report.fail("derivation", term=t, substitution=f, k=k)
        report.checked += 1
    return report


def check_lambek(sig: AlgebraicSignature, samples: int = 1000, seed: int = 0, *, max_ctx: int = 6, max_depth: int = 7) -> Report:
    """``compose . decompose = id`` on terms and ``decompose . compose = id`` on shapes."""
    rng = random.Random(seed)
    gen = TermGenerator(sig, rng)
    report = Report(f"lambek[{sig.name}]")
    for _ in range(samples):
        n = generator_context(rng, gen, max_ctx, max_depth)
        t = gen.term(n, max_depth)
        shape = decompose(t)
        if compose(shape, sig, n) != t:
            report.fail("compose-decompose", term=t)
        if decompose(compose(shape, sig, n)) != shape:
            report.fail("decompose-compose", shape=shape)
        report.checked += 1
    return report


def check_fold_morphism(m: Model, samples: int = 500, seed: int = 0, *, max_ctx: int = 3, max_depth: int = 5) -> Report:
    """``fold(subst(t, f)) = bind(fold t, fold . f)`` and ``fold(var i) = unit i``."""
    rng = random.Random(seed)
    gen = TermGenerator(m.sig, rng)
    c = m.carrier
    report = Report(f"fold-morphism[{m.name}]")
    for _ in range(samples):
        n = generator_context(rng, gen, max_ctx, max_depth)
        k = _target_ctx(rng, gen, max_ctx, 3, n > 0)
        t = gen.term(n, max_depth)
        f = gen.substitution(n, k, 3)
        lhs = fold(m, subst(t, f), k)
        rhs = c.bind(fold(m, t, n), tuple(fold(m, u, k) for u in f), n, k)
        if not c.eq(lhs, rhs, k):
            report.fail("fold-subst", term=t, substitution=f)
        if n:
            i = rng.randrange(n)
            if not c.eq(fold(m, Var(i), n), c.unit(i, n), n):
                report.fail("fold-unit", index=i)
        report.checked += 1
    return report


SUITES = ("monad", "module", "lambek", "quotient", "model")


def run_suite(suite: str, p: PresentableSignature, samples: int, seed: int, model: Model | None = None) -> list[Report]:
    sig = p.carrier
    match suite:
        case "monad":
            return [check_monad(sig, samples, seed)]
        case "module":
            return [check_module(sig, samples, seed)]
        case "lambek":
            return [check_lambek(sig, samples, seed)]
        case "quotient":
            return [check_compatibility(p, samples, seed)]
        case "model":
            if model is None:
                raise ValueError("the model suite needs a model")
            return [check_model_laws(model, samples, seed), check_fold_morphism(model, samples, seed)]
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
