"""Models of a signature and the initiality fold.

A model is a carrier monad, given by ``unit`` and ``bind`` on value domains
indexed by context size, plus one action per operation.  An action for an
operation with binding arity ``(s_1..s_k)`` receives ``k`` values, value ``i``
living in context ``n + s_i``, and returns a value in context ``n``.

The fold sends a term to the model by structural recursion; it is the unique
morphism out of the term model.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from ._nodes import Op, Var
from .errors import ArityError, ModelDisagreement, QuotientViolation, SignatureError, UnknownOperation
from .gen import TermGenerator, generator_context
from .kernels import scope_bound
from .quotient import PresentableSignature, Report
from .signature import AlgebraicSignature, Pushout, SignatureMorphism


@dataclass(frozen=True, eq=False)
class Carrier:
    """A monad on finite contexts.

    ``bind(x, f, n, m)`` takes ``x`` in context ``n`` and a sequence ``f`` of
    ``n`` values in context ``m``.  ``eq(x, y, n)`` decides (or samples)
    equality; ``sample(rng, n)`` draws a value, when provided.
    """

    name: str
    unit: Callable[[int, int], Any]
    bind: Callable[[Any, tuple, int, int], Any]
    eq: Callable[[Any, Any, int], bool]
    sample: Callable[[random.Random, int], Any] | None = None

    def rename(self, x, mapping, n: int, m: int):
        return self.bind(x, tuple(self.unit(j, m) for j in mapping), n, m)

    def lift(self, f, m: int, s: int) -> tuple:
        """``f: n -> D(m)`` pushed under ``s`` binders, as ``n + s -> D(m + s)``."""
        if s == 0:
            return tuple(f)
        fresh = tuple(self.unit(j, m + s) for j in range(s))
        shift = tuple(range(s, m + s))
        return fresh + tuple(self.rename(v, shift, m, m + s) for v in f)


@dataclass(frozen=True, eq=False)
class Model:
    sig: AlgebraicSignature
    carrier: Carrier
    actions: dict = field(default_factory=dict)
    name: str = "model"

    def action(self, op: str):
        try:
            return self.actions[op]
        except KeyError:
            raise UnknownOperation(f"model {self.name!r} has no action for {op!r}") from None


def fold(m: Model, t, n: int | None = None):
    """Interpret ``t`` (in context ``n``) in the model ``m``."""
    if n is None:
        n = scope_bound(t)
    unit = m.carrier.unit
    actions = m.actions

    def go(t, n):
        if type(t) is Var:
            return unit(t.index, n)
        try:
            act = actions[t.name]
        except KeyError:
            raise UnknownOperation(f"model {m.name!r} has no action for {t.name!r}") from None
        return act(t.fam, tuple(go(a, n + s) for a, s in zip(t.args, t.slots)), n)

    return go(t, n)


def _sampler(m: Model, rng: random.Random, max_depth: int = 4):
    """Draw carrier values: the carrier's own sampler, mixed with folds of random terms."""
    gen = TermGenerator(m.sig, rng) if m.sig.ops else None

    def draw(n):
        own = m.carrier.sample
        if own is not None and (gen is None or rng.random() < 0.5):
            return own(rng, n)
        if gen is None or not gen._possible(n > 0, max_depth):
            if own is not None:
                return own(rng, n)
            raise SignatureError(f"cannot sample values of {m.name!r} in context {n}")
        return fold(m, gen.term(n, max_depth), n)

    return draw


def check_model_laws(m: Model, samples: int = 500, seed: int = 0, *, max_ctx: int = 3) -> Report:
    """Sample the monad laws of the carrier and the linearity of every action."""
    rng = random.Random(seed)
    c = m.carrier
    draw = _sampler(m, rng)
    ops = [(d, k) for d in m.sig.ops for k in (d.family.sample_indices() if d.is_family else [None])]
    report = Report(f"model-laws[{m.name}]")
    for _ in range(samples):
        n = rng.randint(0, max_ctx)
        k = rng.randint(0, max_ctx)
        l = rng.randint(0, max_ctx)
        x = draw(n)
        f = tuple(draw(k) for _ in range(n))
        g = tuple(draw(l) for _ in range(k))
        if n:
            i = rng.randrange(n)
            if not c.eq(c.bind(c.unit(i, n), f, n, k), f[i], k):
                report.fail("left-unit", index=i)
        if not c.eq(c.bind(x, tuple(c.unit(i, n) for i in range(n)), n, n), x, n):
            report.fail("right-unit", ctx=n)
        lhs = c.bind(c.bind(x, f, n, k), g, k, l)
        rhs = c.bind(x, tuple(c.bind(fi, g, k, l) for fi in f), n, l)
        if not c.eq(lhs, rhs, l):
            report.fail("associativity", ctx=(n, k, l))
        if ops:
            d, fam = ops[rng.randrange(len(ops))]
            slots = d.arity_at(fam)
            act = m.action(d.name)
            args = tuple(draw(n + s) for s in slots)
            lhs = c.bind(act(fam, args, n), f, n, k)
            rhs = act(fam, tuple(c.bind(a, c.lift(f, k, s), n + s, k + s) for a, s in zip(args, slots)), k)
            if not c.eq(lhs, rhs, k):
                report.fail("linearity", op=d.name, fam=fam, ctx=(n, k))
        report.checked += 1
    return report


def check_morphism(src: Model, dst: Model, h, samples: int = 200, seed: int = 0, *, max_ctx: int = 3) -> Report:
    """Sample the conditions for ``h(x, n)`` to be a model morphism ``src -> dst``."""
    rng = random.Random(seed)
    draw = _sampler(src, rng)
    cs, cd = src.carrier, dst.carrier
    report = Report(f"morphism[{src.name}->{dst.name}]")
    ops = [(d, k) for d in src.sig.ops for k in (d.family.sample_indices() if d.is_family else [None])]
    for _ in range(samples):
        n = rng.randint(0, max_ctx)
        k = rng.randint(0, max_ctx)
        if n:
            i = rng.randrange(n)
            if not cd.eq(h(cs.unit(i, n), n), cd.unit(i, n), n):
                report.fail("unit", index=i)
        x = draw(n)
        f = tuple(draw(k) for _ in range(n))
        if not cd.eq(h(cs.bind(x, f, n, k), k), cd.bind(h(x, n), tuple(h(v, k) for v in f), n, k), k):
            report.fail("bind", ctx=(n, k))
        if ops:
            d, fam = ops[rng.randrange(len(ops))]
            slots = d.arity_at(fam)
            args = tuple(draw(n + s) for s in slots)
            lhs = h(src.action(d.name)(fam, args, n), n)
            rhs = dst.action(d.name)(fam, tuple(h(a, n + s) for a, s in zip(args, slots)), n)
            if not cd.eq(lhs, rhs, n):
                report.fail("action", op=d.name)
        report.checked += 1
    return report


def check_respects(p: PresentableSignature, m: Model, samples: int = 300, seed: int = 0, *, max_ctx: int = 3, max_depth: int = 4) -> Report:
    """Sample ``fold(t) == fold(nf t)``: the model is constant on congruence classes."""
    rng = random.Random(seed)
    gen = TermGenerator(p.carrier, rng, weights={r.op: 4.0 for r in p.normalizer.rules})
    report = Report(f"respects[{p.name}/{m.name}]")
    for _ in range(samples):
        n = generator_context(rng, gen, max_ctx, max_depth)
        t = gen.term(n, max_depth)
        if not m.carrier.eq(fold(m, t, n), fold(m, p.nf(t), n), n):
            report.fail("respects-quotient", term=t, ctx=n)
        report.checked += 1
    return report


_RESPECT_CACHE: dict = {}


def fold_quotient(p: PresentableSignature, m: Model, t, n: int | None = None, *, samples: int = 300, seed: int = 0):
    """Fold through the quotient: ``fold(m, nf(t))``.

    The model is checked once (by sampling) to be constant on congruence
    classes; a witnessed failure raises :class:`QuotientViolation`.
    """
    if m.sig != p.carrier:
        raise SignatureError("model and presentation have different carriers")
    key = (id(p), id(m))
    cached = _RESPECT_CACHE.get(key)
    if cached is None or cached[0] is not p or cached[1] is not m:
        report = check_respects(p, m, samples, seed)
        _RESPECT_CACHE[key] = cached = (p, m, report)
    report = cached[2]
    if not report.passed:
        raise QuotientViolation(
            f"model {m.name!r} does not respect the congruence of {p.name!r}", report.failures[0]
        )
    return fold(m, p.nf(t), n)


def relabel(f: SignatureMorphism, t):
    """Rename the operations of ``t`` along ``f``."""
    if type(t) is Var:
        return t
    return Op(f(t.name), t.fam, t.slots, tuple(relabel(f, a) for a in t.args))


def pullback_model(f: SignatureMorphism, m: Model) -> Model:
    """Restrict a model of ``f.dst`` to ``f.src``: op ``o`` acts as ``f(o)``."""
    if m.sig != f.dst:
        raise SignatureError("model is not over the codomain of the morphism")
    return Model(f.src, m.carrier, {o: m.action(f(o)) for o in f.src.names}, f"{m.name}|{f.src.name}")


def _agree(m1: Model, op1: str, m2: Model, op2: str, slots_of, rng, samples: int, max_ctx: int) -> dict | None:
    a1, a2 = m1.action(op1), m2.action(op2)
    if a1 is a2:
        return None
    draw = _sampler(m1, rng)
    for _ in range(samples):
        n = rng.randint(0, max_ctx)
        fam, slots = slots_of(rng)
        args = tuple(draw(n + s) for s in slots)
        if not m1.carrier.eq(a1(fam, args, n), a2(fam, args, n), n):
            return {"op": op1, "ctx": n, "fam": fam}
    return None


def mediate_modularity(po: Pushout, m1: Model, m2: Model, *, samples: int = 100, seed: int = 0, max_ctx: int = 3) -> Model:
    """The model of the pushout signature restricting to ``m1`` and ``m2``.

    Both models must share their carrier and agree on the common part.
    """
    if m1.sig != po.inj1.src or m2.sig != po.inj2.src:
        raise SignatureError("models do not match the pushout square")
    if m1.carrier is not m2.carrier:
        raise ModelDisagreement("modularity mediation needs a common carrier")
    rng = random.Random(seed)
    for o in po.f.src.names:
        d = po.f.src[o]

        def slots_of(rng, d=d):
            if d.is_family:
                idx = rng.choice(list(d.family.sample_indices()))
                return idx, d.family(idx)
            return None, d.arity

        bad = _agree(m1, po.f(o), m2, po.g(o), slots_of, rng, samples, max_ctx)
        if bad is not None:
            raise ModelDisagreement(f"models disagree on shared operation {o!r}: {bad}")
    actions = {}
    for o in po.inj1.src.names:
        actions[po.inj1(o)] = m1.action(o)
    for o in po.inj2.src.names:
        actions.setdefault(po.inj2(o), m2.action(o))
    missing = [o for o in po.sig.names if o not in actions]
    if missing:
        raise ArityError(f"pushout operations without an action: {missing}")
    return Model(po.sig, m1.carrier, actions, f"[{m1.name},{m2.name}]")


def same_actions(a: Model, b: Model, *, samples: int = 100, seed: int = 0, max_ctx: int = 3) -> bool:
    """Action-wise equality of two models over the same signature and carrier."""
    if a.sig != b.sig or a.carrier is not b.carrier:
        return False
    rng = random.Random(seed)
    for d in a.sig.ops:

        def slots_of(rng, d=d):
            if d.is_family:
                idx = rng.choice(list(d.family.sample_indices()))
                return idx, d.family(idx)
            return None, d.arity

        if _agree(a, d.name, b, d.name, slots_of, rng, samples, max_ctx) is not None:
            return False
    return True
