"""Worked models: free variables, size, redex count, and translations by template."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ._nodes import Op, Var
from .errors import ArityError, ScopeError, SignatureError
from .gen import TermGenerator
from .kernels import substitute
from .model import Carrier, Model, fold
from .quotient import PresentableSignature
from .sexpr import Meta, parse_template_body
from .signature import SIGMA_LC, SIGMA_LJ, SIGMA_LL, AlgebraicSignature
from .term import subst

# --- free variables: the finite powerset monad ------------------------------


def _union_bind(x, f, n, m):
    out = frozenset()
    for i in x:
        out |= f[i]
    return out


def _random_subset(rng, n):
    return frozenset(i for i in range(n) if rng.random() < 0.5)


FREEVARS = Carrier(
    "finite-powerset",
    unit=lambda i, n: frozenset((i,)),
    bind=_union_bind,
    eq=lambda x, y, n: x == y,
    sample=_random_subset,
)


def _strip_union(slots_at):
    def act(fam, args, n):
        out = set()
        for a, s in zip(args, slots_at(fam)):
            out.update(i - s for i in a if i >= s)
        return frozenset(out)

    return act


def free_vars_model(sig: AlgebraicSignature = SIGMA_LC) -> Model:
    """Union of the arguments' free variables, bound ones removed and the rest lowered."""
    actions = {d.name: _strip_union(d.arity_at) for d in sig.ops}
    return Model(sig, FREEVARS, actions, f"freevars[{sig.name}]")


# --- continuation carriers ----------------------------------------------------


class ContCarrier(Carrier):
    """``D(n) = (n -> A) -> A`` with environments passed as tuples of length ``n``.

    Equality is extensional on all environments over ``probe_values`` when
    there are at most ``4**4`` of them (and ``n <= 4``), otherwise on 64
    seeded random environments drawn from ``wide_values``.
    """

    def __init__(self, name, probe_values, wide_values, sampler):
        probes = tuple(probe_values)
        wide = tuple(wide_values)

        def environments(n):
            if n <= 4 and len(probes) ** n <= 4 ** 4:
                return itertools.product(probes, repeat=n)
            rng = random.Random(0x5EED + n)
            return (tuple(rng.choice(wide) for _ in range(n)) for _ in range(64))

        def eq(x, y, n):
            return all(x(k) == y(k) for k in environments(n))

        super().__init__(name, _cont_unit, _cont_bind, eq, sampler)


def _cont_unit(i, n):
    return lambda k: k[i]


def _cont_bind(x, f, n, m):
    f = tuple(f)
    return lambda k: x(tuple(fi(k) for fi in f))


def _sample_nat_cont(rng, n):
    c = rng.randint(0, 3)
    coeffs = [rng.randint(0, 2) for _ in range(n)]
    pick = rng.randrange(n) if n and rng.random() < 0.5 else None

    def cont(k):
        v = c + sum(a * x for a, x in zip(coeffs, k))
        return v * k[pick] if pick is not None else v

    return cont


def _sample_pair_cont(rng, n):
    c = rng.randint(0, 3)
    coeffs = [rng.randint(0, 2) for _ in range(n)]
    flag_from = rng.randrange(n) if n and rng.random() < 0.6 else None
    bit = rng.randint(0, 1)

    def cont(k):
        first = c + sum(a * x[0] + x[1] for a, x in zip(coeffs, k))
        return first, (k[flag_from][1] if flag_from is not None else bit)

    return cont


CONT_NAT = ContCarrier("Cont[N]", range(4), range(10), _sample_nat_cont)
CONT_NAT_BIT = ContCarrier(
    "Cont[N x 2]",
    [(a, b) for a in range(2) for b in (0, 1)],
    [(a, b) for a in range(6) for b in (0, 1)],
    _sample_pair_cont,
)


def _size_app(fam, args, n):
    t, u = args
    return lambda k: 1 + t(k) + u(k)


def _size_abs(fam, args, n):
    (t,) = args
    # the fresh variable sits at index 0 and is given size 0
    return lambda k: 1 + t((0,) + tuple(k))


def size_model() -> Model:
    return Model(SIGMA_LC, CONT_NAT, {"app": _size_app, "abs": _size_abs}, "size")


def size(t, n: int) -> int:
    """Number of ``app`` and ``abs`` nodes, read off the continuation model."""
    return fold(size_model(), t, n)((0,) * n)


def _redex_app(fam, args, n):
    t, u = args

    def cont(k):
        tk = t(k)
        return tk[0] + u(k)[0] + tk[1], 0

    return cont


def _redex_abs(fam, args, n):
    (t,) = args
    return lambda k: (t(((0, 0),) + tuple(k))[0], 1)


def redex_model() -> Model:
    """Pairs (redex count, head-is-abstraction flag) in continuation style."""
    return Model(SIGMA_LC, CONT_NAT_BIT, {"app": _redex_app, "abs": _redex_abs}, "redexes")


def redexes(t, n: int) -> int:
    return fold(redex_model(), t, n)(((0, 0),) * n)[0]


# --- templates and translations ----------------------------------------------


@dataclass(frozen=True)
class Template:
    """A target term with metavariables; metavariable ``i`` binds ``arities[i]`` variables."""

    target: AlgebraicSignature
    arities: tuple[int, ...]
    body: object

    def __post_init__(self):
        object.__setattr__(self, "arities", tuple(self.arities))
        self._check(self.body, 0)

    def _check(self, t, depth):
        if isinstance(t, Meta):
            if not 0 <= t.index < len(self.arities):
                raise ArityError(f"metavariable #{t.index + 1} out of range")
            if len(t.args) != self.arities[t.index]:
                raise ArityError(f"metavariable #{t.index + 1} binds {self.arities[t.index]} variables")
            for a in t.args:
                self._check(a, depth)
        elif type(t) is Var:
            if t.index >= depth:
                raise ScopeError("template bodies may only mention variables they bind")
        else:
            slots = self.target.arity(t.name, t.fam)
            if slots != t.slots or len(t.args) != len(slots):
                raise ArityError(f"{t.name!r} used with the wrong arity in a template")
            for a, s in zip(t.args, slots):
                self._check(a, depth + s)

    @classmethod
    def parse(cls, text: str, target: AlgebraicSignature, arities) -> Template:
        return cls(target, tuple(arities), parse_template_body(text, target, arities))


def instantiate(tpl: Template, subterms) -> object:
    """Plug ``subterms`` into the metavariables; subterm ``i`` lives under ``arities[i]`` extra variables."""
    subterms = tuple(subterms)
    if len(subterms) != len(tpl.arities):
        raise ArityError(f"template takes {len(tpl.arities)} subterms, got {len(subterms)}")

    def go(t, depth):
        if isinstance(t, Meta):
            s = tpl.arities[t.index]
            plugged = tuple(go(a, depth) for a in t.args)
            return substitute(subterms[t.index], plugged, s, depth - s)
        if type(t) is Var:
            return t
        return Op(t.name, t.fam, t.slots, tuple(go(a, depth + s) for a, s in zip(t.args, t.slots)))

    return go(tpl.body, 0)


def term_carrier(sig: AlgebraicSignature, presentation: PresentableSignature | None = None) -> Carrier:
    """Terms (or canonical forms) over ``sig`` as a carrier: unit is a variable, bind substitutes."""
    nf = presentation.nf if presentation is not None else None

    def bind(x, f, n, m):
        r = subst(x, f)
        return nf(r) if nf else r

    def sample(rng, n):
        gen = TermGenerator(sig, rng)
        if not gen._possible(n > 0, 4):
            raise SignatureError(f"no small terms of {sig.name!r} in context {n}")
        t = gen.term(n, 4)
        return nf(t) if nf else t

    return Carrier(f"terms[{sig.name}]", lambda i, n: Var(i), bind, lambda x, y, n: x == y, sample)


def translation_model(src: AlgebraicSignature, dst, mapping: dict, name: str | None = None) -> Model:
    """Model of ``src`` in the terms of ``dst`` (a signature or presentable signature).

    ``mapping`` sends each operation of ``src`` to a :class:`Template` whose
    metavariables match the operation's binding arity.
    """
    presentation = dst if isinstance(dst, PresentableSignature) else None
    target = presentation.carrier if presentation else dst
    carrier = term_carrier(target, presentation)
    nf = presentation.nf if presentation else None
    actions = {}
    for d in src.ops:
        if d.is_family:
            raise ArityError(f"translation templates need fixed arities; {d.name!r} is a family")
        if d.name not in mapping:
            raise SignatureError(f"no template for {d.name!r}")
        tpl = mapping[d.name]
        if tpl.target != target:
            raise SignatureError(f"template for {d.name!r} targets another signature")
        if tpl.arities != d.arity:
            raise ArityError(f"template for {d.name!r} has arity {list(tpl.arities)}, operation has {list(d.arity)}")

        def act(fam, args, n, tpl=tpl):
            r = instantiate(tpl, args)
            return nf(r) if nf else r

        actions[d.name] = act
    return Model(src, carrier, actions, name or f"{src.name}->{target.name}")


def translate(model: Model, t, n: int | None = None):
    return fold(model, t, n)


LJ_TO_LL_TEMPLATES = {
    "neg": "(imp (bang #1) zero)",
    "and": "(with #1 #2)",
    "or": "(plus (bang #1) (bang #2))",
    "imp": "(imp (bang #1) #2)",
    "ex": "(ex (x) (bang (#1 x)))",
    "all": "(all (x) (#1 x))",
}


def lj_to_ll_model() -> Model:
    """Intuitionistic into linear logic, one template per connective."""
    mapping = {op: Template.parse(text, SIGMA_LL, SIGMA_LJ.arity(op)) for op, text in LJ_TO_LL_TEMPLATES.items()}
    return translation_model(SIGMA_LJ, SIGMA_LL, mapping, "LJ->LL")
