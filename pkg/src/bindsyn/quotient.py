"""Presentable signatures as algebraic carriers plus canonicalizing rules.

A :class:`Normalizer` maps every term to a canonical representative of its
congruence class.  Each built-in rule canonicalizes a single node whose
arguments are already canonical; the normalizer applies rules bottom-up.
Canonical forms are chosen to be minimal in the term order of
:func:`bindsyn.term.sort_key`.

Quotients implemented here:

* ``commutative``: ``op(a, b) = op(b, a)``.
* ``finset``: list arguments up to permutation and repetition.
* ``multiset``: list arguments up to permutation.
* ``sym-binder``: ``bind_k(t)`` up to permutation of the bound variables
  and up to adding or removing unused ones.
* ``coend-subst``: ``esubst_p(t; s_1..s_p)`` up to the coherence of
  p-substitution under every map ``u: p -> q``.
* ``fixpoint``: systems ``fix_{n,i}(c_0..c_{n-1})`` up to the analogous
  coherence for n-ary fixed points.
"""
from __future__ import annotations

import itertools
from collections import Counter
import random
from dataclasses import dataclass, field

from ._nodes import Op, Var
from .errors import ContextMismatch, NormalizationBudgetExceeded, SignatureError
from .gen import TermGenerator, generator_context, random_renaming
from .kernels import free_indices, order_key, remap, scope_bound
from .signature import BINDER_SEQ, ESUBST, FIXPOINT, POWERS, AlgebraicSignature, fix_decode, fix_index
from .term import depth, rename, subst


class Rule:
    kind = "?"
    root_only = False

    def __init__(self, op: str):
        self.op = op

    def validate(self, sig: AlgebraicSignature) -> None:
        pass

    def canon(self, node: Op, norm, key) -> Op:
        """Canonical form of ``node``; its arguments are already normal.

        ``norm`` renormalizes a term, ``key`` is the order key.
        """
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.op!r})"


def _expect_fixed(sig, op, arity, kind):
    d = sig[op]
    if d.is_family or d.arity != arity:
        raise SignatureError(f"{kind} quotient needs {op!r} of arity {list(arity)}")


def _expect_family(sig, op, schema, kind):
    d = sig[op]
    if not d.is_family or d.family != schema:
        raise SignatureError(f"{kind} quotient needs {op!r} to be a {schema.kind} family")


class CommutativeRule(Rule):
    kind = "commutative"

    def validate(self, sig):
        _expect_fixed(sig, self.op, (0, 0), self.kind)

    def canon(self, node, norm, key):
        a, b = node.args
        if key(b) < key(a):
            return Op(node.name, node.fam, node.slots, (b, a))
        return node


class RootCommutativeRule(CommutativeRule):
    """Sorts the arguments only at the root of the whole term.

    Deliberately unsound: it exists to exercise the compatibility checker.
    """

    kind = "root-commutative"
    root_only = True


class MultisetRule(Rule):
    kind = "multiset"

    def validate(self, sig):
        _expect_family(sig, self.op, POWERS, self.kind)

    def canon(self, node, norm, key):
        args = tuple(sorted(node.args, key=key))
        return Op(node.name, node.fam, node.slots, args)


class FinsetRule(Rule):
    kind = "finset"

    def validate(self, sig):
        _expect_family(sig, self.op, POWERS, self.kind)

    def canon(self, node, norm, key):
        keyed = sorted(((key(a), a) for a in node.args), key=lambda p: p[0])
        args = []
        last = None
        for k, a in keyed:
            if k != last:
                args.append(a)
                last = k
        n = len(args)
        return Op(node.name, n, (0,) * n, tuple(args))


def _minimize(candidates, key):
    best = best_key = None
    for c in candidates:
        k = key(c)
        if best_key is None or k < best_key:
            best, best_key = c, k
    return best


class SymBinderRule(Rule):
    """``bind_k(t)``: drop unused bound variables, then pick the best ordering of the rest."""

    kind = "sym-binder"

    def validate(self, sig):
        _expect_family(sig, self.op, BINDER_SEQ, self.kind)

    def canon(self, node, norm, key):
        k = node.fam
        (body,) = node.args
        used = sorted(j for j in free_indices(body) if j < k)
        j = len(used)

        def candidates():
            for perm in itertools.permutations(range(j)):
                mapping = [0] * k
                for r, old in enumerate(used):
                    mapping[old] = perm[r]
                b = norm(remap(body, mapping, k, j - k))
                yield Op(node.name, j, (j,), (b,))

        return _minimize(candidates(), key)


class CoendSubstRule(Rule):
    """``esubst_p(t; s_1..s_p)``: drop positions the body ignores, merge positions
    with equal arguments, then pick the best ordering of what is left."""

    kind = "coend-subst"

    def validate(self, sig):
        _expect_family(sig, self.op, ESUBST, self.kind)

    def canon(self, node, norm, key):
        p = node.fam
        body, *args = node.args
        used = sorted(j for j in free_indices(body) if j < p)
        values: list = []
        cls: list = [None] * p
        for j in used:
            a = args[j]
            for c, v in enumerate(values):
                if v == a:
                    cls[j] = c
                    break
            else:
                cls[j] = len(values)
                values.append(a)
        r = len(values)
        slots = (r,) + (0,) * r

        def candidates():
            for perm in itertools.permutations(range(r)):
                mapping = [0 if c is None else perm[c] for c in cls]
                b = norm(remap(body, mapping, p, r - p))
                placed = [None] * r
                for c, v in enumerate(values):
                    placed[perm[c]] = v
                yield Op(node.name, r, slots, (b, *placed))

        return _minimize(candidates(), key)


class FixpointRule(Rule):
    """``fix_{n,i}(c_0..c_{n-1})``, component ``c_k`` binding the ``n`` components.

    Components that no component refers to (the selected one excepted) are
    removed, identical components are merged, both repeatedly; then the best
    simultaneous relabelling of components is chosen.  Unreachable components
    that lie on or below a reference cycle are kept: the coherence relations
    never remove them.
    """

    kind = "fixpoint"

    def validate(self, sig):
        _expect_family(sig, self.op, FIXPOINT, self.kind)

    @staticmethod
    def _relabel(comps, sel, mapping, n, r, norm):
        """Move components along ``mapping: n -> r``; several may land on one slot."""
        new: list = [None] * r
        for k, c in enumerate(comps):
            if mapping[k] is None:
                continue
            new[mapping[k]] = norm(remap(c, [0 if m is None else m for m in mapping], n, r - n))
        return new, mapping[sel]

    def canon(self, node, norm, key):
        n, sel = fix_decode(node.fam)
        comps = list(node.args)
        while True:
            changed = False
            # drop components nobody refers to
            while True:
                refs = set()
                for c in comps:
                    refs.update(j for j in free_indices(c) if j < n)
                keep = [k for k in range(n) if k in refs or k == sel]
                if len(keep) == n:
                    break
                mapping = [None] * n
                for new_k, old_k in enumerate(keep):
                    mapping[old_k] = new_k
                comps, sel = self._relabel(comps, sel, mapping, n, len(keep), norm)
                n = len(keep)
                changed = True
            # merge identical components
            reps: list = []
            mapping = [0] * n
            for k, c in enumerate(comps):
                for r, rep in enumerate(reps):
                    if rep == c:
                        mapping[k] = r
                        break
                else:
                    mapping[k] = len(reps)
                    reps.append(c)
            if len(reps) < n:
                r = len(reps)
                new = [None] * r
                for k, c in enumerate(comps):
                    if new[mapping[k]] is None:
                        new[mapping[k]] = norm(remap(c, mapping, n, r - n))
                comps, sel, n = new, mapping[sel], r
                changed = True
            if not changed:
                break
        slots = (n,) * n

        def candidates():
            for perm in itertools.permutations(range(n)):
                new = [None] * n
                for k, c in enumerate(comps):
                    new[perm[k]] = norm(remap(c, perm, n, 0))
                yield Op(node.name, fix_index(n, perm[sel]), slots, tuple(new))

        return _minimize(candidates(), key)


RULE_KINDS = {
    cls.kind: cls
    for cls in (CommutativeRule, RootCommutativeRule, FinsetRule, MultisetRule, SymBinderRule, CoendSubstRule, FixpointRule)
}


def make_rule(kind: str, op: str) -> Rule:
    try:
        return RULE_KINDS[kind](op)
    except KeyError:
        raise SignatureError(f"unknown quotient kind {kind!r}") from None


class Normalizer:
    def __init__(self, carrier: AlgebraicSignature, rules=()):
        self.carrier = carrier
        self.rules = tuple(rules)
        self._by_op = {}
        for r in self.rules:
            r.validate(carrier)
            if r.op in self._by_op:
                raise SignatureError(f"two quotient rules attached to {r.op!r}")
            self._by_op[r.op] = r
        self._positions = carrier.positions
        self._memo = None

    def key(self, t):
        return order_key(t, self._positions)

    def _pass(self, t, at_root=False):
        if type(t) is Var:
            return t
        # permutation search re-normalizes the same subterms many times
        memo = self._memo
        if not at_root and memo is not None:
            hit = memo.get(t)
            if hit is not None:
                return hit
        args = t.args
        new = tuple(self._pass(a) for a in args)
        node = t if all(x is y for x, y in zip(new, args)) else Op(t.name, t.fam, t.slots, new)
        rule = self._by_op.get(t.name)
        if rule is not None and (at_root or not rule.root_only):
            node = rule.canon(node, self._pass, self.key)
        if not at_root and memo is not None:
            memo[t] = node
        return node

    def nf(self, t):
        if not self._by_op:
            return t
        budget = depth(t) + len(self.rules) + 1
        self._memo = {}
        try:
            cur = self._pass(t, True)
            for _ in range(budget):
                nxt = self._pass(cur, True)
                if nxt == cur:
                    return cur
                cur = nxt
        finally:
            self._memo = None
        raise NormalizationBudgetExceeded(f"no normal form after {budget} passes")

    __call__ = nf


@dataclass(frozen=True)
class PresentableSignature:
    """An algebraic carrier together with the congruence that presents the quotient."""

    carrier: AlgebraicSignature
    normalizer: Normalizer = field(compare=False)

    def __post_init__(self):
        if self.normalizer.carrier != self.carrier:
            raise SignatureError("normalizer is attached to a different carrier")

    @property
    def name(self):
        return self.carrier.name

    def nf(self, t):
        return self.normalizer.nf(t)

    def quot_eq(self, t, u, n: int | None = None) -> bool:
        if n is not None and (scope_bound(t) > n or scope_bound(u) > n):
            raise ContextMismatch(f"terms are not both in context {n}")
        return self.normalizer.nf(t) == self.normalizer.nf(u)

    def quot_subst(self, t, f, n: int | None = None):
        return self.normalizer.nf(subst(t, f, n))

    def unit(self, i: int):
        return Var(i)


def presentable(carrier: AlgebraicSignature, quotient=()) -> PresentableSignature:
    """``quotient`` is a list of ``(kind, op)`` pairs or :class:`Rule` objects."""
    rules = [q if isinstance(q, Rule) else make_rule(*q) for q in quotient]
    return PresentableSignature(carrier, Normalizer(carrier, rules))


def free_presentation(sig: AlgebraicSignature) -> PresentableSignature:
    return presentable(sig, ())


@dataclass
class Report:
    """Outcome of a sampled law check; failures carry counterexamples."""

    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    max_failures: int = 5
    instances: Counter = field(default_factory=Counter)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, law, **witness):
        if len(self.failures) < self.max_failures:
            self.failures.append({"law": law, **{k: repr(v) for k, v in witness.items()}})
        else:
            self.failures.append({"law": law})

    def saw(self, law):
        """Count one instance of a law that was actually exercised."""
        self.instances[law] += 1

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.name}: {status} on {self.checked} samples"

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": len(self.failures),
            "counterexamples": self.failures[: self.max_failures],
            "instances": dict(self.instances),
        }


def check_compatibility(
    p: PresentableSignature,
    samples: int = 1000,
    seed: int = 0,
    *,
    max_ctx: int = 4,
    max_depth: int = 5,
    weights=None,
) -> Report:
    """Sample the conditions under which canonical forms make a monad.

    Checks idempotence, stability under renaming
    (``nf(rename(nf t, f)) == nf(rename(t, f))``) and compatibility with
    substitution (``nf(subst(t, f)) == nf(subst(nf t, nf . f))``).
    """
    rng = random.Random(seed)
    if weights is None:
        weights = {r.op: 4.0 for r in p.normalizer.rules}
    gen = TermGenerator(p.carrier, rng, weights=weights)
    nf = p.normalizer.nf
    report = Report(f"compatibility[{p.name}]")
    for _ in range(samples):
        n = generator_context(rng, gen, max_ctx, max_depth)
        t = gen.term(n, max_depth)
        nt = nf(t)
        if nf(nt) != nt:
            report.fail("idempotence", term=t)
        m = rng.randint(1, max_ctx) if n else rng.randint(0, max_ctx)
        f = random_renaming(rng, n, m)
        if nf(rename(nt, f)) != nf(rename(t, f)):
            report.fail("rename-stability", term=t, renaming=f.map)
        if not gen._possible(m > 0, 3):
            m = max(m, 1)
        sub = gen.substitution(n, m, 3)
        lhs = nf(subst(t, sub))
        rhs = nf(subst(nt, [nf(u) for u in sub]))
        if lhs != rhs:
            report.fail("subst-compatibility", term=t, substitution=sub)
        report.checked += 1
    return report
