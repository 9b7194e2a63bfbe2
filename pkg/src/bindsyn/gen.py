"""Seeded random generation of terms, renamings and substitutions."""
from __future__ import annotations

import random

from ._nodes import Op, Var
from .context import Renaming
from .errors import SignatureError
from .signature import AlgebraicSignature


class TermGenerator:
    """Draws well-scoped terms of bounded depth.

    ``weights`` biases the choice of operations (default weight 1);
    ``var_weight`` is the total weight of choosing a variable when one is
    in scope.
    """

    def __init__(self, sig: AlgebraicSignature, rng: random.Random, *, weights=None, var_weight=1.5):
        self.sig = sig
        self.rng = rng
        self.var_weight = var_weight
        self.choices = []
        for d in sig.ops:
            w = (weights or {}).get(d.name, 1.0)
            if w <= 0:
                continue
            if d.is_family:
                for k in d.family.sample_indices():
                    self.choices.append((d.name, k, d.family(k), w / len(d.family.sample_indices())))
            else:
                self.choices.append((d.name, None, d.arity, w))
        if not self.choices:
            raise SignatureError(f"signature {sig.name!r} has no operations to generate from")
        self._memo: dict = {}

    def _possible(self, nonempty: bool, d: int) -> bool:
        """Whether some term of depth <= d exists in an (empty or non-empty) context."""
        key = (nonempty, d)
        if key not in self._memo:
            if d >= 1 and nonempty:
                ok = True
            elif d <= 1:
                ok = False
            else:
                ok = any(self._feasible(c[2], nonempty, d) for c in self.choices)
            self._memo[key] = ok
        return self._memo[key]

    def _feasible(self, slots, nonempty, d) -> bool:
        return all(self._possible(nonempty or s > 0, d - 1) for s in slots)

    def term(self, n: int, max_depth: int = 5):
        rng = self.rng
        if not self._possible(n > 0, max_depth):
            raise SignatureError(f"no term of depth <= {max_depth} in a context of size {n}")
        if max_depth <= 1:
            return Var(rng.randrange(n))
        options = [c for c in self.choices if self._feasible(c[2], n > 0, max_depth)]
        total = sum(c[3] for c in options) + (self.var_weight if n > 0 else 0.0)
        r = rng.random() * total
        if n > 0:
            if r < self.var_weight:
                return Var(rng.randrange(n))
            r -= self.var_weight
        for name, fam, slots, w in options:
            if r < w:
                break
            r -= w
        args = tuple(self.term(n + s, max_depth - 1) for s in slots)
        return Op(name, fam, slots, args)

    def substitution(self, n: int, m: int, max_depth: int = 3) -> tuple:
        return tuple(self.term(m, max_depth) for _ in range(n))


def random_renaming(rng: random.Random, n: int, m: int) -> Renaming:
    if n > 0 and m == 0:
        raise ValueError("no renaming from a non-empty context into the empty one")
    return Renaming(n, m, tuple(rng.randrange(m) for _ in range(n)))


def generator_context(rng: random.Random, gen: TermGenerator, max_ctx: int, max_depth: int) -> int:
    """A context size in ``0..max_ctx`` that admits terms of the given depth."""
    low = 0 if gen._possible(False, max_depth) else 1
    return rng.randint(low, max(low, max_ctx))
