"""Finite de Bruijn contexts and renamings between them.

A context is just its size ``n``; its variables are the indices
``0 .. n-1``.  Binding ``k`` variables puts the new ones at ``0 .. k-1`` and
shifts the old ones up by ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatch, ScopeError

Ctx = int


@dataclass(frozen=True, slots=True)
class Renaming:
    dom: int
    cod: int
    map: tuple[int, ...]

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0:
            raise ScopeError("context sizes must be non-negative")
        if len(self.map) != self.dom:
            raise ScopeError(f"renaming from {self.dom} needs {self.dom} images, got {len(self.map)}")
        for j in self.map:
            if not 0 <= j < self.cod:
                raise ScopeError(f"image {j} outside codomain of size {self.cod}")

    def __call__(self, i: int) -> int:
        return self.map[i]


def renaming(mapping, cod: int) -> Renaming:
    mapping = tuple(mapping)
    return Renaming(len(mapping), cod, mapping)


def identity(n: Ctx) -> Renaming:
    return Renaming(n, n, tuple(range(n)))


def compose(f: Renaming, g: Renaming) -> Renaming:
    """First ``f``, then ``g``."""
    if f.cod != g.dom:
        raise ContextMismatch(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
    gm = g.map
    return Renaming(f.dom, g.cod, tuple(gm[i] for i in f.map))


def extend(f: Renaming, k: int) -> Renaming:
    """Lift ``f`` under ``k`` fresh variables (which keep indices ``0..k-1``)."""
    if k == 0:
        return f
    return Renaming(f.dom + k, f.cod + k, tuple(range(k)) + tuple(j + k for j in f.map))


def weakening(n: Ctx, k: int) -> Renaming:
    """The inclusion of ``n`` into ``n + k`` that leaves ``0..k-1`` fresh."""
    return Renaming(n, n + k, tuple(i + k for i in range(n)))


def act_on_fresh(u: Renaming, n: Ctx) -> Renaming:
    """``u + id_n`` on ``p + n -> q + n``: ``u`` on the fresh block, identity outside it."""
    p, q = u.dom, u.cod
    return Renaming(p + n, q + n, tuple(u.map) + tuple(range(q, q + n)))
