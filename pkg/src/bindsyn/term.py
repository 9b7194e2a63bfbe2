"""Well-scoped de Bruijn terms over an algebraic signature.

The free terms form a monad: :func:`var` is the unit and :func:`subst` is
bind.  Contexts are sizes; a term "in context n" mentions only free indices
below ``n``.  Under an argument with ``s`` binding slots the bound variables
are ``0..s-1`` and every outer variable is shifted up by ``s``.
"""
from __future__ import annotations

from typing import Callable, NamedTuple, Sequence

from ._nodes import Op, Var
from .context import Renaming, act_on_fresh
from .errors import ArityError, ContextMismatch, ScopeError
from .kernels import free_indices, order_key, remap, scope_bound, substitute
from .signature import AlgebraicSignature

Term = Var | Op

__all__ = [
    "Constructor", "Op", "Term", "Var", "Variable", "check", "compose", "decompose",
    "depth", "free_vars", "lift", "mk_op", "order_key", "rename", "reindex_fresh",
    "sigma", "size", "sort_key", "subst", "subst_p", "term_lt", "var", "weaken",
]


def var(i: int, n: int) -> Var:
    if not 0 <= i < n:
        raise ScopeError(f"variable {i} is not in a context of size {n}")
    return Var(i)


def mk_op(sig: AlgebraicSignature, name: str, args: Sequence, n: int, fam: int | None = None) -> Op:
    """Build ``name(args)`` in context ``n``, checking arity and scoping."""
    slots = sig.arity(name, fam)
    args = tuple(args)
    if len(args) != len(slots):
        raise ArityError(f"{name!r} takes {len(slots)} arguments, got {len(args)}")
    for k, (a, s) in enumerate(zip(args, slots)):
        if scope_bound(a) > n + s:
            raise ScopeError(f"argument {k} of {name!r} is not scoped in context {n}+{s}")
    return Op(name, fam, slots, args)


def check(sig: AlgebraicSignature, t, n: int) -> None:
    """Raise unless ``t`` is a well-formed term of ``sig`` in context ``n``."""
    if type(t) is Var:
        if not 0 <= t.index < n:
            raise ScopeError(f"variable {t.index} is not in a context of size {n}")
        return
    if type(t) is not Op:
        raise TypeError(f"not a term: {t!r}")
    slots = sig.arity(t.name, t.fam)
    if slots != t.slots:
        raise ArityError(f"{t.name!r} node carries slots {t.slots}, signature says {slots}")
    if len(t.args) != len(slots):
        raise ArityError(f"{t.name!r} takes {len(slots)} arguments, got {len(t.args)}")
    for a, s in zip(t.args, slots):
        check(sig, a, n + s)


def rename(t, f: Renaming):
    if scope_bound(t) > f.dom:
        raise ScopeError(f"term is not scoped in the domain of a renaming from {f.dom}")
    return remap(t, f.map, f.dom, 0)


def weaken(t, k: int = 1):
    """View ``t`` in a context with ``k`` more variables, left unused at ``0..k-1``."""
    if k == 0:
        return t
    return remap(t, (), 0, k)


def subst(t, f: Sequence | Callable[[int], object], n: int | None = None):
    """Simultaneous substitution: free index ``i`` of ``t`` becomes ``f(i)``.

    ``f`` is a sequence (its length is the domain context) or a callable,
    in which case ``n`` gives the domain.
    """
    if callable(f):
        if n is None:
            n = scope_bound(t)
        images = tuple(f(i) for i in range(n))
    else:
        images = tuple(f)
    if scope_bound(t) > len(images):
        raise ScopeError(f"term is not scoped in a context of size {len(images)}")
    return substitute(t, images, len(images), 0)


def lift(f: Sequence, k: int) -> tuple:
    """The substitution ``f`` pushed under ``k`` binders."""
    return tuple(Var(j) for j in range(k)) + tuple(weaken(u, k) for u in f)


def sigma(t, u):
    """Substitute ``u`` for the freshest variable ``0`` and lower the others."""
    return substitute(t, (u,), 1, -1)


def subst_p(t, us: Sequence):
    """Replace fresh variables ``0..p-1`` by ``us`` (``p = len(us)``), lowering the rest by ``p``."""
    us = tuple(us)
    p = len(us)
    if p == 0:
        return t
    return substitute(t, us, p, -p)


def reindex_fresh(t, u: Renaming, n: int):
    """Rename the fresh block of ``t`` (in context ``u.dom + n``) along ``u``."""
    return rename(t, act_on_fresh(u, n))


class Variable(NamedTuple):
    index: int


class Constructor(NamedTuple):
    op: str
    fam: int | None
    args: tuple


def decompose(t):
    """Split a term into its top-level shape."""
    if type(t) is Var:
        return Variable(t.index)
    return Constructor(t.name, t.fam, t.args)


def compose(shape, sig: AlgebraicSignature, n: int):
    """Inverse of :func:`decompose`, with the usual scope and arity checks."""
    if isinstance(shape, Variable):
        return var(shape.index, n)
    return mk_op(sig, shape.op, shape.args, n, shape.fam)


def free_vars(t) -> frozenset[int]:
    return frozenset(free_indices(t))


def size(t) -> int:
    if type(t) is Var:
        return 1
    return 1 + sum(size(a) for a in t.args)


def depth(t) -> int:
    if type(t) is Var:
        return 1
    return 1 + max((depth(a) for a in t.args), default=0)


def sort_key(t, sig: AlgebraicSignature):
    """Total order on terms: variables first (by index), then operations by
    (declaration position, family index, arguments lexicographically)."""
    return order_key(t, sig.positions)


def term_lt(a, b, sig: AlgebraicSignature) -> bool:
    return sort_key(a, sig) < sort_key(b, sig)


def same_context(n: int, m: int) -> None:
    if n != m:
        raise ContextMismatch(f"context {n} differs from {m}")
