"""Pure-Python traversal kernels.

Every kernel walks a term keeping ``depth``, the number of binders crossed
so far; indices below ``depth`` are bound locally and never touched.
"""
from __future__ import annotations

from ._nodes import Op, Var

BACKEND = "python"


def remap(t, mapping, k, shift, depth=0):
    """Send free index ``j < k`` to ``mapping[j]`` and ``j >= k`` to ``j + shift``."""
    if type(t) is Var:
        i = t.index
        if i < depth:
            return t
        j = i - depth
        if j < k:
            return Var(mapping[j] + depth)
        return Var(j + shift + depth)
    slots = t.slots
    return Op(
        t.name,
        t.fam,
        slots,
        tuple(remap(a, mapping, k, shift, depth + s) for a, s in zip(t.args, slots)),
    )


def substitute(t, images, k, shift, depth=0):
    """Replace free index ``j < k`` by ``images[j]``; ``j >= k`` becomes ``j + shift``.

    Images are weakened by the number of binders crossed.
    """
    if type(t) is Var:
        i = t.index
        if i < depth:
            return t
        j = i - depth
        if j < k:
            u = images[j]
            return remap(u, (), 0, depth) if depth else u
        return Var(j + shift + depth)
    slots = t.slots
    return Op(
        t.name,
        t.fam,
        slots,
        tuple(substitute(a, images, k, shift, depth + s) for a, s in zip(t.args, slots)),
    )


def order_key(t, positions):
    if type(t) is Var:
        return (0, t.index)
    fam = t.fam
    return (
        1,
        positions[t.name],
        -1 if fam is None else fam,
        tuple([order_key(a, positions) for a in t.args]),
    )


def free_indices(t, depth=0, acc=None):
    """Set of free indices of ``t`` (relative to ``depth`` enclosing binders)."""
    if acc is None:
        acc = set()
    if type(t) is Var:
        if t.index >= depth:
            acc.add(t.index - depth)
        return acc
    for a, s in zip(t.args, t.slots):
        free_indices(a, depth + s, acc)
    return acc


def scope_bound(t):
    """Smallest context size in which ``t`` is well scoped."""
    if type(t) is Var:
        return t.index + 1
    b = 0
    for a, s in zip(t.args, t.slots):
        ba = scope_bound(a) - s
        if ba > b:
            b = ba
    return b
