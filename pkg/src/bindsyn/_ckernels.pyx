# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled traversal kernels; same contract as ``_pykernels``."""

from ._nodes import Op, Var

BACKEND = "cython"

cdef int _CACHE = 512
cdef tuple _VARS = tuple([Var(i) for i in range(_CACHE)])


cdef inline object _var(Py_ssize_t i):
    if i < _CACHE:
        return _VARS[i]
    return Var(i)


cdef object _remap(object t, tuple mapping, Py_ssize_t k, Py_ssize_t shift, Py_ssize_t depth):
    cdef Py_ssize_t i, j, n, idx
    cdef tuple args, slots
    cdef list out
    if type(t) is Var:
        i = t.index
        if i < depth:
            return t
        j = i - depth
        if j < k:
            return _var(<Py_ssize_t>mapping[j] + depth)
        return _var(j + shift + depth)
    args = t.args
    n = len(args)
    if n == 0:
        return t
    slots = t.slots
    out = [None] * n
    for idx in range(n):
        out[idx] = _remap(args[idx], mapping, k, shift, depth + <Py_ssize_t>slots[idx])
    return Op(t.name, t.fam, slots, tuple(out))


cdef object _substitute(object t, tuple images, Py_ssize_t k, Py_ssize_t shift, Py_ssize_t depth):
    cdef Py_ssize_t i, j, n, idx
    cdef tuple args, slots
    cdef list out
    if type(t) is Var:
        i = t.index
        if i < depth:
            return t
        j = i - depth
        if j < k:
            u = images[j]
            if depth:
                return _remap(u, (), 0, depth, 0)
            return u
        return _var(j + shift + depth)
    args = t.args
    n = len(args)
    if n == 0:
        return t
    slots = t.slots
    out = [None] * n
    for idx in range(n):
        out[idx] = _substitute(args[idx], images, k, shift, depth + <Py_ssize_t>slots[idx])
    return Op(t.name, t.fam, slots, tuple(out))


def remap(t, mapping, k, shift, depth=0):
    """Send free index ``j < k`` to ``mapping[j]`` and ``j >= k`` to ``j + shift``."""
    return _remap(t, tuple(mapping), k, shift, depth)


def substitute(t, images, k, shift, depth=0):
    """Replace free index ``j < k`` by ``images[j]``; ``j >= k`` becomes ``j + shift``."""
    return _substitute(t, tuple(images), k, shift, depth)


cdef object _order_key(object t, dict positions):
    cdef tuple args
    cdef Py_ssize_t n, idx
    cdef list keys
    if type(t) is Var:
        return (0, t.index)
    fam = t.fam
    args = t.args
    n = len(args)
    keys = [None] * n
    for idx in range(n):
        keys[idx] = _order_key(args[idx], positions)
    return (1, positions[t.name], -1 if fam is None else fam, tuple(keys))


def order_key(t, positions):
    return _order_key(t, dict(positions) if type(positions) is not dict else positions)


cdef void _free(object t, Py_ssize_t depth, set acc):
    cdef Py_ssize_t i, idx
    cdef tuple args, slots
    if type(t) is Var:
        i = t.index
        if i >= depth:
            acc.add(i - depth)
        return
    args = t.args
    slots = t.slots
    for idx in range(len(args)):
        _free(args[idx], depth + <Py_ssize_t>slots[idx], acc)


def free_indices(t, depth=0, acc=None):
    """Set of free indices of ``t`` (relative to ``depth`` enclosing binders)."""
    if acc is None:
        acc = set()
    _free(t, depth, acc)
    return acc


cdef Py_ssize_t _bound(object t):
    cdef Py_ssize_t b = 0, ba, idx
    cdef tuple args, slots
    if type(t) is Var:
        return <Py_ssize_t>t.index + 1
    args = t.args
    slots = t.slots
    for idx in range(len(args)):
        ba = _bound(args[idx]) - <Py_ssize_t>slots[idx]
        if ba > b:
            b = ba
    return b


def scope_bound(t):
    """Smallest context size in which ``t`` is well scoped."""
    return _bound(t)
