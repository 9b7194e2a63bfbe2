"""Hypothesis strategies for renamings, signatures' terms and substitutions."""
import functools

from hypothesis import strategies as st

from bindsyn._nodes import Op, Var
from bindsyn.context import Renaming
from bindsyn.signature import SIGMA_LC


def renamings(dom=None, cod=None, max_ctx=8):
    @st.composite
    def build(draw):
        n = draw(st.integers(0, max_ctx)) if dom is None else dom
        lo = 1 if n else 0
        m = draw(st.integers(lo, max(lo, max_ctx))) if cod is None else cod
        mp = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n)) if m else []
        return Renaming(n, m, tuple(mp))

    return build()


def _ops(sig):
    out = []
    for d in sig.ops:
        if d.is_family:
            out += [(d.name, k, d.arity_at(k)) for k in d.family.sample_indices()]
        else:
            out.append((d.name, None, d.arity))
    return out


@functools.lru_cache(maxsize=None)
def terms(n, sig=SIGMA_LC, depth=4):
    """Terms over ``sig`` in context ``n``."""
    ops = _ops(sig)
    memo = {}

    def go(n, depth):
        if (n, depth) in memo:
            return memo[n, depth]
        choices = []
        if n:
            choices.append(st.integers(0, n - 1).map(Var))
        if depth > 0:
            for name, fam, slots in ops:
                parts = [go(n + s, depth - 1) for s in slots]
                choices.append(
                    st.tuples(*parts).map(lambda args, name=name, fam=fam, slots=slots: Op(name, fam, slots, args))
                )
        memo[n, depth] = st.one_of(*choices) if choices else st.nothing()
        return memo[n, depth]

    return go(n, depth)


@st.composite
def term_in_ctx(draw, sig=SIGMA_LC, max_ctx=4, depth=4):
    n = draw(st.integers(1, max_ctx))
    return n, draw(terms(n, sig, depth))


def substitutions(n, m, sig=SIGMA_LC, depth=3):
    return st.tuples(*[terms(m, sig, depth) for _ in range(n)])
