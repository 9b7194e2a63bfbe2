import pytest
from hypothesis import given
from hypothesis import strategies as st

from bindsyn.context import Renaming, act_on_fresh, compose, extend, identity, renaming, weakening
from bindsyn.errors import ContextMismatch, ScopeError

from strategies import renamings


def test_identity_maps():
    assert identity(3).map == (0, 1, 2)
    assert identity(0).map == ()


def test_compose_by_hand():
    f = renaming([1], 2)
    g = renaming([0, 2], 3)
    assert compose(f, g) == Renaming(1, 3, (2,))


def test_compose_mismatch():
    with pytest.raises(ContextMismatch):
        compose(renaming([0], 1), renaming([0, 1], 2))


def test_extend_by_hand():
    f = renaming([1], 2)
    assert extend(f, 1) == Renaming(2, 3, (0, 2))
    assert extend(f, 0) == f


def test_image_out_of_range_rejected():
    with pytest.raises((ScopeError, ValueError)):
        Renaming(1, 1, (1,))


def test_weakening_and_fresh_block():
    assert weakening(2, 1).map == (1, 2)
    u = renaming([1, 1], 2)
    assert act_on_fresh(u, 2).map == (1, 1, 2, 3)


@given(renamings())
def test_identity_is_unit(f):
    assert compose(identity(f.dom), f) == f
    assert compose(f, identity(f.cod)) == f


@st.composite
def chains(draw):
    f = draw(renamings())
    g = draw(renamings(dom=f.cod))
    h = draw(renamings(dom=g.cod))
    return f, g, h


@given(chains())
def test_compose_associative(fgh):
    f, g, h = fgh
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(chains(), st.integers(0, 4))
def test_extend_functorial(fgh, k):
    f, g, _ = fgh
    assert extend(compose(f, g), k) == compose(extend(f, k), extend(g, k))
    assert extend(identity(f.dom), k) == identity(f.dom + k)
