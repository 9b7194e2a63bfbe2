import pytest
from hypothesis import given
from hypothesis import strategies as st

from bindsyn._nodes import Op, Var
from bindsyn.context import compose as compose_renamings
from bindsyn.context import extend, identity, renaming
from bindsyn.errors import ArityError, ScopeError, UnknownOperation
from bindsyn.signature import SIGMA_LC, SIGMA_LJ
from bindsyn.term import (
    Constructor,
    Variable,
    check,
    compose,
    decompose,
    depth,
    free_vars,
    lift,
    mk_op,
    rename,
    sigma,
    size,
    subst,
    subst_p,
    term_lt,
    var,
    weaken,
)

from oracles import shift_map
from strategies import renamings, substitutions, terms


def app(a, b):
    return Op("app", None, (0, 0), (a, b))


def lam(b):
    return Op("abs", None, (1,), (b,))


x0, x1, x2 = Var(0), Var(1), Var(2)


def test_var():
    assert var(0, 1) == x0
    assert var(2, 3) == x2
    with pytest.raises(ScopeError):
        var(3, 2)


def test_mk_op():
    assert mk_op(SIGMA_LC, "app", [x0, x1], 2) == app(x0, x1)
    assert mk_op(SIGMA_LC, "abs", [x0], 0) == lam(x0)
    with pytest.raises(ArityError):
        mk_op(SIGMA_LC, "abs", [x0, x0], 0)
    with pytest.raises(ScopeError):
        mk_op(SIGMA_LC, "abs", [x1], 0)
    with pytest.raises(UnknownOperation):
        mk_op(SIGMA_LC, "lam", [x0], 0)


def test_check_rejects_wrong_slots():
    with pytest.raises(ArityError):
        check(SIGMA_LC, Op("abs", None, (0,), (x0,)), 1)
    with pytest.raises(ScopeError):
        check(SIGMA_LC, lam(x2), 1)
    check(SIGMA_LC, lam(x1), 1)


def test_rename_examples():
    assert rename(x0, renaming([1], 2)) == x1
    assert rename(lam(app(x0, x1)), renaming([1], 2)) == lam(app(x0, x2))
    t = app(lam(x1), x0)
    assert rename(t, identity(1)) == t


def test_subst_examples():
    f = (lam(x1),)
    assert subst(app(x0, lam(x0)), f) == app(lam(x1), lam(x0))
    assert subst(x1, [x0, lam(x0)]) == lam(x0)
    t = app(x1, lam(x2))
    assert subst(t, [x0, x1]) == t
    with pytest.raises(ScopeError):
        subst(x2, [x0])


def test_subst_callable():
    assert subst(app(x0, x1), lambda i: Var(i + 5), 2) == app(Var(5), Var(6))


def test_weaken_examples():
    assert weaken(x0, 1) == x1
    t = lam(app(x0, x1))
    assert weaken(t, 0) is t
    back = [lam(x0)] + [Var(i) for i in range(1)]
    assert subst(weaken(t, 1), back) == t


def test_sigma_examples():
    u = lam(x0)
    assert sigma(x0, u) == u
    assert sigma(Var(3), u) == x2
    assert sigma(app(x0, x1), u) == app(u, x0)


def test_subst_p_examples():
    t = app(x0, x1)
    assert subst_p(t, []) == t
    u, v = lam(x0), lam(lam(x1))
    assert subst_p(x1, [u, v]) == v
    assert subst_p(app(x0, x2), [u, v]) == app(u, x0)


def test_decompose_examples():
    assert decompose(Var(3)) == Variable(3)
    t, u = x0, lam(x0)
    assert decompose(app(t, u)) == Constructor("app", None, (t, u))
    assert compose(decompose(app(t, u)), SIGMA_LC, 1) == app(t, u)


def test_measures():
    t = app(lam(app(x0, x1)), x0)
    assert size(t) == 6
    assert depth(t) == 4
    assert free_vars(t) == {0}


def test_order():
    assert term_lt(x0, x1, SIGMA_LC)
    assert term_lt(x2, lam(x0), SIGMA_LC)
    # app is declared before abs
    assert term_lt(app(x0, x0), lam(x0), SIGMA_LC)
    assert term_lt(app(x0, x0), app(x0, x1), SIGMA_LC)
    assert not term_lt(x0, x0, SIGMA_LC)


@st.composite
def subst_chain(draw, max_ctx=4):
    n, k, l = (draw(st.integers(1, max_ctx)) for _ in range(3))
    t = draw(terms(n))
    f = draw(substitutions(n, k))
    g = draw(substitutions(k, l))
    return t, f, g


@given(subst_chain())
def test_monad_laws(tfg):
    t, f, g = tfg
    n = len(f)
    for i in range(n):
        assert subst(Var(i), f) == f[i]
    assert subst(t, [Var(i) for i in range(n)]) == t
    assert subst(subst(t, f), g) == subst(t, [subst(u, g) for u in f])


@st.composite
def rename_chain(draw):
    f = draw(renamings(max_ctx=5))
    g = draw(renamings(dom=f.cod, max_ctx=5))
    t = draw(terms(f.dom, depth=4)) if f.dom else draw(terms(1, depth=3).map(lam))
    return t, f, g


@given(rename_chain())
def test_functor_laws(tfg):
    t, f, g = tfg
    assert rename(t, identity(f.dom)) == t
    assert rename(rename(t, f), g) == rename(t, compose_renamings(f, g))
    assert rename(t, f) == subst(t, [Var(j) for j in f.map])
    assert rename(t, f) == shift_map(t, lambda i: f.map[i])


@given(subst_chain(), st.integers(0, 3))
def test_derivation_law(tfg, k):
    t, f, _ = tfg
    assert weaken(subst(t, f), k) == subst(weaken(t, k), lift(f, k))


@given(st.integers(0, 3), st.data())
def test_sigma_linear(n, data):
    m = data.draw(st.integers(1, 4))
    t = data.draw(terms(n + 1))
    u = data.draw(terms(n)) if n else lam(x0)
    f = data.draw(substitutions(n, m))
    assert subst(sigma(t, u), f) == sigma(subst(t, lift(f, 1)), subst(u, f))
    assert sigma(t, u) == subst(t, [u] + [Var(i) for i in range(n)])
    assert subst_p(t, [u]) == sigma(t, u)


@given(st.integers(0, 4), st.integers(1, 4), st.integers(1, 3), st.data())
def test_subst_p_coherence(p, q, n, data):
    u = data.draw(st.lists(st.integers(0, q - 1), min_size=p, max_size=p))
    t = data.draw(terms(n + p))
    ss = data.draw(substitutions(q, n))
    moved = rename(t, renaming(list(u) + list(range(q, q + n)), q + n))
    assert subst_p(moved, ss) == subst_p(t, [ss[j] for j in u])


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), terms(n, SIGMA_LJ, 3))))
def test_lambek_roundtrip(nt):
    n, t = nt
    assert compose(decompose(t), SIGMA_LJ, n) == t
    shape = decompose(t)
    assert decompose(compose(shape, SIGMA_LJ, n)) == shape


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), terms(n))), st.integers(0, 3))
def test_extend_matches_binders(nt, k):
    n, t = nt
    f = renaming(list(reversed(range(n))), n)
    body = weaken(t, k)
    assert rename(body, extend(f, k)) == weaken(rename(t, f), k)
