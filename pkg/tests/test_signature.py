import pytest
from hypothesis import given
from hypothesis import strategies as st

from bindsyn.errors import ArityError, SignatureError, UnknownOperation
from bindsyn.signature import (
    BINDER_SEQ,
    ESUBST,
    FIXPOINT,
    POWERS,
    SIGMA_LC,
    SIGMA_LJ,
    SIGMA_LL,
    AlgebraicSignature,
    FamilySchema,
    OperationDecl,
    compose_morphisms,
    coproduct,
    coproduct_all,
    coproduct_injections,
    elementary,
    empty,
    family,
    fix_decode,
    fix_index,
    identity_morphism,
    inclusion,
    morphism,
    pair,
    product,
    pushout,
    unpair,
)


def arities(sig):
    return {d.name: (d.arity if not d.is_family else d.family) for d in sig.ops}


def test_elementary():
    assert arities(elementary((0, 0), "app")) == {"app": (0, 0)}
    assert arities(elementary((1,), "abs")) == {"abs": (1,)}
    assert arities(elementary((), "c")) == {"c": ()}


def test_lc_is_coproduct():
    assert arities(SIGMA_LC) == {"app": (0, 0), "abs": (1,)}
    assert coproduct(SIGMA_LC, empty()).ops == SIGMA_LC.ops


def test_lj_and_ll_shapes():
    assert arities(SIGMA_LJ) == {
        "neg": (0,), "and": (0, 0), "or": (0, 0), "imp": (0, 0), "all": (1,), "ex": (1,),
    }
    shapes = sorted(d.arity for d in SIGMA_LL.ops)
    assert shapes.count(()) == 4
    assert shapes.count((0,)) == 2
    assert shapes.count((0, 0)) == 5
    assert shapes.count((1,)) == 2


def test_coproduct_renames_clashes():
    s = coproduct(elementary((0,), "f"), elementary((0, 0), "f"))
    assert s.names == ["f", "f$2"]
    assert s.renames == (("f", "f$2"),)
    s3 = coproduct(s, elementary((), "f"))
    assert s3.names == ["f", "f$2", "f$3"]


def test_coproduct_associative_up_to_ops():
    a, b, c = elementary((0,), "a"), elementary((1,), "b"), family(POWERS, "c")
    assert coproduct(coproduct(a, b), c).ops == coproduct(a, coproduct(b, c)).ops


def test_duplicate_names_rejected():
    with pytest.raises(SignatureError):
        AlgebraicSignature((OperationDecl("x", ()), OperationDecl("x", (0,))))


def test_unknown_operation():
    with pytest.raises(UnknownOperation):
        SIGMA_LC["lam"]


def test_schemas():
    assert POWERS(3) == (0, 0, 0)
    assert BINDER_SEQ(2) == (2,)
    assert ESUBST(2) == (2, 0, 0)
    assert FIXPOINT(fix_index(3, 1)) == (3, 3, 3)
    with pytest.raises(ArityError):
        POWERS(-1)
    with pytest.raises(SignatureError):
        FamilySchema("nope")


@given(st.integers(1, 40), st.data())
def test_fix_index_roundtrip(n, data):
    i = data.draw(st.integers(0, n - 1))
    assert fix_decode(fix_index(n, i)) == (n, i)


@given(st.integers(0, 500))
def test_fix_decode_covers_naturals(k):
    n, i = fix_decode(k)
    assert 0 <= i < n and fix_index(n, i) == k


@given(st.integers(0, 200), st.integers(0, 200))
def test_pairing_bijective(a, b):
    assert unpair(pair(a, b)) == (a, b)


def test_format_and_parse_fixpoint_index():
    k = fix_index(3, 2)
    assert FIXPOINT.format_index(k) == "3.2"
    assert FIXPOINT.parse_index("3.2") == k
    assert FIXPOINT.parse_index(str(k)) == k


def test_product_of_elementary():
    p = product(elementary((1,), "a"), elementary((0, 0), "b"))
    assert arities(p) == {"a*b": (1, 0, 0)}


def test_product_distributes():
    a, b, c = elementary((0,), "a"), elementary((1,), "b"), elementary((0, 0), "c")
    lhs = product(coproduct(a, b), c)
    rhs = coproduct(product(a, c), product(b, c))
    assert lhs.ops == rhs.ops


def test_product_with_families():
    fixed_fam = product(elementary((0,), "t"), family(POWERS, "l"))
    d = fixed_fam["t*l"]
    assert d.is_family and d.arity_at(2) == (0, 0, 0)
    fam_fixed = product(family(POWERS, "l"), elementary((1,), "b"))
    assert fam_fixed["l*b"].arity_at(2) == (0, 0, 1)
    fam_fam = product(family(BINDER_SEQ, "s"), family(POWERS, "l"))
    assert fam_fam["s*l"].arity_at(pair(2, 1)) == (2, 0)


def test_morphisms_preserve_arity():
    with pytest.raises(ArityError):
        morphism(elementary((0,), "a"), elementary((1,), "b"), {"a": "b"})
    with pytest.raises(SignatureError):
        morphism(SIGMA_LC, SIGMA_LC, {"app": "app"})


def test_morphism_composition():
    big = coproduct(SIGMA_LC, elementary((1,), "fix"))
    f = inclusion(SIGMA_LC, big)
    assert compose_morphisms(identity_morphism(SIGMA_LC), f).mapping == f.mapping
    g = morphism(big, big, {"app": "app", "abs": "fix", "fix": "abs"})
    assert compose_morphisms(f, g)("abs") == "fix"


def test_pushout_identities():
    i = identity_morphism(SIGMA_LC)
    po = pushout(i, i)
    assert po.sig.ops == SIGMA_LC.ops


def test_pushout_of_extensions():
    s1 = coproduct(SIGMA_LC, elementary((1,), "fix"))
    s2 = coproduct(SIGMA_LC, family(ESUBST, "esubst"))
    po = pushout(inclusion(SIGMA_LC, s1), inclusion(SIGMA_LC, s2))
    assert set(po.sig.names) == {"app", "abs", "fix", "esubst"}
    for n in SIGMA_LC.names:
        assert po.inj1(po.f(n)) == po.inj2(po.g(n))


def test_pushout_of_disjoint_parts_is_coproduct():
    s1 = coproduct(SIGMA_LC, elementary((0,), "a"))
    s2 = coproduct(SIGMA_LC, elementary((0,), "b"))
    po = pushout(inclusion(SIGMA_LC, s1), inclusion(SIGMA_LC, s2))
    assert po.sig.names == ["app", "abs", "a", "b"]


def test_pushout_renames_unshared_clash():
    s1 = coproduct(SIGMA_LC, elementary((0,), "k"))
    s2 = coproduct(SIGMA_LC, elementary((0, 0), "k"))
    po = pushout(inclusion(SIGMA_LC, s1), inclusion(SIGMA_LC, s2))
    assert po.sig.names == ["app", "abs", "k", "k$2"]
    assert po.inj2("k") == "k$2"


def test_coproduct_injections():
    s, inl, inr = coproduct_injections(elementary((0,), "f"), elementary((0, 0), "f"))
    assert inl("f") == "f" and inr("f") == "f$2"


def test_coproduct_all_name():
    assert coproduct_all([elementary((), "a")], "A").name == "A"
