"""Algebraic signatures with binding arities.

An operation is declared either with a fixed binding arity ``(s_1, ..., s_n)``
(argument ``i`` lives under ``s_i`` fresh variables) or as a family indexed by
the naturals, whose arity at index ``k`` is given by a :class:`FamilySchema`.
Families stand in for infinite coproducts such as "one ``k``-ary binder for
every ``k``".
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ArityError, SignatureError, UnknownOperation

Arity = tuple[int, ...]


def fix_index(n: int, i: int) -> int:
    """Encode (number of components ``n >= 1``, selected component ``i < n``)."""
    if not 0 <= i < n:
        raise ArityError(f"component {i} out of range for a {n}-ary fixpoint")
    return n * (n - 1) // 2 + i


def fix_decode(idx: int) -> tuple[int, int]:
    n = (1 + math.isqrt(1 + 8 * idx)) // 2
    while n * (n - 1) // 2 > idx:
        n -= 1
    while (n + 1) * n // 2 <= idx:
        n += 1
    return n, idx - n * (n - 1) // 2


def unpair(k: int) -> tuple[int, int]:
    w = (math.isqrt(8 * k + 1) - 1) // 2
    b = k - w * (w + 1) // 2
    return w - b, b


def pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


@dataclass(frozen=True)
class FamilySchema:
    """A total map from family index to binding arity.

    ``kind`` is one of the builtin kinds below; ``params`` carries the
    operands of the composite kinds produced by :func:`product`.
    """

    kind: str
    params: tuple = ()

    KINDS = ("powers", "binder-seq", "esubst", "fixpoint", "prefix", "suffix", "pair")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise SignatureError(f"unknown family kind {self.kind!r}")

    def __call__(self, idx: int) -> Arity:
        if idx < 0:
            raise ArityError("family index must be a natural number")
        kind = self.kind
        if kind == "powers":
            return (0,) * idx
        if kind == "binder-seq":
            return (idx,)
        if kind == "esubst":
            return (idx,) + (0,) * idx
        if kind == "fixpoint":
            n, _ = fix_decode(idx)
            return (n,) * n
        if kind == "prefix":
            fixed, inner = self.params
            return tuple(fixed) + inner(idx)
        if kind == "suffix":
            inner, fixed = self.params
            return inner(idx) + tuple(fixed)
        left, right = self.params
        a, b = unpair(idx)
        return left(a) + right(b)

    def sample_indices(self) -> range:
        """Indices used by random generators (kept small on purpose)."""
        if self.kind == "fixpoint":
            return range(6)  # n <= 3
        if self.kind == "pair":
            return range(10)
        if self.kind == "prefix":
            return self.params[1].sample_indices()
        if self.kind == "suffix":
            return self.params[0].sample_indices()
        return range(4)

    def format_index(self, idx: int) -> str:
        if self.kind == "fixpoint":
            n, i = fix_decode(idx)
            return f"{n}.{i}"
        return str(idx)

    def parse_index(self, text: str) -> int:
        if self.kind == "fixpoint" and "." in text:
            n, i = text.split(".", 1)
            return fix_index(int(n), int(i))
        idx = int(text)
        if idx < 0:
            raise ArityError("family index must be a natural number")
        return idx

    def describe(self) -> str:
        if self.kind == "prefix":
            return f"prefix({list(self.params[0])}, {self.params[1].describe()})"
        if self.kind == "suffix":
            return f"suffix({self.params[0].describe()}, {list(self.params[1])})"
        if self.kind == "pair":
            return f"pair({self.params[0].describe()}, {self.params[1].describe()})"
        return self.kind


POWERS = FamilySchema("powers")
BINDER_SEQ = FamilySchema("binder-seq")
ESUBST = FamilySchema("esubst")
FIXPOINT = FamilySchema("fixpoint")


@dataclass(frozen=True)
class OperationDecl:
    name: str
    arity: Arity | None = None
    family: FamilySchema | None = None

    def __post_init__(self):
        if (self.arity is None) == (self.family is None):
            raise SignatureError(f"operation {self.name!r} needs exactly one of arity/family")
        if self.arity is not None:
            object.__setattr__(self, "arity", tuple(self.arity))
            if any(s < 0 for s in self.arity):
                raise SignatureError(f"negative binding count in {self.name!r}")

    @property
    def is_family(self) -> bool:
        return self.family is not None

    def shape(self):
        return self.arity if self.family is None else self.family

    def arity_at(self, fam: int | None) -> Arity:
        if self.family is None:
            if fam is not None:
                raise ArityError(f"{self.name!r} is not a family; got index {fam}")
            return self.arity
        if fam is None:
            raise ArityError(f"family {self.name!r} needs an index")
        return self.family(fam)

    def renamed(self, name: str) -> OperationDecl:
        return OperationDecl(name, self.arity, self.family)


@dataclass(frozen=True)
class AlgebraicSignature:
    ops: tuple[OperationDecl, ...] = ()
    name: str = "sig"
    renames: tuple[tuple[str, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        seen = set()
        for d in self.ops:
            if d.name in seen:
                raise SignatureError(f"duplicate operation name {d.name!r}")
            seen.add(d.name)

    @cached_property
    def positions(self) -> dict[str, int]:
        return {d.name: i for i, d in enumerate(self.ops)}

    @cached_property
    def _by_name(self) -> dict[str, OperationDecl]:
        return {d.name: d for d in self.ops}

    def __contains__(self, name) -> bool:
        return name in self._by_name

    def __getitem__(self, name: str) -> OperationDecl:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownOperation(f"no operation {name!r} in signature {self.name!r}") from None

    def __len__(self) -> int:
        return len(self.ops)

    @property
    def names(self) -> list[str]:
        return [d.name for d in self.ops]

    def arity(self, name: str, fam: int | None = None) -> Arity:
        return self[name].arity_at(fam)

    def describe(self) -> str:
        parts = []
        for d in self.ops:
            parts.append(f"{d.name}:{d.family.describe() if d.is_family else list(d.arity)}")
        return f"{self.name} = {{{', '.join(parts)}}}"


def empty(name: str = "0") -> AlgebraicSignature:
    return AlgebraicSignature((), name)


def elementary(arity, name: str) -> AlgebraicSignature:
    return AlgebraicSignature((OperationDecl(name, tuple(arity)),), name)


def family(schema: FamilySchema, name: str) -> AlgebraicSignature:
    return AlgebraicSignature((OperationDecl(name, family=schema),), name)


def _fresh(name: str, taken) -> str:
    k = 2
    while f"{name}${k}" in taken:
        k += 1
    return f"{name}${k}"


def coproduct(a: AlgebraicSignature, b: AlgebraicSignature, name: str | None = None) -> AlgebraicSignature:
    """Disjoint union of operation sets; clashing names from ``b`` get a ``$k`` suffix."""
    taken = set(a.names)
    ops = list(a.ops)
    renames = list(a.renames)
    for d in b.ops:
        if d.name in taken:
            new = _fresh(d.name, taken | set(b.names))
            renames.append((d.name, new))
            d = d.renamed(new)
        taken.add(d.name)
        ops.append(d)
    return AlgebraicSignature(tuple(ops), name or f"{a.name}+{b.name}", tuple(renames))


def coproduct_all(sigs, name: str | None = None) -> AlgebraicSignature:
    out = empty()
    for s in sigs:
        out = coproduct(out, s)
    return AlgebraicSignature(out.ops, name or out.name, out.renames)


def _product_decl(d1: OperationDecl, d2: OperationDecl) -> OperationDecl:
    name = f"{d1.name}*{d2.name}"
    if not d1.is_family and not d2.is_family:
        return OperationDecl(name, d1.arity + d2.arity)
    if not d1.is_family:
        return OperationDecl(name, family=FamilySchema("prefix", (d1.arity, d2.family)))
    if not d2.is_family:
        return OperationDecl(name, family=FamilySchema("suffix", (d1.family, d2.arity)))
    return OperationDecl(name, family=FamilySchema("pair", (d1.family, d2.family)))


def product(a: AlgebraicSignature, b: AlgebraicSignature, name: str | None = None) -> AlgebraicSignature:
    """Pairwise products of operations; arities concatenate.

    Product distributes over coproduct: the op list of ``(A + B) * C`` is the
    op list of ``A * C + B * C``.
    """
    ops = [_product_decl(d1, d2) for d1 in a.ops for d2 in b.ops]
    return AlgebraicSignature(tuple(ops), name or f"({a.name})*({b.name})")


@dataclass(frozen=True)
class SignatureMorphism:
    """An arity-preserving map of operation names (family indices are kept)."""

    src: AlgebraicSignature
    dst: AlgebraicSignature
    op_map: tuple[tuple[str, str], ...]

    def __post_init__(self):
        mapping = dict(self.op_map)
        object.__setattr__(self, "op_map", tuple(sorted(mapping.items())))
        for d in self.src.ops:
            if d.name not in mapping:
                raise SignatureError(f"morphism does not map {d.name!r}")
            target = self.dst[mapping[d.name]]
            if d.shape() != target.shape():
                raise ArityError(
                    f"{d.name!r} and {target.name!r} have different arities; morphisms must preserve them"
                )

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.op_map)

    def __call__(self, name: str) -> str:
        return self.mapping[name]


def morphism(src, dst, mapping) -> SignatureMorphism:
    return SignatureMorphism(src, dst, tuple(dict(mapping).items()))


def identity_morphism(sig: AlgebraicSignature) -> SignatureMorphism:
    return morphism(sig, sig, {n: n for n in sig.names})


def compose_morphisms(f: SignatureMorphism, g: SignatureMorphism) -> SignatureMorphism:
    """First ``f`` then ``g``."""
    if f.dst != g.src:
        raise SignatureError("morphisms are not composable")
    return morphism(f.src, g.dst, {n: g(f(n)) for n in f.src.names})


def inclusion(sub: AlgebraicSignature, sup: AlgebraicSignature) -> SignatureMorphism:
    """The morphism sending each op of ``sub`` to the op of the same name in ``sup``."""
    return morphism(sub, sup, {n: n for n in sub.names})


def coproduct_injections(a, b, name=None):
    s = coproduct(a, b, name)
    renamed = dict(s.renames[len(a.renames):])
    inl = morphism(a, s, {n: n for n in a.names})
    inr = morphism(b, s, {n: renamed.get(n, n) for n in b.names})
    return s, inl, inr


@dataclass(frozen=True)
class Pushout:
    sig: AlgebraicSignature
    inj1: SignatureMorphism
    inj2: SignatureMorphism
    f: SignatureMorphism
    g: SignatureMorphism


def pushout(f: SignatureMorphism, g: SignatureMorphism, name: str | None = None) -> Pushout:
    """Pushout of ``f: S0 -> S1`` and ``g: S0 -> S2`` at the level of operation sets."""
    if f.src != g.src:
        raise SignatureError("pushout needs morphisms with a common source")
    s1, s2 = f.dst, g.dst
    parent: dict = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for n in f.src.names:
        a, b = find((1, f(n))), find((2, g(n)))
        if a != b:
            # keep the smaller key as root so classes are named deterministically
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo

    members = [(1, n) for n in s1.names] + [(2, n) for n in s2.names]
    decl_of = {(1, n): s1[n] for n in s1.names} | {(2, n): s2[n] for n in s2.names}
    class_name: dict = {}
    ops = []
    taken: set[str] = set()
    for m in members:
        root = find(m)
        if root in class_name:
            if decl_of[m].shape() != decl_of[root].shape():
                raise ArityError(f"pushout would merge {decl_of[root].name!r} and {decl_of[m].name!r} of different arity")
            continue
        base = decl_of[root].name
        nm = base if base not in taken else _fresh(base, taken)
        taken.add(nm)
        class_name[root] = nm
        ops.append(decl_of[root].renamed(nm))
    sig = AlgebraicSignature(tuple(ops), name or f"{s1.name}+[{f.src.name}]{s2.name}")
    inj1 = morphism(s1, sig, {n: class_name[find((1, n))] for n in s1.names})
    inj2 = morphism(s2, sig, {n: class_name[find((2, n))] for n in s2.names})
    return Pushout(sig, inj1, inj2, f, g)


# Fixture signatures.

THETA = (0,)
THETA2 = (0, 0)
THETA_PRIME = (1,)
POINT = ()

SIGMA_LC = coproduct(elementary(THETA2, "app"), elementary(THETA_PRIME, "abs"), "LC")

SIGMA_LJ = coproduct_all(
    [elementary(THETA, "neg")]
    + [elementary(THETA2, n) for n in ("and", "or", "imp")]
    + [elementary(THETA_PRIME, n) for n in ("all", "ex")],
    "LJ",
)

# Linear logic: constants top, bot, 0, 1; unary !, ?; binary &, par, tensor, plus, -o;
# binders forall, exists.  The linear implication is named ``imp``.
SIGMA_LL = coproduct_all(
    [elementary(POINT, n) for n in ("top", "bot", "zero", "one")]
    + [elementary(THETA, n) for n in ("bang", "whynot")]
    + [elementary(THETA2, n) for n in ("with", "par", "tensor", "plus", "imp")]
    + [elementary(THETA_PRIME, n) for n in ("all", "ex")],
    "LL",
)

BUILTIN_SIGNATURES = {"LC": SIGMA_LC, "LJ": SIGMA_LJ, "LL": SIGMA_LL}
