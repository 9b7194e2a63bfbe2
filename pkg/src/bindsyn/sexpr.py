"""Named s-expression syntax for terms and templates.

Grammar::

    term   ::= ident                      variable, or a constant operation
             | (op arg ...)               op may carry a family index: op@k
    arg    ::= term                       for an argument without binders
             | (x y ...) term             for an argument binding that many variables
             | (bind (x y ...) term)      same, explicit form

Names resolve innermost first, so shadowing is allowed.  A context given as
``"x,y,z"`` lists variables oldest first: the leftmost name has the highest
de Bruijn index and the rightmost has index 0.  In a binder list ``(x y)``
the first name gets index 0, the second index 1, and so on.

Templates additionally allow metavariables ``#1``, ``#2``, ... (1-based),
written bare for arguments without binders and as ``(#i t1 .. ts)`` when the
metavariable stands for an argument binding ``s`` variables.
"""
from __future__ import annotations

from ._nodes import Op, Var
from .errors import ArityError, BindsynError, ScopeError, UnknownOperation
from .signature import AlgebraicSignature


class ParseError(BindsynError):
    pass


def tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def read(text: str):
    """Read one s-expression into nested lists of strings."""
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    pos = 0

    def go():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of input")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            items = []
            while True:
                if pos >= len(tokens):
                    raise ParseError("missing ')'")
                if tokens[pos] == ")":
                    pos += 1
                    return items
                items.append(go())
        if tok == ")":
            raise ParseError("unexpected ')'")
        return tok

    out = go()
    if pos != len(tokens):
        raise ParseError(f"trailing input after s-expression: {' '.join(tokens[pos:])}")
    return out


def parse_ctx(spec: str | None) -> list[str]:
    if not spec:
        return []
    names = [s.strip() for s in spec.split(",")]
    if any(not n for n in names):
        raise ParseError(f"bad context {spec!r}")
    return names


class Meta:
    """Metavariable occurrence ``#index`` (0-based) applied to terms for its bound slots."""

    __slots__ = ("index", "args")

    def __init__(self, index: int, args=()):
        self.index = index
        self.args = tuple(args)

    def __eq__(self, other):
        return isinstance(other, Meta) and (self.index, self.args) == (other.index, other.args)

    def __hash__(self):
        return hash(("meta", self.index, self.args))

    def __repr__(self):
        if not self.args:
            return f"#{self.index + 1}"
        return f"#{self.index + 1}[{', '.join(map(repr, self.args))}]"


class _Parser:
    def __init__(self, sig: AlgebraicSignature, meta_arities=None):
        self.sig = sig
        self.meta_arities = meta_arities

    def head(self, tok: str):
        name, at, idx = tok.partition("@")
        if name not in self.sig:
            raise UnknownOperation(f"unknown operation {name!r}")
        d = self.sig[name]
        if at:
            if not d.is_family:
                raise ArityError(f"{name!r} is not a family and takes no @index")
            fam = d.family.parse_index(idx)
        elif d.is_family:
            raise ArityError(f"family {name!r} needs an index: {name}@k")
        else:
            fam = None
        return name, fam, d.arity_at(fam)

    def term(self, sx, env: list[str]):
        if isinstance(sx, str):
            if sx in env:
                return Var(env.index(sx))
            if sx.startswith("#") and self.meta_arities is not None:
                return self.meta(sx, [], env)
            if sx.partition("@")[0] in self.sig:
                name, fam, slots = self.head(sx)
                if slots:
                    raise ArityError(f"{name!r} takes {len(slots)} arguments, got 0")
                return Op(name, fam, (), ())
            raise ScopeError(f"unbound name {sx!r}")
        if not sx:
            raise ParseError("empty list is not a term")
        hd, rest = sx[0], sx[1:]
        if not isinstance(hd, str):
            raise ParseError(f"operation name expected, got {hd!r}")
        if hd.startswith("#") and self.meta_arities is not None:
            return self.meta(hd, rest, env)
        name, fam, slots = self.head(hd)
        args = []
        k = 0
        for s in slots:
            if k >= len(rest):
                raise ArityError(f"{name!r} takes {len(slots)} arguments, got fewer")
            if s == 0:
                args.append(self.term(rest[k], env))
                k += 1
                continue
            item = rest[k]
            if isinstance(item, list) and len(item) == 3 and item[0] == "bind" and isinstance(item[1], list):
                names, body = item[1], item[2]
                k += 1
            else:
                if k + 1 >= len(rest):
                    raise ArityError(f"argument of {name!r} binding {s} variables needs (names) and a body")
                names, body = item, rest[k + 1]
                k += 2
            if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
                raise ParseError(f"binder list of names expected in {name!r}, got {names!r}")
            if len(names) != s:
                raise ArityError(f"argument of {name!r} binds {s} variables, got {len(names)} names")
            args.append(self.term(body, list(names) + env))
        if k != len(rest):
            raise ArityError(f"{name!r} takes {len(slots)} arguments, got more")
        return Op(name, fam, slots, tuple(args))

    def meta(self, tok, rest, env):
        try:
            idx = int(tok[1:]) - 1
        except ValueError:
            raise ParseError(f"bad metavariable {tok!r}") from None
        if not 0 <= idx < len(self.meta_arities):
            raise ArityError(f"metavariable {tok} out of range (1..{len(self.meta_arities)})")
        s = self.meta_arities[idx]
        if len(rest) != s:
            raise ArityError(f"metavariable {tok} binds {s} variables, applied to {len(rest)} terms")
        return Meta(idx, [self.term(a, env) for a in rest])


def parse_term(text_or_sx, sig: AlgebraicSignature, ctx=()):
    """Parse a term; ``ctx`` is a list of names (oldest first) or a ``"x,y"`` string."""
    if isinstance(ctx, str):
        ctx = parse_ctx(ctx)
    sx = read(text_or_sx) if isinstance(text_or_sx, str) else text_or_sx
    env = list(reversed(list(ctx)))
    return _Parser(sig).term(sx, env)


def parse_template_body(text: str, sig: AlgebraicSignature, arities):
    return _Parser(sig, tuple(arities)).term(read(text), [])


def _fresh_name(taken):
    k = 0
    while f"x{k}" in taken:
        k += 1
    return f"x{k}"


def print_term(t, sig: AlgebraicSignature, ctx=()) -> str:
    """Render ``t`` with the free variables named by ``ctx`` (oldest first)."""
    if isinstance(ctx, str):
        ctx = parse_ctx(ctx)
    env = list(reversed(list(ctx)))
    reserved = set(sig.names) | set(ctx)

    def go(t, env):
        if type(t) is Var:
            if t.index >= len(env):
                raise ScopeError(f"variable {t.index} has no name in a context of {len(env)} names")
            return env[t.index]
        if isinstance(t, Meta):
            if not t.args:
                return repr(t)
            return f"(#{t.index + 1} {' '.join(go(a, env) for a in t.args)})"
        head = t.name if t.fam is None else f"{t.name}@{sig[t.name].family.format_index(t.fam)}"
        if not t.args:
            return head
        parts = [head]
        for a, s in zip(t.args, t.slots):
            if s == 0:
                parts.append(go(a, env))
                continue
            names = []
            for _ in range(s):
                names.append(_fresh_name(reserved | set(env) | set(names)))
            parts.append(f"({' '.join(names)})")
            parts.append(go(a, names + env))
        return f"({' '.join(parts)})"

    return go(t, env)
