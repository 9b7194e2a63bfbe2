"""Loading signature and translation-mapping files (JSON).

Signature file::

    {"name": "pi",
     "ops": [{"name": "par", "arity": [0, 0]},
             {"name": "set", "family": {"kind": "powers"}}],
     "quotient": [{"kind": "commutative", "op": "par"}]}

Mapping file::

    {"src": "LJ", "dst": "LL", "map": {"neg": "(imp (bang #1) zero)", ...}}

A signature reference (``src``/``dst``) is a builtin name (``LC``, ``LJ``,
``LL``) or a path, relative to the mapping file.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import BindsynError, SignatureError
from .quotient import RULE_KINDS, PresentableSignature, make_rule, presentable
from .signature import BUILTIN_SIGNATURES, AlgebraicSignature, FamilySchema, OperationDecl
from .stdmodels import Template, translation_model

BUILTIN_FAMILY_KINDS = ("powers", "binder-seq", "esubst", "fixpoint")


class SchemaError(BindsynError):
    """A signature or mapping file does not have the expected shape."""


@dataclass(frozen=True)
class SigFile:
    signature: AlgebraicSignature
    presentation: PresentableSignature
    source: str = "<memory>"

    @property
    def quotiented(self) -> bool:
        return bool(self.presentation.normalizer.rules)


def _nat(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def _op_decl(entry, where):
    if not isinstance(entry, dict) or not isinstance(entry.get("name"), str) or not entry["name"]:
        raise SchemaError(f"{where}: each op needs a non-empty string 'name'")
    name = entry["name"]
    if any(c in name for c in "()@# \t\n,"):
        raise SchemaError(f"{where}: op name {name!r} contains reserved characters")
    has_arity, has_family = "arity" in entry, "family" in entry
    if has_arity == has_family:
        raise SchemaError(f"{where}: op {name!r} needs exactly one of 'arity' or 'family'")
    extra = set(entry) - {"name", "arity", "family"}
    if extra:
        raise SchemaError(f"{where}: op {name!r} has unknown keys {sorted(extra)}")
    if has_arity:
        arity = entry["arity"]
        if not isinstance(arity, list) or not all(_nat(s) for s in arity):
            raise SchemaError(f"{where}: arity of {name!r} must be a list of naturals")
        return OperationDecl(name, tuple(arity))
    fam = entry["family"]
    if not isinstance(fam, dict) or fam.get("kind") not in BUILTIN_FAMILY_KINDS:
        raise SchemaError(f"{where}: family of {name!r} needs 'kind' in {list(BUILTIN_FAMILY_KINDS)}")
    return OperationDecl(name, family=FamilySchema(fam["kind"]))


def parse_signature(data, source: str = "<memory>") -> SigFile:
    if not isinstance(data, dict):
        raise SchemaError(f"{source}: top level must be an object")
    extra = set(data) - {"name", "ops", "quotient"}
    if extra:
        raise SchemaError(f"{source}: unknown keys {sorted(extra)}")
    name = data.get("name", Path(source).stem)
    if not isinstance(name, str):
        raise SchemaError(f"{source}: 'name' must be a string")
    ops = data.get("ops")
    if not isinstance(ops, list):
        raise SchemaError(f"{source}: 'ops' must be a list")
    decls = [_op_decl(e, source) for e in ops]
    try:
        sig = AlgebraicSignature(tuple(decls), name)
    except SignatureError as e:
        raise SchemaError(f"{source}: {e}") from None
    clauses = data.get("quotient", [])
    if not isinstance(clauses, list):
        raise SchemaError(f"{source}: 'quotient' must be a list")
    rules = []
    for c in clauses:
        if not isinstance(c, dict) or set(c) != {"kind", "op"}:
            raise SchemaError(f"{source}: quotient clauses are {{'kind': ..., 'op': ...}}")
        if c["kind"] not in RULE_KINDS:
            raise SchemaError(f"{source}: unknown quotient kind {c['kind']!r}")
        if c["op"] not in sig:
            raise SchemaError(f"{source}: quotient refers to unknown op {c['op']!r}")
        rule = make_rule(c["kind"], c["op"])
        try:
            rule.validate(sig)
        except BindsynError as e:
            raise SchemaError(f"{source}: {e}") from None
        rules.append(rule)
    return SigFile(sig, presentable(sig, rules), source)


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def load_signature(ref, base: Path | None = None) -> SigFile:
    """Load a signature file, or a builtin signature by name."""
    ref = str(ref)
    if ref in BUILTIN_SIGNATURES:
        sig = BUILTIN_SIGNATURES[ref]
        return SigFile(sig, presentable(sig), ref)
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    return parse_signature(_read_json(path), str(path))


@dataclass(frozen=True)
class MappingFile:
    src: SigFile
    dst: SigFile
    templates: dict

    def model(self):
        target = self.dst.presentation if self.dst.quotiented else self.dst.signature
        return translation_model(self.src.signature, target, self.templates)


def parse_mapping(data, source: str = "<memory>", base: Path | None = None) -> MappingFile:
    if not isinstance(data, dict) or set(data) != {"src", "dst", "map"}:
        raise SchemaError(f"{source}: mapping files have exactly the keys 'src', 'dst', 'map'")
    if not isinstance(data["map"], dict):
        raise SchemaError(f"{source}: 'map' must be an object")
    src = load_signature(data["src"], base)
    dst = load_signature(data["dst"], base)
    missing = [o for o in src.signature.names if o not in data["map"]]
    unknown = [o for o in data["map"] if o not in src.signature]
    if missing or unknown:
        raise SchemaError(f"{source}: map must cover the source ops exactly (missing {missing}, unknown {unknown})")
    templates = {}
    for op, text in data["map"].items():
        d = src.signature[op]
        if d.is_family:
            raise SchemaError(f"{source}: family {op!r} cannot be translated by a single template")
        if not isinstance(text, str):
            raise SchemaError(f"{source}: template for {op!r} must be a string")
        # arity and scope problems in templates propagate as such
        templates[op] = Template.parse(text, dst.signature, d.arity)
    return MappingFile(src, dst, templates)


def load_mapping(path) -> MappingFile:
    path = Path(path)
    return parse_mapping(_read_json(path), str(path), path.parent)


def fixture_path(name: str) -> Path:
    """Path of a bundled fixture file, e.g. ``fixture_path("pi.sig.json")``."""
    from importlib.resources import files

    return Path(str(files("bindsyn") / "fixtures" / name))
