import json

import pytest

from bindsyn.errors import ArityError, ScopeError
from bindsyn.sigfile import (
    SchemaError,
    fixture_path,
    load_mapping,
    load_signature,
    parse_mapping,
    parse_signature,
)
from bindsyn.signature import SIGMA_LC, SIGMA_LJ


def _sig(ops, quotient=None, name="s"):
    data = {"name": name, "ops": ops}
    if quotient is not None:
        data["quotient"] = quotient
    return data


def test_builtin_and_fixture_signatures():
    assert load_signature("LC").signature == SIGMA_LC
    assert not load_signature("LC").quotiented
    pi = load_signature(fixture_path("pi.sig.json"))
    assert pi.signature.names == ["nil", "par", "nu", "out", "in"]
    assert pi.signature.arity("in") == (0, 1)
    assert pi.quotiented
    q = load_signature(fixture_path("quotients.sig.json"))
    assert len(q.presentation.normalizer.rules) == 6


def test_name_defaults_to_file_stem(tmp_path):
    f = tmp_path / "tiny.sig.json"
    f.write_text(json.dumps({"ops": [{"name": "a", "arity": []}]}))
    assert load_signature(f).signature.name == "tiny.sig"


def test_family_declarations():
    sf = parse_signature(_sig([{"name": "set", "family": {"kind": "powers"}}], [{"kind": "finset", "op": "set"}]))
    assert sf.signature["set"].is_family


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"name": "s"},
        {"name": 3, "ops": []},
        {"name": "s", "ops": {}},
        {"name": "s", "ops": [], "extra": 1},
        _sig([{"name": "a"}]),
        _sig([{"name": "a", "arity": [0], "family": {"kind": "powers"}}]),
        _sig([{"name": "a", "arity": [-1]}]),
        _sig([{"name": "a", "arity": [True]}]),
        _sig([{"name": "a(b", "arity": []}]),
        _sig([{"name": "a", "arity": [], "doc": "x"}]),
        _sig([{"name": "a", "family": {"kind": "streams"}}]),
        _sig([{"name": "a", "arity": []}, {"name": "a", "arity": [0]}]),
        _sig([{"name": "a", "arity": [0, 0]}], {"kind": "commutative", "op": "a"}),
        _sig([{"name": "a", "arity": [0, 0]}], [{"kind": "idempotent", "op": "a"}]),
        _sig([{"name": "a", "arity": [0, 0]}], [{"kind": "commutative", "op": "b"}]),
        _sig([{"name": "a", "arity": [0, 1]}], [{"kind": "commutative", "op": "a"}]),
        _sig([{"name": "a", "arity": [0, 0]}], [{"kind": "finset", "op": "a"}]),
    ],
)
def test_schema_errors(data):
    with pytest.raises(SchemaError):
        parse_signature(data)


def test_file_errors(tmp_path):
    with pytest.raises(SchemaError):
        load_signature(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{ nope")
    with pytest.raises(SchemaError, match="invalid JSON"):
        load_signature(bad)


def test_builtin_mapping():
    mf = load_mapping(fixture_path("lj_to_ll.map.json"))
    assert mf.src.signature == SIGMA_LJ
    assert set(mf.templates) == set(SIGMA_LJ.names)


def test_mapping_relative_paths(tmp_path):
    (tmp_path / "a.sig.json").write_text(json.dumps(_sig([{"name": "f", "arity": [1]}])))
    (tmp_path / "b.sig.json").write_text(json.dumps(_sig([{"name": "g", "arity": [1]}, {"name": "k", "arity": []}])))
    m = tmp_path / "m.map.json"
    m.write_text(json.dumps({"src": "a.sig.json", "dst": "b.sig.json", "map": {"f": "(g (x) (#1 x))"}}))
    mf = load_mapping(m)
    assert mf.model().sig.names == ["f"]


def test_mapping_coverage_and_shape():
    full = json.loads(fixture_path("lj_to_ll.map.json").read_text())
    partial = {**full, "map": {k: v for k, v in full["map"].items() if k != "neg"}}
    with pytest.raises(SchemaError, match="missing"):
        parse_mapping(partial)
    with pytest.raises(SchemaError, match="unknown"):
        parse_mapping({**full, "map": {**full["map"], "nope": "zero"}})
    with pytest.raises(SchemaError):
        parse_mapping({"src": "LJ", "dst": "LL"})
    with pytest.raises(SchemaError):
        parse_mapping({**full, "map": {**full["map"], "neg": 3}})


def test_mapping_template_errors_keep_their_kind():
    full = json.loads(fixture_path("lj_to_ll.map.json").read_text())
    with pytest.raises(ArityError):
        parse_mapping({**full, "map": {**full["map"], "neg": "(with #1 #2)"}})
    with pytest.raises(ScopeError):
        parse_mapping({**full, "map": {**full["map"], "neg": "(bang y)"}})
