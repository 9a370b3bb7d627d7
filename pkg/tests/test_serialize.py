import json
import os

import pytest

from derfree import serialize
from derfree.actions import verify_certificate
from derfree.field import GF, GF101, QQ, field_from_config, field_to_config
from derfree.fixtures import build_ex23, build_ex55, build_ex56
from derfree.modules import free_module
from derfree.monomial import monomial_algebra
from derfree.serialize import LoadError
from derfree.weyl import exterior_model


def test_field_config_round_trip():
    for f in (GF101, GF(7), QQ):
        assert field_from_config(field_to_config(f)) == f


def test_algebra_round_trip(any_field):
    b = build_ex55(any_field)
    doc = serialize.algebra_to_dict(b.A)
    back = serialize.algebra_from_dict(doc, any_field)
    assert back == b.A
    gdoc = serialize.algebra_to_dict(build_ex23(any_field).A)
    gback = serialize.algebra_from_dict(gdoc, any_field)
    assert gback == build_ex23(any_field).A


def test_complex_round_trip(any_field):
    for builder in (build_ex55, build_ex56):
        F = builder(any_field).F
        back = serialize.complex_from_dict(serialize.complex_to_dict(F), any_field)
        assert back == F
    F23 = build_ex23(any_field).F
    back = serialize.complex_from_dict(serialize.complex_to_dict(F23), any_field)
    assert back == F23


def test_certificate_round_trip():
    b = build_ex55(GF101)
    doc = serialize.certificate_to_dict(b.certificate, b.F)
    cert, F = serialize.certificate_from_dict(doc, GF101)
    assert F == b.F
    assert verify_certificate(F, cert).verified
    assert cert.relations[0][0] == "u^2 - x"


def test_module_round_trip():
    B = monomial_algebra(GF101, ["u"], ["u^4"], 8).artinize()
    M = free_module(B, 2)
    doc = serialize.module_to_dict(M)
    back = serialize.module_from_dict(doc, GF101)
    assert back == M


def test_rep_round_trip():
    rep = exterior_model(GF101, 3, 2)
    back = serialize.rep_from_dict(serialize.rep_to_dict(rep), GF101)
    assert back == rep


def test_dumps_is_canonical():
    doc = {"b": 1, "a": [3, 2]}
    assert serialize.dumps(doc) == serialize.dumps({"a": [3, 2], "b": 1})


def test_malformed_document_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "artinian", ', encoding="utf-8")
    with pytest.raises(LoadError) as ei:
        serialize.load(str(p))
    assert "line" in str(ei.value)


def test_field_mismatch_is_explicit():
    doc = {"field": {"field": "rational"}}
    with pytest.raises(LoadError):
        serialize.document_field(doc, GF101)
    assert serialize.document_field(doc, None) == QQ


def test_path_references_resolve(tmp_path):
    b = build_ex55(GF101)
    serialize.save(str(tmp_path / "A.json"), serialize.algebra_to_dict(b.A))
    fdoc = serialize.complex_to_dict(b.F, inline_algebra=False)
    fdoc["algebra"] = "A.json"
    serialize.save(str(tmp_path / "F.json"), fdoc)
    loaded = serialize.complex_from_dict(serialize.load(str(tmp_path / "F.json")),
                                         GF101, base_dir=str(tmp_path))
    assert loaded == b.F


def test_save_load_file_identity(tmp_path):
    b = build_ex56(GF101)
    path = str(tmp_path / "c.json")
    serialize.save(path, serialize.complex_to_dict(b.F))
    assert serialize.complex_from_dict(serialize.load(path), GF101) == b.F
    # byte stability
    first = open(path, "rb").read()
    serialize.save(path, serialize.complex_to_dict(b.F))
    assert open(path, "rb").read() == first
