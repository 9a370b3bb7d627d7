import json
import os

import pytest

from derfree import serialize
from derfree.cli import main
from derfree.field import GF101
from derfree.fixtures import build_ex55


@pytest.fixture
def ex55_files(tmp_path):
    b = build_ex55(GF101)
    paths = {}
    paths["A"] = str(tmp_path / "A.json")
    serialize.save(paths["A"], serialize.algebra_to_dict(b.A))
    paths["F"] = str(tmp_path / "F.json")
    serialize.save(paths["F"], serialize.complex_to_dict(b.F))
    paths["cert"] = str(tmp_path / "cert.json")
    serialize.save(paths["cert"], serialize.certificate_to_dict(b.certificate, b.F))
    paths["bundle"] = str(tmp_path / "bundle.json")
    serialize.save(paths["bundle"], {
        "name": "ex5.5", "algebra_A": "A.json",
        "algebra_B": serialize.algebra_to_dict(b.B),
        "images": {"x": "u^2", "y": "u^3"},
        "complex": "F.json", "certificate": "cert.json"})
    return paths


def test_validate_algebra(ex55_files, capsys):
    assert main(["validate", ex55_files["A"]]) == 0
    assert "valid" in capsys.readouterr().out


def test_validate_complex_and_certificate(ex55_files):
    assert main(["validate", ex55_files["F"]]) == 0
    assert main(["validate", ex55_files["cert"]]) == 0


def test_betti_and_homology(ex55_files, capsys):
    assert main(["betti", ex55_files["F"]]) == 0
    out = capsys.readouterr().out
    assert "[2, 2]" in out and "proj_dim: 1" in out
    assert main(["homology", ex55_files["F"]]) == 0


def test_annihilator_and_decompose_exit_codes(ex55_files, capsys):
    assert main(["annihilator", ex55_files["F"]]) == 0
    # decomposition is obstructed on this fixture: exit 1
    assert main(["decompose", ex55_files["F"]]) == 1


def test_check_theorem_on_bundle(ex55_files, capsys):
    assert main(["check", "--theorem", "thm51", ex55_files["bundle"]]) == 0
    out = capsys.readouterr().out
    assert "thm51: pass" in out


def test_check_prop44_on_bundle(ex55_files, capsys):
    assert main(["check", "--theorem", "prop44", "--power", "0",
                 ex55_files["bundle"]]) == 0


def test_check_fixture_thm41(capsys):
    assert main(["check", "--theorem", "thm41", "--fixture", "nagata"]) == 0


def test_paper_examples_single(capsys, tmp_path):
    out_json = str(tmp_path / "rep.json")
    assert main(["--json", out_json, "paper-examples", "--only", "ex5.5"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] ex5.5" in out
    data = json.load(open(out_json))
    assert data["all_passed"] is True


def test_koszul_emits_complex(tmp_path, ex55_files):
    out = str(tmp_path / "K.json")
    assert main(["koszul", "--algebra", ex55_files["A"], "--vars", "x,y",
                 "--out", out]) == 0
    doc = serialize.load(out)
    assert doc["ranks"] == [1, 2, 1]
    K = serialize.complex_from_dict(doc, GF101)
    assert K.validate() == []


def test_homotopy_solve_command(tmp_path, ex55_files):
    b = build_ex55(GF101)
    U = b.certificate.generator("u")
    U3 = U.compose(U).compose(U)
    from derfree.complexes import scalar_endo
    f = U3.sub(scalar_endo(b.F, b.A.parse_element("y")))
    doc = {"complex": serialize.complex_to_dict(b.F)}
    doc.update(serialize.chain_map_to_dict(f))
    p = str(tmp_path / "endo.json")
    serialize.save(p, doc)
    assert main(["homotopy", p]) == 0
    # an unsolvable one: x*id
    g = scalar_endo(b.F, b.A.parse_element("x"))
    doc2 = {"complex": serialize.complex_to_dict(b.F)}
    doc2.update(serialize.chain_map_to_dict(g))
    p2 = str(tmp_path / "endo2.json")
    serialize.save(p2, doc2)
    assert main(["homotopy", p2]) == 1


def test_verify_action_command(ex55_files):
    assert main(["verify-action", ex55_files["cert"]]) == 0


def test_freeness_command(tmp_path):
    from derfree.modules import free_module
    from derfree.monomial import monomial_algebra
    B = monomial_algebra(GF101, ["u"], ["u^4"], 8).artinize()
    M = free_module(B, 2)
    p = str(tmp_path / "mod.json")
    serialize.save(p, serialize.module_to_dict(M))
    assert main(["freeness", p]) == 0


def test_malformed_input_exits_2(tmp_path, capsys):
    p = str(tmp_path / "broken.json")
    with open(p, "w") as fh:
        fh.write("{ not json")
    assert main(["validate", p]) == 2
    assert "error:" in capsys.readouterr().err


def test_field_mismatch_loading_rational_fixture_under_gfp(tmp_path, capsys):
    doc = {"field": {"field": "rational"}, "kind": "monomial_quotient",
           "vars": ["x"], "ideal": ["x^2"], "truncation": 4}
    p = str(tmp_path / "alg.json")
    serialize.save(p, doc)
    from derfree.serialize import document_field, LoadError
    with pytest.raises(LoadError):
        document_field(serialize.load(p), GF101)


def test_paper_examples_all_and_determinism(tmp_path, capsys):
    j1 = str(tmp_path / "r1.json")
    j2 = str(tmp_path / "r2.json")
    assert main(["--json", j1, "paper-examples"]) == 0
    assert main(["--json", j2, "paper-examples"]) == 0
    assert open(j1, "rb").read() == open(j2, "rb").read()


def test_exported_fixture_bundles_run_through_check(tmp_path):
    from derfree.fixtures import export_fixture
    for name, theorem, expected in (("ex5.5", "thm51", 0), ("ex5.6", "thm51", 0),
                                    ("ex2.3", "lemma32", 0)):
        bundle = export_fixture(name, str(tmp_path / name.replace(".", "_")))
        assert main(["check", "--theorem", theorem, bundle]) == expected


def test_bundle_field_mismatch_is_an_input_error(tmp_path, capsys):
    from derfree.fixtures import export_fixture
    from derfree.field import QQ
    bundle = export_fixture("ex5.5", str(tmp_path / "qq"), field=QQ)
    assert main(["check", "--theorem", "thm51", bundle]) == 2
    assert "field mismatch" in capsys.readouterr().err
