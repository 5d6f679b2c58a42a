import json

import jsonschema
import pytest

from hopfgal import __version__
from hopfgal.builders import circle_hopf, dual_group_algebra, group_algebra
from hopfgal.errors import InputError
from hopfgal.extensions import can_full, coinvariants
from hopfgal.fields import GF, QQ, QQi
from hopfgal.groups import symmetric3
from hopfgal.hopf import verify_structure
from hopfgal.jsonio import (
    build_ref, dump_hopf, load_comodule_algebra, load_group, load_hopf, load_json,
    load_module_algebra, subspace_json,
)
from hopfgal.linalg import span
from hopfgal.report import SCHEMA, certificate, dumps, make_report, schema_text, validate

GRADED = {
    "field": "Q", "dim": 2,
    "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
    "unit": ["1", "0"],
    "hopf": {"builder": "group_algebra", "group": "Z2"},
    "coaction": [[0, 0, 0, "1"], [1, 1, 1, "1"]],
}


def same_hopf(a, b):
    return (a.dim == b.dim and a.alg.mult == b.alg.mult and a.coalg.comult == b.coalg.comult
            and a.antipode == b.antipode and a.alg.unit == b.alg.unit)


@pytest.mark.parametrize("h", [group_algebra(symmetric3()), dual_group_algebra(symmetric3(), GF(5)),
                               circle_hopf(QQi)])
def test_hopf_round_trip(h):
    text = json.dumps(dump_hopf(h))
    back = load_hopf(json.loads(text))
    assert same_hopf(h, back)
    assert verify_structure("hopf", back).ok


def test_graded_comodule_from_json():
    a = load_comodule_algebra(GRADED)
    assert coinvariants(a) == span(QQ, 2, [{0: QQ.one}])
    assert not can_full(a).bijective  # x^2 = 0
    squared = dict(GRADED, mult=GRADED["mult"] + [[1, 1, 0, "1"]])
    assert can_full(load_comodule_algebra(squared)).bijective


def test_module_algebra_from_json():
    obj = {"algebra": {"dim": 2, "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "2"]],
                       "unit": ["1", "0"]},
           "hopf": {"builder": "group_algebra", "group": "Z2"},
           "action": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 0, "1"], [1, 1, 1, "-1"]]}
    m = load_module_algebra(obj)
    assert m.act({1: QQ.one}, {1: QQ.one}) == {1: -QQ.one}


def test_builder_refs():
    assert build_ref({"builder": "circle_hopf", "field": "Q"}).field == QQ
    assert build_ref({"builder": "dual_group_algebra", "group": "V4", "field": "Fp:3"}).dim == 4
    fe = build_ref({"builder": "finite_field_ext", "p": 2, "poly": [1, 1, 1]})
    assert fe.e.dim == 2
    assert load_group({"order": 2, "mult": [[0, 1], [1, 0]]}).order == 2


@pytest.mark.parametrize("obj", [
    {"dim": 0, "mult": [], "unit": []},
    {"dim": 2, "mult": [[0, 0, 5, "1"]], "unit": ["1", "0"]},
    {"dim": 1, "mult": [[0, 0, 0, "x"]], "unit": ["1"]},
    {"dim": 1, "mult": [[0, 0, 0, "1"]]},
    {"dim": 1, "mult": [[0, 0, 0, True]], "unit": ["1"]},
    {"builder": "nope"},
    {"builder": "finite_field_ext", "p": 2, "poly": [1, 0, 1]},
    {"dim": 1, "field": "Q(sqrt2)", "mult": [], "unit": ["1"]},
])
def test_bad_inputs_raise_input_error(obj):
    with pytest.raises(InputError):
        if "builder" in obj:
            build_ref(obj)
        else:
            load_hopf(dict(obj, comult=[[0, 0, 0, "1"]], counit=["1"], antipode=[[0, 0, "1"]]))


def test_unknown_group_and_bad_table():
    with pytest.raises(InputError):
        load_group("Q8")
    with pytest.raises(InputError):
        load_group({"order": 3, "mult": [[0, 1], [1, 0]]})


def test_unreadable_files(tmp_path):
    with pytest.raises(InputError):
        load_json(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_json(str(bad))


def test_subspace_json_is_rref():
    s = span(QQ, 3, [{0: QQ(2), 1: QQ(2)}, {2: QQ(3)}])
    assert subspace_json(s) == {"dim": 2, "ambient": 3, "rref": [["1", "1", "0"], ["0", "0", "1"]]}


def test_schema_names_the_certificate_fields():
    props = SCHEMA["$defs"]["certificate"]["properties"]
    for key in ("rank", "bijective", "closed", "witness"):
        assert key in props
    jsonschema.Draft202012Validator.check_schema(json.loads(schema_text()))
    assert SCHEMA["properties"]["schema_version"]["const"] == __version__


def test_negative_certificates_need_witnesses():
    rep = make_report("verify", [certificate("ok", True), certificate("bad", False, {"x": 1})], {})
    assert rep["ok"] is False and rep["certificates"][1]["witness"] == {"x": 1}
    assert certificate("bad", False)["witness"] == {"reason": "bad"}
    broken = json.loads(dumps(rep))
    del broken["certificates"][1]["witness"]
    with pytest.raises(jsonschema.ValidationError):
        validate(broken)


def test_report_rejects_unknown_fields():
    rep = make_report("verify", [certificate("ok", True, rank=3)], {"n": 1})
    rep["extra"] = 1
    with pytest.raises(jsonschema.ValidationError):
        validate(rep)
    rep = make_report("verify", [certificate("ok", True, rank=3)], {"n": 1})
    rep["schema_version"] = "0.0.0"
    with pytest.raises(jsonschema.ValidationError):
        validate(rep)
