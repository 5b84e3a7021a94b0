import json
import os

import numpy as np
import pytest

from tracelab import builtin_presets, load_ring_doc, parse_ring_doc
from tracelab.errors import ParseError, ValidationError
from tracelab.linalg import Field
from tracelab.ringdoc import dump_ring_doc, is_preset_name, parse_field, preset_doc

HERE = os.path.dirname(__file__)
T2 = os.path.join(HERE, "..", "rings", "t2_gf5.json")


def dual_numbers_doc():
    return {
        "field": "GF(3)",
        "algebra": {
            "dim": 2,
            "basis_names": ["1", "x"],
            "structure_constants": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
            "unit": [1, 0],
        },
        "modules": {"k": {"dim": 1, "action": [[[1]], [[0]]]}},
        "submodules": {"m": {"ambient": "R", "vectors": [[0, 1]]}},
    }


def test_preset_docs():
    doc = load_ring_doc("dual_numbers:2")
    assert doc.algebra.dim == 2 and doc.field == Field.prime(2)
    doc = load_ring_doc("fat_point:2")
    assert doc.algebra.dim == 3
    assert {"R", "S0", "E0"} <= set(doc.modules)
    assert {"rad", "soc", "(x)", "(y)"} <= set(doc.submodules)


def test_every_listed_preset_loads():
    for name in builtin_presets():
        assert is_preset_name(name)
        assert load_ring_doc(name).algebra.dim > 0


def test_preset_names():
    assert is_preset_name("ci4:7") and is_preset_name("ss2:Q") and is_preset_name("jordan3")
    assert not is_preset_name("nope:2") and not is_preset_name("ci4:x")
    with pytest.raises(ParseError):
        load_ring_doc("ci4:4")  # 4 is not prime


def test_parse_field_variants():
    assert parse_field(2) == Field.prime(2)
    assert parse_field("GF(7)") == Field.prime(7)
    assert parse_field("5") == Field.prime(5)
    assert parse_field("Q") == Field.rational() == parse_field("QQ")
    for bad in ["GF(6)", "R", True, 2.5]:
        with pytest.raises(ParseError):
            parse_field(bad)


def test_parse_document():
    doc = parse_ring_doc(dual_numbers_doc(), "dn3")
    assert doc.field == Field.prime(3)
    assert doc.module("k").dim == 1
    assert doc.submodule("m").dim == 1
    assert doc.module("m").dim == 1  # submodules double as modules
    with pytest.raises(KeyError):
        doc.module("zzz")


def test_rational_scalars():
    d = dual_numbers_doc()
    d["field"] = "Q"
    d["modules"]["k2"] = {"dim": 1, "action": [[["2/2"]], [[0]]]}
    doc = parse_ring_doc(d)
    assert doc.module("k2").dim == 1


def test_malformed_constants_report_index():
    d = dual_numbers_doc()
    d["algebra"]["structure_constants"][1][0] = [0]
    with pytest.raises(ParseError, match=r"structure_constants\[1\]\[0\]: expected 2 entries, got 1"):
        parse_ring_doc(d)
    d = dual_numbers_doc()
    d["algebra"]["structure_constants"][0][1][1] = 0.5
    with pytest.raises(ParseError, match=r"structure_constants\[0\]\[1\]\[1\]"):
        parse_ring_doc(d)


def test_missing_and_unknown_keys():
    d = dual_numbers_doc()
    del d["algebra"]["unit"]
    with pytest.raises(ParseError, match="missing key 'unit'"):
        parse_ring_doc(d)
    d = dual_numbers_doc()
    d["extra"] = 1
    with pytest.raises(ParseError, match="unknown keys"):
        parse_ring_doc(d)
    with pytest.raises(ParseError):
        parse_ring_doc([1, 2])


def test_reserved_module_name():
    d = dual_numbers_doc()
    d["modules"]["R"] = d["modules"]["k"]
    with pytest.raises(ParseError, match="reserved"):
        parse_ring_doc(d)


def test_algebra_violations_stop_before_modules():
    d = dual_numbers_doc()
    d["algebra"]["unit"] = [0, 1]
    d["modules"]["bad"] = {"dim": 1, "action": [[[1]], [[1]]]}
    with pytest.raises(ValidationError) as exc:
        parse_ring_doc(d)
    assert exc.value.violations and all(v.startswith("algebra: unit fails") for v in exc.value.violations)


def test_module_and_submodule_violations():
    d = dual_numbers_doc()
    d["modules"]["bad"] = {"dim": 1, "action": [[[1]], [[1]]]}  # x acts invertibly but x^2 = 0
    d["submodules"]["notsub"] = {"ambient": "R", "vectors": [[1, 0]]}
    d["submodules"]["orphan"] = {"ambient": "nothing", "vectors": []}
    with pytest.raises(ValidationError) as exc:
        parse_ring_doc(d)
    msgs = exc.value.violations
    assert any(m.startswith("modules.bad:") for m in msgs)
    assert any(m.startswith("submodules.notsub:") for m in msgs)
    assert any(m.startswith("submodules.orphan.ambient") for m in msgs)


def test_json_roundtrip():
    doc = parse_ring_doc(dual_numbers_doc())
    again = parse_ring_doc(json.loads(json.dumps(dump_ring_doc(doc))))
    assert again.algebra == doc.algebra
    assert set(again.names()) == set(doc.names())
    for name in doc.modules:
        assert all(np.all(x == y) for x, y in zip(again.module(name).action, doc.module(name).action))
    assert again.submodule("m").space == doc.submodule("m").space


def test_preset_roundtrip():
    doc = preset_doc("mat2:3")
    again = parse_ring_doc(dump_ring_doc(doc))
    assert again.algebra == doc.algebra
    assert again.algebra.supplied_radical.dim == 0


def test_load_from_file(tmp_path):
    doc = load_ring_doc(T2)
    assert doc.algebra.dim == 3 and not doc.algebra.is_commutative
    p = tmp_path / "dn.json"
    p.write_text(json.dumps(dual_numbers_doc()))
    assert load_ring_doc(str(p)).name == "dn"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError, match="invalid JSON at line 1"):
        load_ring_doc(str(bad))
    with pytest.raises(ParseError, match="no such file"):
        load_ring_doc(str(tmp_path / "missing.json"))
