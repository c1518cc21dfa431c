import json

import pytest

import coherence

GENUS2 = "gens a b c d\nrel a b a- b- c d c- d-\n"


def test_analyze_genus2():
    report = coherence.analyze(GENUS2)
    assert report["c_value"] == 8
    assert report["t_value"] == 8
    assert report["certified_dehn"]
    assert report["exponents"] == [("a b a- b- c d c- d-", 1)]


def test_unbounded_values_are_none():
    report = coherence.analyze("gens x\nrel x^4\n")
    assert report["c_value"] is None


def test_certificate_round_trip():
    coherent, cert = coherence.certify(GENUS2, "dehn")
    assert coherent
    doc = json.loads(cert)
    assert doc["multiplicities"] == {"r0": 3}
    assert doc["digest"] == coherence.digest(GENUS2)
    assert coherence.verify(GENUS2, cert)
    doc["multiplicities"]["r0"] = 2
    assert not coherence.verify(GENUS2, json.dumps(doc))


def test_inconclusive_power():
    coherent, cert = coherence.certify("gens x y\nrel x^5 y x^5 y\n", "power")
    assert not coherent
    assert json.loads(cert)["violation"]["relators"] == ["r0"]


def test_matching_violation():
    out = coherence.matching(1, 4, [(0, v) for v in range(4)], [5])
    assert out == {"subset": [0], "neighbourhood": [0, 1, 2, 3]}
    assert coherence.matching(1, 4, [(0, v) for v in range(4)], [4])["matching"] == [(0, v) for v in range(4)]


def test_word_problem():
    assert coherence.word_problem(GENUS2, "a b a- b- c d c- d-")["trivial"]
    assert not coherence.word_problem(GENUS2, "a b")["trivial"]


def test_missing_weight():
    torus = "vertex v\nedge a v v\nedge b v v\nface sq a b a- b-\n"
    assert coherence.missing_weight(torus, "edge-cell a\n") == 2


def test_subgroup():
    out = coherence.subgroup("gens x\nrel x^4\n", ["x"], bound=6)
    assert out["presentation"] == "gens t1\nrel t1^4\n"
    assert out["trajectory"] == [1, 0]
    assert json.loads(out["log"])["status"] == "stable-at-bound"


def test_errors():
    with pytest.raises(ValueError):
        coherence.normalize("gens a\nrel a a-\n")
    with pytest.raises(RuntimeError):
        coherence.certify("gens a b c d r s\nrel a b a- r\nrel r- b- c s\nrel s- d c- d-\n", "dehn")
