import json

import numpy as np
import pytest

from lvrough import oracle
from lvrough.errors import OperatorSpaceTooLarge, ParseError
from lvrough.lattice import make_goedel_chain, make_lukasiewicz_chain
from lvrough.oracle import (FIXTURES, Budget, InstanceSpec, classical_degeneracy_suite, fixture,
                            operator_space_size, rows_for, run, sample_operators, verify_soundness,
                            verify_completeness_exhaustive, verify_completeness_sampled)
from lvrough.universe import Universe


def test_rows():
    rows = rows_for()
    assert len(rows) == 52
    assert len({r.id for r in rows}) == 52
    assert {r.id for r in rows_for(["HTS"])} == {"HTS[TS]", "HTS[SE]", "HTS[TSE]"}


def test_instance_roundtrip():
    inst = fixture("luk2x2")
    again = InstanceSpec.from_dict(json.loads(json.dumps(inst.to_dict())))
    assert again.to_dict() == inst.to_dict()
    with pytest.raises(ParseError):
        InstanceSpec.from_dict({"lattice": {"kind": "boolean"}})
    with pytest.raises(ParseError):
        InstanceSpec.from_dict({**inst.to_dict(), "scope": ["nope"]})
    with pytest.raises(ParseError):
        Budget(max_relations=-1)
    with pytest.raises(ParseError):
        fixture("nope")


def test_soundness_goedel_skips_lower():
    res = verify_soundness(fixture("goedel2x2"))
    up = [r for r in res if r.family == "upper"]
    lo = [r for r in res if r.family == "lower"]
    assert all(r.status == "confirmed" for r in up)
    assert all(r.status == "skipped" and r.reason == "requires-mv" for r in lo)
    assert sum(r.positives for r in up) > 0


def test_exhaustive_luk2x1():
    res = verify_completeness_exhaustive(fixture("luk2x1"))
    assert len(res) == 52
    assert all(r.status == "confirmed" and r.cases_checked == 27 for r in res)
    general = next(r for r in res if r.row == "H[general]")
    # a single point: 3 relations, 3 induced tables
    assert general.positives == 3


def test_space_cap():
    inst = fixture("luk2x2")
    assert operator_space_size(inst.build()) == 9 ** 9
    with pytest.raises(OperatorSpaceTooLarge):
        verify_completeness_exhaustive(inst)
    M = run(inst)
    assert any(r.reason and r.reason.startswith("operator-space-too-large") for r in M.results)


def test_sampling_is_seeded():
    U = fixture("luk2x2").build()
    a = sample_operators(U, 5, 400)
    b = sample_operators(U, 5, 400)
    c = sample_operators(U, 6, 400)
    assert a.shape == (400, 9) and (a == b).all() and not (a == c).all()


def test_sampled_completeness_small():
    res = verify_completeness_sampled(fixture("luk2x2"), trials=2000, seed=1)
    assert all(r.status == "confirmed" for r in res)
    assert all(r.positives > 0 for r in res)


def test_matrix_json_is_stable():
    a = run(fixture("luk2x1")).to_json()
    b = run(fixture("luk2x1")).to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["schema_version"] == 1 and doc["summary"]["refuted"] == 0


def test_parallel_matches_serial():
    inst = fixture("boolean2x")
    inst = InstanceSpec(inst.name, inst.lattice, inst.universe, ["HR", "HTS"], inst.budget)
    serial = [r.to_dict() for r in verify_completeness_exhaustive(inst, jobs=1)]
    oracle_chunk = oracle.CHUNK
    try:
        oracle.CHUNK = 64
        par = [r.to_dict() for r in verify_completeness_exhaustive(inst, jobs=2)]
    finally:
        oracle.CHUNK = oracle_chunk
    assert serial == par


def test_wrong_row_is_refuted(monkeypatch):
    # pair the symmetric axiom with the wrong property set: both directions must notice
    monkeypatch.setattr(oracle, "table_rows", lambda fam: (("R", "HS" if fam == "upper" else "LS"),))
    base = fixture("boolean2x")
    inst = InstanceSpec(base.name, base.lattice, base.universe, ["HS", "LS"], base.budget)
    M = run(inst)
    refuted = {(r.direction, r.family) for r in M.refuted}
    assert refuted == {("soundness", "upper"), ("soundness", "lower"),
                       ("completeness", "upper"), ("completeness", "lower")}
    w = M.refuted[0].witness
    assert "relation" in w and w["axiom"] == "HS"
    assert not M.ok


@pytest.mark.parametrize("lat", [make_lukasiewicz_chain(2), make_goedel_chain(3)], ids=repr)
def test_degeneracy_small(lat):
    rep = classical_degeneracy_suite(Universe.constant(lat, "ab"))
    assert rep.ok, rep.mismatches[:3]
    assert rep.cases["upper"] > 0


def test_degeneracy_needs_constant_one():
    with pytest.raises(ParseError):
        classical_degeneracy_suite(Universe.constant(make_lukasiewicz_chain(2), "ab", 1))


def test_fixture_catalogue():
    assert set(FIXTURES) == {"boolean2x", "luk2x1", "luk2x2", "goedel2x2"}
