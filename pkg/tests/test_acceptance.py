"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import sys
import time
import warnings

import pytest

from lvrough.approx import LOWER, UPPER, apply, builtin
from lvrough.axiom import check_axiom, reconstruct_relation_lower, reconstruct_relation_upper
from lvrough.fixtures import EXAMPLES
from lvrough.lattice import (lattice_from_spec, make_boolean, make_goedel_chain,
                             make_lukasiewicz_chain, verify_laws)
from lvrough.oracle import (FIXTURES, classical_degeneracy_suite, fixture,
                            verify_completeness_exhaustive, verify_completeness_sampled,
                            verify_soundness)
from lvrough.product import inner_product, lower_inverse, outer_product, upper_inverse
from lvrough.relation import (full_relation, identity_relation, is_euclidean, is_mediate,
                              is_symmetric, relation_from_spec)
from lvrough.universe import Universe, subset_from_spec, universe_from_spec, verify_universe_laws

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = {}


def record(num, title, ok, elapsed, limit, detail=""):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"criterion {num}: {status}  {title}  ({elapsed:.2f}s / limit {limit:g}s)"
    if detail:
        line += f"  {detail}"
    ACCEPTANCE_LINES[num] = line
    return ok and within


def _example(name, lattice=None):
    doc = EXAMPLES[name]
    U = universe_from_spec(lattice_from_spec(lattice or doc["lattice"]), doc["universe"])
    return U, doc


# -- 1 ----------------------------------------------------------------------

def criterion_1():
    checks = []
    for name in ("inner-example-godel", "inner-example-luk"):
        t = time.perf_counter()
        U, doc = _example(name)
        M, Q = subset_from_spec(U, doc["m"]), subset_from_spec(U, doc["q"])
        ok = U.lattice.label(inner_product(M, Q)) == doc["expect"]["inner"]
        ok &= apply(upper_inverse(builtin(U, "identity")), Q).labels() == doc["expect"]["upper_inverse_of_q"]
        checks.append((name, ok, time.perf_counter() - t))
    t = time.perf_counter()
    U, doc = _example("outer-example")
    M, Q = subset_from_spec(U, doc["m"]), subset_from_spec(U, doc["q"])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ok = U.lattice.label(outer_product(M, Q)) == doc["expect"]["outer"]
    inv = lower_inverse(builtin(U, "identity", LOWER))
    ok &= apply(inv, Q).labels() == doc["expect"]["lower_inverse_of_q"]
    checks.append(("outer-example", ok, time.perf_counter() - t))
    return checks


def test_criterion_1():
    checks = criterion_1()
    worst = max(c[2] for c in checks)
    ok = all(c[1] and c[2] < 1 for c in checks)
    bad = [c[0] for c in checks if not c[1]]
    assert record(1, "worked inner/outer product examples", ok, worst, 1,
                  f"failed: {bad}" if bad else "3/3 exact")


# -- 2 ----------------------------------------------------------------------

def criterion_2():
    t = time.perf_counter()
    U, doc = _example("euclidean-example")
    E = relation_from_spec(U, doc["relation"])
    U2, doc2 = _example("mediate-example")
    Md = relation_from_spec(U2, doc2["relation"])
    verdicts = {"euclidean matrix symmetric": is_symmetric(E),
                "euclidean matrix euclidean": is_euclidean(E),
                "mediate matrix mediate": is_mediate(Md)}
    return verdicts, time.perf_counter() - t


def test_criterion_2_symmetric_and_mediate():
    verdicts, elapsed = criterion_2()
    failed = [k for k, v in verdicts.items() if not v]
    # the Euclidean verdict under min is genuinely false; the line reports it
    record(2, "example matrices under Goedel", not failed, elapsed, 1,
           f"failed: {failed}" if failed else "3/3")
    assert verdicts["euclidean matrix symmetric"] and verdicts["mediate matrix mediate"]
    assert elapsed < 1


@pytest.mark.xfail(strict=True, reason="under min the example matrix is not Euclidean: "
                   "R(a,b) * (U(a) -> R(a,c)) = 0.2 exceeds R(b,c) = 0.1")
def test_criterion_2_euclidean_verdict():
    verdicts, _ = criterion_2()
    assert verdicts["euclidean matrix euclidean"]


# -- 3 ----------------------------------------------------------------------

def shipped_universes():
    out = [(k, fixture(k).build()) for k in FIXTURES]
    for name, doc in EXAMPLES.items():
        out.append((name, universe_from_spec(lattice_from_spec(doc["lattice"]), doc["universe"])))
    return out


def criterion_3():
    rows = []
    for name, U in shipped_universes():
        t = time.perf_counter()
        ok = True
        for op_name, rel in (("identity", identity_relation), ("h1_largest", full_relation)):
            op = builtin(U, op_name)
            ok &= check_axiom(op, "HRTS").holds and reconstruct_relation_upper(op) == rel(U)
        if U.lattice.caps.mv_algebra and U.is_constant:
            for op_name, rel in (("identity", identity_relation), ("l1_least", full_relation)):
                op = builtin(U, op_name, LOWER)
                ok &= check_axiom(op, "LRTS").holds and reconstruct_relation_lower(op) == rel(U)
        rows.append((name, ok, time.perf_counter() - t))
    return rows


def test_criterion_3():
    rows = criterion_3()
    worst = max(r[2] for r in rows)
    bad = [r[0] for r in rows if not r[1]]
    ok = not bad and all(r[2] < 10 for r in rows)
    assert record(3, "builtin operators satisfy HRTS/LRTS and reconstruct", ok, worst, 10,
                  f"{len(rows)} fixtures" + (f", failed: {bad}" if bad else ""))


# -- 4 ----------------------------------------------------------------------

def lemma_lattices():
    return [make_lukasiewicz_chain(10), make_lukasiewicz_chain(11), make_goedel_chain(10),
            make_goedel_chain(11), make_boolean()]


def lemma_universes():
    L11, G11 = make_lukasiewicz_chain(11), make_goedel_chain(11)
    out = [U for _, U in shipped_universes() if U.powerset_size <= 200]
    out += [Universe.constant(L11, "ab"), Universe.from_labels(G11, {"a": "5/11", "b": "1"}),
            Universe.constant(make_boolean(), "abc"),
            Universe.from_labels(make_lukasiewicz_chain(10), {"a": "0.2", "b": "0.7"})]
    return out


def criterion_4():
    fails = []
    for lat in lemma_lattices():
        rep = verify_laws(lat)
        fails += [(lat.name, r.name) for r in rep.results if r.status == "fail"]
    for U in lemma_universes():
        fails += [(repr(U), r.name) for r in verify_universe_laws(U) if r.status == "fail"]
    return fails


def test_criterion_4():
    t = time.perf_counter()
    fails = criterion_4()
    elapsed = time.perf_counter() - t
    assert record(4, "lattice and subset lemma suites", not fails, elapsed, 30,
                  f"{len(fails)} failures") and not fails


# -- 5 ----------------------------------------------------------------------

def criterion_5():
    out = []
    for name in ("boolean2x", "luk2x2", "goedel2x2"):
        out += verify_soundness(fixture(name))
    return out


def test_criterion_5():
    t = time.perf_counter()
    res = criterion_5()
    elapsed = time.perf_counter() - t
    refuted = [r.row for r in res if r.status == "refuted"]
    confirmed = sum(r.status == "confirmed" for r in res)
    assert record(5, "soundness matrix", not refuted, elapsed, 300,
                  f"{confirmed} rows confirmed, {len(refuted)} refuted")


# -- 6 ----------------------------------------------------------------------

def test_criterion_6():
    t = time.perf_counter()
    res = verify_completeness_exhaustive(fixture("boolean2x"))
    res += verify_completeness_exhaustive(fixture("luk2x1"))
    elapsed = time.perf_counter() - t
    refuted = [r.row for r in res if r.status == "refuted"]
    tables = {r.cases_checked for r in res}
    assert tables == {256, 27}
    assert record(6, "exhaustive completeness (256 + 27 tables)", not refuted, elapsed, 120,
                  f"{len(res)} rows, {len(refuted)} refuted")


# -- 7 ----------------------------------------------------------------------

SAMPLES, SEED = 100_000, 42


def test_criterion_7():
    t = time.perf_counter()
    res = verify_completeness_sampled(fixture("luk2x2"), trials=SAMPLES, seed=SEED)
    elapsed = time.perf_counter() - t
    refuted = [r.row for r in res if r.status == "refuted"]
    assert all(r.cases_checked == SAMPLES for r in res)
    assert record(7, f"sampled completeness ({SAMPLES} operators, seed {SEED})", not refuted,
                  elapsed, 600, f"{len(refuted)} refuted")


# -- 8 ----------------------------------------------------------------------

def degeneracy_universes():
    return [Universe.constant(make_boolean(), "abc"),
            Universe.constant(make_lukasiewicz_chain(2), "ab"),
            Universe.constant(make_lukasiewicz_chain(4), "ab"),
            Universe.constant(make_goedel_chain(4), "ab")]


def test_criterion_8():
    t = time.perf_counter()
    reports = [classical_degeneracy_suite(U) for U in degeneracy_universes()]
    elapsed = time.perf_counter() - t
    mism = sum(len(r.mismatches) for r in reports)
    cases = sum(sum(r.cases.values()) for r in reports)
    assert record(8, "classical degeneracy at U = 1", mism == 0, elapsed, 60,
                  f"{cases} comparisons, {mism} mismatches")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
