import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lvrough.errors import BoundViolation, ParseError, RelationSpaceTooLarge
from lvrough.fixtures import EXAMPLES
from lvrough.lattice import lattice_from_spec, make_lukasiewicz_chain
from lvrough.relation import (LValuedRelation, enumerate_relations, full_relation,
                              identity_relation, is_euclidean, is_mediate, is_reflexive,
                              is_symmetric, is_transitive, relation_from_spec, relation_space_size,
                              zero_relation)
from lvrough.universe import Universe, universe_from_spec


def example(name, lattice=None):
    doc = EXAMPLES[name]
    U = universe_from_spec(lattice_from_spec(lattice or doc["lattice"]), doc["universe"])
    return relation_from_spec(U, doc["relation"])


def test_euclidean_example_symmetric_and_reflexive():
    R = example("euclidean-example")
    assert is_symmetric(R) and is_reflexive(R)


def test_euclidean_example_goedel_verdict():
    # regression: under min the triple (a,d,h) = (b,a,c) gives 0.2 > R(b,c) = 0.1
    R = example("euclidean-example")
    assert not is_euclidean(R)
    assert not is_transitive(R)


def test_euclidean_example_lukasiewicz_verdict():
    R = example("euclidean-example", {"kind": "lukasiewicz", "levels": 10})
    assert R.properties.letters == "RTSEM"


def test_mediate_example():
    R = example("mediate-example")
    assert is_mediate(R)
    assert R.properties.letters == "RM"


def test_builders(luk2x2, goedel2x2):
    for U in (luk2x2, goedel2x2):
        assert identity_relation(U).properties.letters == "RTSEM"
        assert full_relation(U).properties.letters == "RTSEM"
        Z = zero_relation(U)
        assert is_euclidean(Z) and is_transitive(Z) and is_symmetric(Z)


def test_upper_triangular_is_not_symmetric(luk2x2):
    R = LValuedRelation(luk2x2, ((2, 1), (0, 2)))
    assert not is_symmetric(R)


def test_bound(goedel2x2):
    with pytest.raises(BoundViolation):
        LValuedRelation(goedel2x2, ((2, 2), (2, 1)))
    with pytest.raises(ParseError):
        relation_from_spec(goedel2x2, {"matrix": {"z": {}}})


def test_space_counts(bool2x, luk2x2):
    assert relation_space_size(bool2x) == 16
    assert len(list(enumerate_relations(bool2x))) == 16
    assert len(list(enumerate_relations(bool2x, "R"))) == 4
    assert len(list(enumerate_relations(bool2x, "RST"))) == 2
    assert relation_space_size(luk2x2) == 81
    with pytest.raises(RelationSpaceTooLarge):
        list(enumerate_relations(luk2x2, cap=10))


def _classical(lat, A):
    """Textbook predicates, valid when U is constant 1."""
    n = len(A)
    ix = range(n)
    refl = all(A[a][a] == lat.top for a in ix)
    sym = all(A[a][d] == A[d][a] for a in ix for d in ix)
    trans = all(lat.le(lat.tensor(A[a][d], A[d][h]), A[a][h]) for a in ix for d in ix for h in ix)
    eucl = all(lat.le(lat.tensor(A[d][a], A[d][h]), A[a][h]) for a in ix for d in ix for h in ix)
    med = all(lat.le(A[d][a], lat.join_all(lat.tensor(A[d][h], A[h][a]) for h in ix))
              for a in ix for d in ix)
    return dict(reflexive=refl, symmetric=sym, transitive=trans, euclidean=eucl, mediate=med)


@pytest.mark.parametrize("levels", [1, 2, 3])
def test_classical_predicates_at_constant_one(levels):
    lat = make_lukasiewicz_chain(levels)
    U = Universe.constant(lat, "ab")
    for R in enumerate_relations(U):
        got = R.properties.to_dict()
        want = _classical(lat, R.matrix)
        assert {k: got[k] for k in want} == want


def test_symmetric_transitive_iff_euclidean(luk2x2, goedel2x2):
    for U in (luk2x2, goedel2x2):
        for R in enumerate_relations(U, "S"):
            assert is_transitive(R) == is_euclidean(R)


@given(st.data())
def test_derived_flags_consistent(data):
    lat = make_lukasiewicz_chain(3)
    us = data.draw(st.lists(st.integers(0, 3), min_size=1, max_size=3))
    U = Universe(lat, tuple(f"p{i}" for i in range(len(us))), tuple(us))
    A = tuple(tuple(data.draw(st.integers(0, min(x, y))) for y in us) for x in us)
    R = LValuedRelation(U, A)
    p = R.properties
    assert p.tolerance == (p.reflexive and p.symmetric)
    assert p.equivalence == (p.preorder and p.symmetric)
    assert p == LValuedRelation(U, A).properties
    assert R.transpose().transpose() == R
    if p.symmetric:
        assert p.transitive == p.euclidean
