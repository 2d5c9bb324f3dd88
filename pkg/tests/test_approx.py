import numpy as np
import pytest
from hypothesis import given, strategies as st

from lvrough.approx import (LOWER, UPPER, apply, builtin, compose, induced_lower, induced_upper,
                            lower_approx, operator_from_spec, operator_to_spec, table_of,
                            table_operator, tabulate, upper_approx)
from lvrough.errors import DirectionMismatch, ParseError, UniverseMismatch
from lvrough.fixtures import EXAMPLES
from lvrough.lattice import lattice_from_spec, make_goedel_chain, make_lukasiewicz_chain
from lvrough.relation import LValuedRelation, relation_from_spec
from lvrough.universe import Universe, neg, point_subset, universe_from_spec

L3 = make_lukasiewicz_chain(3)
G3 = make_goedel_chain(3)


def euclid():
    doc = EXAMPLES["euclidean-example"]
    U = universe_from_spec(lattice_from_spec(doc["lattice"]), doc["universe"])
    return U, relation_from_spec(U, doc["relation"])


def test_upper_of_point_is_row():
    U, R = euclid()
    for a in U.points:
        got = upper_approx(R, point_subset(U, a)).labels()
        assert got == R.labels()[a]


def test_zero_subset():
    U, R = euclid()
    assert upper_approx(R, U.zero) == U.zero


def test_lower_on_goedel_is_allowed():
    U, R = euclid()
    W = lower_approx(R, U.full)
    assert W.le(U.full)


def random_instance(data, lat):
    m = lat.size - 1
    us = data.draw(st.lists(st.integers(0, m), min_size=1, max_size=3))
    U = Universe(lat, tuple(f"p{i}" for i in range(len(us))), tuple(us))
    R = LValuedRelation(U, tuple(tuple(data.draw(st.integers(0, min(x, y))) for y in us)
                                 for x in us))
    return U, R


@given(st.data())
def test_tables_match_elementwise(data):
    lat = data.draw(st.sampled_from([L3, G3]))
    U, R = random_instance(data, lat)
    ps = U.powerset()
    for op in (induced_upper(R), induced_lower(R)):
        t = table_of(op)
        assert all(ps[t[i]] == apply(op, Q) for i, Q in enumerate(ps))


@given(st.data())
def test_upper_is_monotone_and_preserves_zero(data):
    U, R = random_instance(data, L3)
    ps = list(U.powerset())
    W = data.draw(st.sampled_from(ps))
    V = data.draw(st.sampled_from(ps))
    if W.le(V):
        assert upper_approx(R, W).le(upper_approx(R, V))
        assert lower_approx(R, W).le(lower_approx(R, V))
    assert upper_approx(R, U.zero) == U.zero


@given(st.data())
def test_duality_at_constant_one(data):
    n = data.draw(st.integers(1, 3))
    U = Universe.constant(L3, [f"p{i}" for i in range(n)])
    R = LValuedRelation(U, tuple(tuple(data.draw(st.integers(0, 3)) for _ in range(n))
                                 for _ in range(n)))
    Q = U.subset([data.draw(st.integers(0, 3)) for _ in range(n)])
    assert lower_approx(R, Q) == neg(upper_approx(R, neg(Q)))


def test_builtin_directions(luk2x2):
    assert builtin(luk2x2, "identity").direction == UPPER
    assert builtin(luk2x2, "l1_least").direction == LOWER
    with pytest.raises(DirectionMismatch):
        builtin(luk2x2, "h1_largest", LOWER)
    with pytest.raises(ParseError):
        builtin(luk2x2, "nope")


def test_table_operator_validation(luk2x2):
    p = luk2x2.powerset_size
    with pytest.raises(ParseError):
        table_operator(luk2x2, [0] * (p - 1), UPPER)
    with pytest.raises(ParseError):
        table_operator(luk2x2, [p] * p, UPPER)


def test_compose_and_tabulate(luk2x2):
    H = builtin(luk2x2, "h1_largest")
    HH = compose(H, H)
    assert HH.bases[0] == "compose"
    t = tabulate(HH)
    ps = luk2x2.powerset()
    assert all(apply(t, Q) == apply(H, apply(H, Q)) for Q in ps)
    assert (table_of(HH) == np.array(t.table)).all()


def test_universe_mismatch(luk2x2, goedel2x2):
    with pytest.raises(UniverseMismatch):
        apply(builtin(luk2x2, "identity"), goedel2x2.full)


@pytest.mark.parametrize("spec", [
    "identity",
    {"kind": "builtin", "name": "l1_least"},
    {"kind": "induced_upper", "relation": {"matrix": {"a": {"a": "1", "b": "0.5"}}}},
    {"kind": "induced_lower", "relation": {"matrix": {"b": {"b": "1"}}}},
])
def test_operator_spec_roundtrip(luk2x2, spec):
    op = operator_from_spec(luk2x2, spec)
    back = operator_from_spec(luk2x2, operator_to_spec(op))
    assert (table_of(back) == table_of(op)).all()
    t = operator_from_spec(luk2x2, operator_to_spec(tabulate(op)))
    assert t.kind == "table" and (table_of(t) == table_of(op)).all()


def test_operator_spec_errors(luk2x2):
    with pytest.raises(ParseError):
        operator_from_spec(luk2x2, {"kind": "table", "entries": []})
    with pytest.raises(ParseError):
        operator_from_spec(luk2x2, {"kind": "weird"})
