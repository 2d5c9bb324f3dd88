import pytest
from hypothesis import given, strategies as st

from lvrough.errors import (BoundViolation, ParseError, PowersetTooLarge, RequiresConstantUniverse,
                            RequiresMV, UnknownPoint)
from lvrough.lattice import make_boolean, make_goedel_chain, make_lukasiewicz_chain
from lvrough.universe import (Universe, copoint_subset, decompose_join_check, decompose_meet_check,
                              enumerate_powerset, join, meet, neg, point_subset, subset_from_spec,
                              universe_from_spec, verify_universe_laws)

L10 = make_lukasiewicz_chain(10)
G10 = make_goedel_chain(10)


def small_universes():
    return [
        Universe.from_labels(L10, {"a": "0.2", "b": "0.7"}),
        Universe.constant(L10, "xyz", L10.element("0.5")),
        Universe.constant(make_boolean(), "abc"),
        Universe.from_labels(G10, {"a": "0.3", "b": "0.6"}),
        Universe.constant(make_lukasiewicz_chain(3), "ab"),
    ]


def test_powerset_size_and_order():
    U = Universe.from_labels(L10, {"a": "0.2", "b": "0.7"})
    ps = U.powerset()
    assert len(ps) == 3 * 8
    subsets = enumerate_powerset(U)
    assert subsets[0] == U.zero and subsets[-1] == U.full
    # first point most significant
    assert subsets[1].values == (0, 1)
    assert all(ps.index(W) == i for i, W in enumerate(subsets))


def test_powerset_cap(monkeypatch):
    U = Universe.constant(L10, "abcdef")
    with pytest.raises(PowersetTooLarge):
        U.powerset()
    monkeypatch.setenv("LVROUGH_MAX_POWERSET", "10")
    with pytest.raises(PowersetTooLarge):
        Universe.constant(L10, "ab").powerset()


def test_bound_is_enforced():
    U = Universe.from_labels(L10, {"a": "0.2", "b": "0.7"})
    with pytest.raises(BoundViolation):
        U.subset({"a": "0.3"})
    with pytest.raises(UnknownPoint):
        U.subset({"z": "0.1"})


def test_spec_errors():
    with pytest.raises(ParseError):
        universe_from_spec(L10, {"points": ["a"]})
    with pytest.raises(ParseError):
        universe_from_spec(L10, {"points": ["a", "b"], "membership": {"a": "1"}})
    with pytest.raises(ParseError):
        Universe(L10, (), ())


def test_negation_example():
    U = Universe.from_labels(L10, {"a": "0.2", "b": "0.7", "c": "0.3", "d": "0.8"})
    M = subset_from_spec(U, {"values": {"a": "0.2", "b": "0.5", "c": "0.3", "d": "0.6"}})
    assert neg(M).labels() == {"a": "0", "b": "0.2", "c": "0", "d": "0.2"}


def test_point_and_copoint():
    U = Universe.from_labels(L10, {"a": "0.2", "b": "0.7"})
    assert point_subset(U, "b").labels() == {"a": "0", "b": "0.7"}
    assert copoint_subset(U, "b").labels() == {"a": "0.2", "b": "0"}
    assert join(point_subset(U, "a"), copoint_subset(U, "a")) == U.full
    assert meet(point_subset(U, "a"), copoint_subset(U, "a")) == U.zero


@pytest.mark.parametrize("U", small_universes(), ids=repr)
def test_universe_laws(U):
    results = verify_universe_laws(U)
    assert all(r.status != "fail" for r in results), results
    mv_const = U.lattice.caps.mv_algebra and U.is_constant
    status = {r.name: r.status for r in results}
    assert (status["decomposition by meets"] == "pass") == mv_const


def test_meet_decomposition_preconditions():
    U = Universe.from_labels(L10, {"a": "0.2", "b": "0.7"})
    with pytest.raises(RequiresConstantUniverse):
        decompose_meet_check(U.full)
    with pytest.raises(RequiresMV):
        decompose_meet_check(Universe.constant(G10, "ab").full)


@given(st.lists(st.integers(0, 10), min_size=1, max_size=4), st.data())
def test_join_decomposition_random(us, data):
    U = Universe(L10, tuple(f"p{i}" for i in range(len(us))), tuple(us))
    W = U.subset([data.draw(st.integers(0, u)) for u in us])
    assert decompose_join_check(W)
    # negation is antitone and below U
    V = U.subset([data.draw(st.integers(0, u)) for u in us])
    if W.le(V):
        assert neg(V).le(neg(W))
    assert neg(W).le(U.full)


@given(st.integers(1, 10), st.integers(1, 3), st.data())
def test_meet_decomposition_random(c, n, data):
    U = Universe.constant(L10, [f"p{i}" for i in range(n)], c)
    W = U.subset([data.draw(st.integers(0, c)) for _ in range(n)])
    assert decompose_meet_check(W)
