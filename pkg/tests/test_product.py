import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lvrough.approx import apply, builtin, induced_lower, induced_upper, table_of
from lvrough.axiom import h5_equivalent
from lvrough.errors import DirectionMismatch, RequiresMV
from lvrough.fixtures import EXAMPLES
from lvrough.lattice import lattice_from_spec, make_lukasiewicz_chain
from lvrough.product import (NONCONSTANT, NonConstantUniverseWarning, inner_product, lower_inverse,
                             outer_product, subsethood, upper_inverse)
from lvrough.relation import enumerate_relations
from lvrough.universe import Universe, subset_from_spec, universe_from_spec


def load(name):
    doc = EXAMPLES[name]
    U = universe_from_spec(lattice_from_spec(doc["lattice"]), doc["universe"])
    return U, subset_from_spec(U, doc["m"]), subset_from_spec(U, doc["q"]), doc["expect"]


@pytest.mark.parametrize("name", ["inner-example-godel", "inner-example-luk"])
def test_inner_examples(name):
    U, M, Q, expect = load(name)
    assert U.lattice.label(inner_product(M, Q)) == expect["inner"]
    assert apply(upper_inverse(builtin(U, "identity")), Q).labels() == expect["upper_inverse_of_q"]


def test_outer_example():
    U, M, Q, expect = load("outer-example")
    with pytest.warns(NonConstantUniverseWarning):
        v = outer_product(M, Q)
    assert U.lattice.label(v) == expect["outer"]
    inv = lower_inverse(builtin(U, "identity", "lower"))
    assert NONCONSTANT in inv.advisories
    assert apply(inv, Q).labels() == expect["lower_inverse_of_q"]


def test_outer_no_warning_on_constant(luk2x2):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        outer_product(luk2x2.full, luk2x2.zero)


def test_inverse_preconditions(luk2x2, goedel2x2):
    with pytest.raises(DirectionMismatch):
        upper_inverse(builtin(luk2x2, "l1_least"))
    with pytest.raises(DirectionMismatch):
        lower_inverse(builtin(luk2x2, "identity"))
    with pytest.raises(RequiresMV):
        lower_inverse(builtin(goedel2x2, "identity", "lower"))


L4 = make_lukasiewicz_chain(4)


@given(st.data())
def test_product_identities(data):
    us = data.draw(st.lists(st.integers(0, 4), min_size=1, max_size=4))
    U = Universe(L4, tuple(f"p{i}" for i in range(len(us))), tuple(us))
    M = U.subset([data.draw(st.integers(0, u)) for u in us])
    Q = U.subset([data.draw(st.integers(0, u)) for u in us])
    # inner product is bounded by the largest member of M
    assert L4.le(inner_product(M, Q), L4.join_all(M.values))
    assert subsethood(M, M) == L4.meet_all(us)
    assert L4.le(subsethood(U.full, Q), L4.meet_all(Q.values) if len(set(us)) == 1 else L4.top)
    if U.is_constant and us[0] == 4:
        assert inner_product(M, Q) == inner_product(Q, M)


def test_h5_for_symmetric_relations(luk2x2, goedel2x2):
    for U in (luk2x2, goedel2x2):
        for R in enumerate_relations(U):
            assert h5_equivalent(induced_upper(R)) == R.properties.symmetric


def test_kernel_inverse_matches_elementwise(luk2x2):
    ps = luk2x2.powerset()
    for R in list(enumerate_relations(luk2x2))[::7]:
        for inv in (upper_inverse(induced_upper(R)), lower_inverse(induced_lower(R))):
            t = table_of(inv)
            assert all(ps[t[i]] == inv.func(Q) for i, Q in enumerate(ps))
    assert (table_of(upper_inverse(builtin(luk2x2, "identity"))) == np.arange(len(ps))).all()
