"""Inner product, subsethood, outer product and the two inverse mappings."""
from __future__ import annotations

import warnings

from .approx import LOWER, UPPER, Operator, apply
from .errors import DirectionMismatch, RequiresMV, UniverseMismatch
from .universe import LSubset, copoint_subset, neg, point_subset

NONCONSTANT = "nonconstant-universe"


class NonConstantUniverseWarning(UserWarning):
    """Outer-product machinery evaluated on a non-constant universe."""


def _same(M: LSubset, Q: LSubset):
    if M.universe != Q.universe:
        raise UniverseMismatch("subsets live in different universes")
    return M.universe


def inner_product(M: LSubset, Q: LSubset) -> int:
    """Degree of intersection ``join_d M(d) * (U(d) -> Q(d))``."""
    U = _same(M, Q)
    lat = U.lattice
    return lat.join_all(lat.tensor(m, lat.impl(u, q))
                        for m, u, q in zip(M.values, U.membership, Q.values))


def subsethood(M: LSubset, Q: LSubset) -> int:
    """``meet_b U(b) * (M(b) -> Q(b))``."""
    U = _same(M, Q)
    lat = U.lattice
    return lat.meet_all(lat.tensor(u, lat.impl(m, q))
                        for m, u, q in zip(M.values, U.membership, Q.values))


def outer_product(M: LSubset, Q: LSubset, warn: bool = True) -> int:
    """``S(not M, Q)``.  Warns on a non-constant universe."""
    U = _same(M, Q)
    if warn and not U.is_constant:
        warnings.warn("outer product on a non-constant universe", NonConstantUniverseWarning,
                      stacklevel=2)
    return subsethood(neg(M), Q)


def _upper_inverse_at(H: Operator, Q: LSubset) -> LSubset:
    U = H.universe
    lat = U.lattice
    out = []
    for d in range(U.n):
        img = apply(H, point_subset(U, d))
        K = LSubset(U, tuple(lat.meet(U.membership[d], v) for v in img.values))
        out.append(inner_product(K, Q))
    return LSubset(U, tuple(out))


def _lower_inverse_at(Lop: Operator, Q: LSubset) -> LSubset:
    U = Lop.universe
    return LSubset(U, tuple(subsethood(neg(apply(Lop, copoint_subset(U, b))), Q)
                            for b in range(U.n)))


def upper_inverse(H: Operator) -> Operator:
    if H.direction != UPPER:
        raise DirectionMismatch("the upper inverse needs an upper operator")
    return Operator(H.universe, "derived", UPPER, name=f"inv({H.label})",
                    bases=("upper_inverse", H), func=lambda Q: _upper_inverse_at(H, Q),
                    advisories=H.advisories)


def lower_inverse(Lop: Operator) -> Operator:
    if Lop.direction != LOWER:
        raise DirectionMismatch("the lower inverse needs a lower operator")
    U = Lop.universe
    if not U.lattice.caps.mv_algebra:
        raise RequiresMV("the lower inverse needs an MV-algebra")
    adv = set(Lop.advisories)
    if not U.is_constant:
        adv.add(NONCONSTANT)
    return Operator(U, "derived", LOWER, name=f"inv({Lop.label})",
                    bases=("lower_inverse", Lop), func=lambda Q: _lower_inverse_at(Lop, Q),
                    advisories=tuple(sorted(adv)))
