"""L-universes and their L-powersets.

An L-universe is a point set ``X`` with a fixed membership map ``U: X -> L``;
``P(U)`` collects every L-subset ``W`` with ``W(x) <= U(x)``.  Points are
addressed by name in the public API and by position internally.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (BoundViolation, ParseError, PowersetTooLarge, RequiresConstantUniverse,
                     RequiresMV, UniverseMismatch, UnknownPoint)
from .lattice import FiniteResiduatedLattice

DEFAULT_MAX_POWERSET = 20_000


def max_powerset() -> int:
    """Enumeration cap for ``P(U)``; ``LVROUGH_MAX_POWERSET`` overrides it."""
    raw = os.environ.get("LVROUGH_MAX_POWERSET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ParseError(f"LVROUGH_MAX_POWERSET must be an integer, got {raw!r}") from None
    return DEFAULT_MAX_POWERSET


@dataclass(frozen=True)
class Universe:
    lattice: FiniteResiduatedLattice
    points: tuple
    membership: tuple

    def __post_init__(self):
        if not self.points:
            raise ParseError("a universe needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise ParseError("point names must be unique")
        if len(self.membership) != len(self.points):
            raise ParseError("membership must be total over the points")
        for x, u in zip(self.points, self.membership):
            if not (isinstance(u, int) and 0 <= u < self.lattice.size):
                raise ParseError(f"membership of {x!r} is not a carrier element")

    @classmethod
    def from_labels(cls, lattice, membership: dict, points=None) -> "Universe":
        """Build from ``{"a": "0.2", ...}``; ``points`` fixes the order."""
        points = tuple(points) if points is not None else tuple(membership)
        missing = [p for p in points if p not in membership]
        if missing:
            raise ParseError(f"membership is missing points {missing}")
        extra = [p for p in membership if p not in points]
        if extra:
            raise ParseError(f"membership names unknown points {extra}")
        return cls(lattice, points, tuple(lattice.element(membership[p]) for p in points))

    @classmethod
    def constant(cls, lattice, points, value=None) -> "Universe":
        value = lattice.top if value is None else value
        points = tuple(points)
        return cls(lattice, points, (value,) * len(points))

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def is_constant(self) -> bool:
        return len(set(self.membership)) == 1

    @cached_property
    def _point_index(self):
        return {p: i for i, p in enumerate(self.points)}

    def index(self, point) -> int:
        if isinstance(point, int) and not isinstance(point, bool) and point not in self._point_index:
            if 0 <= point < self.n:
                return point
        try:
            return self._point_index[point]
        except KeyError:
            raise UnknownPoint(f"unknown point {point!r}") from None

    def u(self, point) -> int:
        return self.membership[self.index(point)]

    def subset(self, values) -> "LSubset":
        """An L-subset from a name->label mapping or a sequence of elements."""
        if isinstance(values, dict):
            unknown = [p for p in values if p not in self._point_index]
            if unknown:
                raise UnknownPoint(f"unknown points {unknown}")
            vals = tuple(self.lattice.element(values[p]) if p in values else self.lattice.bot
                         for p in self.points)
        else:
            vals = tuple(values)
        return LSubset(self, vals)

    @cached_property
    def full(self) -> "LSubset":
        return LSubset(self, self.membership)

    @cached_property
    def zero(self) -> "LSubset":
        return LSubset(self, (self.lattice.bot,) * self.n)

    def powerset(self, cap=None) -> "Powerset":
        cap = max_powerset() if cap is None else cap
        ps = self._powerset
        if ps.size > cap:
            raise PowersetTooLarge(f"|P(U)| = {ps.size} exceeds cap {cap}", size=ps.size)
        return ps

    @cached_property
    def _powerset(self) -> "Powerset":
        return Powerset(self)

    @property
    def powerset_size(self) -> int:
        return self._powerset.size

    def to_spec(self) -> dict:
        lat = self.lattice
        return {"points": list(self.points),
                "membership": {p: lat.label(u) for p, u in zip(self.points, self.membership)}}

    def __repr__(self):
        lat = self.lattice
        body = ", ".join(f"{p}:{lat.label(u)}" for p, u in zip(self.points, self.membership))
        return f"Universe({lat.name}; {body})"


@dataclass(frozen=True)
class LSubset:
    universe: Universe
    values: tuple

    def __post_init__(self):
        U = self.universe
        if len(self.values) != U.n:
            raise ParseError(f"subset needs {U.n} values, got {len(self.values)}")
        le = U.lattice.le
        for x, v, u in zip(U.points, self.values, U.membership):
            if not (isinstance(v, (int, np.integer)) and 0 <= v < U.lattice.size):
                raise ParseError(f"value at {x!r} is not a carrier element")
            if not le(v, u):
                lat = U.lattice
                raise BoundViolation(f"W({x}) = {lat.label(v)} exceeds U({x}) = {lat.label(u)}")
        if any(isinstance(v, np.integer) for v in self.values):
            object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __getitem__(self, point) -> int:
        return self.values[self.universe.index(point)]

    def le(self, other: "LSubset") -> bool:
        _same(self, other)
        le = self.universe.lattice.le
        return all(le(a, b) for a, b in zip(self.values, other.values))

    def labels(self) -> dict:
        lat = self.universe.lattice
        return {p: lat.label(v) for p, v in zip(self.universe.points, self.values)}

    def to_spec(self) -> dict:
        return {"values": self.labels()}

    def __repr__(self):
        return "LSubset(" + " + ".join(f"{v}/{p}" for p, v in self.labels().items()) + ")"


def _same(*subsets):
    U = subsets[0].universe
    for W in subsets[1:]:
        if W.universe != U:
            raise UniverseMismatch("subsets live in different universes")
    return U


def _pointwise(op, W, V):
    U = _same(W, V)
    return LSubset(U, tuple(op(a, b) for a, b in zip(W.values, V.values)))


def join(W, V) -> LSubset:
    return _pointwise(W.universe.lattice.join, W, V)


def meet(W, V) -> LSubset:
    return _pointwise(W.universe.lattice.meet, W, V)


def tensor(W, V) -> LSubset:
    return _pointwise(W.universe.lattice.tensor, W, V)


def join_all(universe, subsets) -> LSubset:
    acc = universe.zero
    for W in subsets:
        acc = join(acc, W)
    return acc


def meet_all(universe, subsets) -> LSubset:
    acc = universe.full
    for W in subsets:
        acc = meet(acc, W)
    return acc


def neg(W: LSubset) -> LSubset:
    """``(not W)(d) = U(d) * (W(d) -> 0)``."""
    U = W.universe
    lat = U.lattice
    return LSubset(U, tuple(lat.tensor(u, lat.neg(w)) for u, w in zip(U.membership, W.values)))


def point_subset(universe: Universe, d) -> LSubset:
    """``U_{d}``: ``U(d)`` at ``d`` and 0 elsewhere."""
    i = universe.index(d)
    bot = universe.lattice.bot
    return LSubset(universe, tuple(u if k == i else bot for k, u in enumerate(universe.membership)))


def copoint_subset(universe: Universe, d) -> LSubset:
    """``U_{X-{d}}``: 0 at ``d`` and ``U`` elsewhere."""
    i = universe.index(d)
    bot = universe.lattice.bot
    return LSubset(universe, tuple(bot if k == i else u for k, u in enumerate(universe.membership)))


def scale_upper(beta: int, alpha: int, W: LSubset) -> LSubset:
    """Pointwise ``beta * (alpha -> W)``; lies in P(U) when beta <= alpha and W <= alpha."""
    lat = W.universe.lattice
    return LSubset(W.universe, tuple(lat.tensor(beta, lat.impl(alpha, w)) for w in W.values))


def scale_lower(alpha: int, W: LSubset) -> LSubset:
    """Pointwise ``U /\\ (alpha -> W)``."""
    U = W.universe
    lat = U.lattice
    return LSubset(U, tuple(lat.meet(u, lat.impl(alpha, w)) for u, w in zip(U.membership, W.values)))


def decompose_join_check(Q: LSubset) -> bool:
    """Check ``Q = join_b Q(b) * (U(b) -> U_{b})`` pointwise."""
    U = Q.universe
    lat = U.lattice
    for l in range(U.n):
        acc = lat.bot
        for b in range(U.n):
            ub_l = U.membership[b] if l == b else lat.bot
            acc = lat.join(acc, lat.tensor(Q.values[b], lat.impl(U.membership[b], ub_l)))
        if acc != Q.values[l]:
            return False
    return True


def decompose_meet_check(Q: LSubset) -> bool:
    """Check ``Q = meet_h U /\\ ((Q(h) -> 0) -> U_{X-{h}})`` pointwise.

    Needs an MV lattice and a constant universe.
    """
    U = Q.universe
    lat = U.lattice
    if not lat.caps.mv_algebra:
        raise RequiresMV("the meet decomposition needs an MV-algebra")
    if not U.is_constant:
        raise RequiresConstantUniverse("the meet decomposition needs a constant universe")
    for b in range(U.n):
        acc = lat.top
        for h in range(U.n):
            co = lat.bot if b == h else U.membership[b]
            acc = lat.meet(acc, lat.meet(U.membership[b], lat.impl(lat.neg(Q.values[h]), co)))
        if acc != Q.values[b]:
            return False
    return True


class Powerset:
    """Canonical enumeration of ``P(U)``.

    Mixed-radix order: points in declared order, the first point most
    significant, per-point values ascending in carrier order.  Index ``i``
    of this enumeration is the contract for extensional operator tables.
    """

    def __init__(self, universe: Universe):
        self.universe = universe
        lat = universe.lattice
        self.choices = [tuple(e for e in lat.carrier if lat.le(e, u)) for u in universe.membership]
        radices = [len(c) for c in self.choices]
        self.size = int(np.prod(radices, dtype=object))
        strides = [1] * universe.n
        for k in range(universe.n - 2, -1, -1):
            strides[k] = strides[k + 1] * radices[k + 1]
        self.strides = np.array(strides, dtype=np.int64)
        self.posmap = np.full((universe.n, lat.size), -1, dtype=np.int64)
        for x, ch in enumerate(self.choices):
            for pos, e in enumerate(ch):
                self.posmap[x, e] = pos

    def __len__(self):
        return self.size

    @cached_property
    def values(self) -> np.ndarray:
        """``(size, n)`` array of member values in canonical order."""
        rows = list(itertools.product(*self.choices))
        return np.array(rows, dtype=np.int64).reshape(self.size, self.universe.n)

    @cached_property
    def subsets(self) -> list:
        U = self.universe
        return [LSubset(U, tuple(int(v) for v in row)) for row in self.values]

    def __iter__(self):
        return iter(self.subsets)

    def __getitem__(self, i) -> LSubset:
        return self.subsets[i]

    def index(self, W: LSubset) -> int:
        _same(W, self.universe.zero)
        return int(self.index_values(np.array(W.values)))

    def index_values(self, vals) -> np.ndarray:
        """Indices of value rows ``(..., n)``; ``-1`` where a row leaves P(U)."""
        vals = np.asarray(vals, dtype=np.int64)
        pos = self.posmap[np.arange(self.universe.n), vals]
        idx = (pos * self.strides).sum(axis=-1)
        return np.where((pos < 0).any(axis=-1), -1, idx)


def enumerate_powerset(universe: Universe, cap=None) -> list:
    return list(universe.powerset(cap).subsets)


def universe_from_spec(lattice, spec: dict) -> Universe:
    if not isinstance(spec, dict) or "membership" not in spec:
        raise ParseError("universe spec must be an object with 'membership'")
    membership = spec["membership"]
    if not isinstance(membership, dict):
        raise ParseError("'membership' must map point names to labels")
    return Universe.from_labels(lattice, membership, spec.get("points"))


def subset_from_spec(universe, spec: dict) -> LSubset:
    if not isinstance(spec, dict) or "values" not in spec or not isinstance(spec["values"], dict):
        raise ParseError("subset spec must be an object with a 'values' mapping")
    return universe.subset(spec["values"])


def verify_universe_laws(universe: Universe, cap=None):
    """Subset-level laws over all of P(U).

    MV items are checked pointwise and are skipped off MV lattices.  The meet
    decomposition additionally needs a constant universe.
    """
    from .lattice import LawResult

    lat = universe.lattice
    subs = enumerate_powerset(universe, cap)
    U = universe
    out = []

    def run(name, cases, pred):
        checked = 0
        for case in cases:
            checked += 1
            if not pred(*case):
                return LawResult(name, "fail", checked, tuple(c.values for c in case))
        return LawResult(name, "pass", checked)

    singles = [(W,) for W in subs]
    pairs = [(W, V) for W in subs for V in subs]
    out.append(run("decomposition by joins", singles, decompose_join_check))
    out.append(run("negation antitone", pairs,
                   lambda W, V: not W.le(V) or neg(V).le(neg(W))))
    mv_names = ["mv.3 contraposition of subsets", "mv.3 double negation",
                "mv.4 negated co-point", "mv.5 implication into negation"]
    if lat.caps.mv_algebra:
        Im = lat.impl
        out.append(run(mv_names[0], pairs, lambda W, V: all(
            Im(w, v) == Im(nv, nw)
            for w, v, nw, nv in zip(W.values, V.values, neg(W).values, neg(V).values))))
        out.append(run(mv_names[1], singles, lambda W: neg(neg(W)) == W))
        pts = [(point_subset(U, d), copoint_subset(U, d)) for d in range(U.n)]
        out.append(run(mv_names[2], pts, lambda P, C: neg(C) == P))
        out.append(run(mv_names[3], singles, lambda W: all(
            Im(u, nw) == lat.neg(w) for u, w, nw in zip(U.membership, W.values, neg(W).values))))
    else:
        out.extend(LawResult(n, "skipped", note="lattice is not an MV-algebra") for n in mv_names)
    name = "decomposition by meets"
    if lat.caps.mv_algebra and U.is_constant:
        out.append(run(name, singles, decompose_meet_check))
    else:
        out.append(LawResult(name, "skipped", note="needs an MV-algebra and a constant universe"))
    return out
