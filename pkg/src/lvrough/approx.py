"""Upper and lower L-valued rough approximations and the Operator type."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DirectionMismatch, ParseError, UniverseMismatch
from .relation import LValuedRelation, relation_from_spec
from .universe import LSubset, Universe, subset_from_spec

UPPER, LOWER = "upper", "lower"
BUILTINS = {"identity": (UPPER, LOWER), "h1_largest": (UPPER,), "l1_least": (LOWER,)}


def _check(R, Q):
    if R.universe != Q.universe:
        raise UniverseMismatch("relation and subset live in different universes")


def upper_approx(R: LValuedRelation, Q: LSubset) -> LSubset:
    """``join_d R(d,o) * (U(d) -> Q(d))`` at every ``o``."""
    _check(R, Q)
    U = Q.universe
    lat = U.lattice
    out = []
    for o in range(U.n):
        acc = lat.bot
        for d in range(U.n):
            acc = lat.join(acc, lat.tensor(R.matrix[d][o], lat.impl(U.membership[d], Q.values[d])))
        out.append(acc)
    return LSubset(U, tuple(out))


def lower_approx(R: LValuedRelation, Q: LSubset) -> LSubset:
    """``meet_d U(o) * (R(d,o) -> Q(d))`` at every ``o``."""
    _check(R, Q)
    U = Q.universe
    lat = U.lattice
    out = []
    for o in range(U.n):
        acc = lat.top
        for d in range(U.n):
            acc = lat.meet(acc, lat.tensor(U.membership[o], lat.impl(R.matrix[d][o], Q.values[d])))
        out.append(acc)
    return LSubset(U, tuple(out))


def _h1_largest(Q: LSubset) -> LSubset:
    U = Q.universe
    lat = U.lattice
    u = U.membership
    return LSubset(U, tuple(
        lat.join_all(lat.tensor(Q.values[b], lat.impl(u[b], u[a])) for b in range(U.n))
        for a in range(U.n)))


def _l1_least(Q: LSubset) -> LSubset:
    U = Q.universe
    lat = U.lattice
    m = lat.meet_all(Q.values)
    return LSubset(U, tuple(lat.meet(ua, m) for ua in U.membership))


@dataclass(frozen=True, eq=False)
class Operator:
    """A map P(U) -> P(U).

    ``kind`` is one of ``induced_upper``, ``induced_lower``, ``builtin``,
    ``table`` or ``derived``.  Derived operators (inverses, composites) keep
    their ``bases`` and are evaluated lazily through ``func``.
    """
    universe: Universe
    kind: str
    direction: str
    relation: Optional[LValuedRelation] = None
    name: Optional[str] = None
    table: Optional[tuple] = None
    bases: tuple = ()
    func: Optional[Callable] = field(default=None, repr=False)
    advisories: tuple = ()

    def __post_init__(self):
        if self.direction not in (UPPER, LOWER):
            raise ParseError(f"direction must be 'upper' or 'lower', got {self.direction!r}")
        if self.kind == "builtin":
            if self.name not in BUILTINS:
                raise ParseError(f"unknown builtin {self.name!r}; known: {sorted(BUILTINS)}")
            if self.direction not in BUILTINS[self.name]:
                raise DirectionMismatch(f"builtin {self.name} is a {BUILTINS[self.name][0]} operator")
        if self.kind in ("induced_upper", "induced_lower") and self.relation.universe != self.universe:
            raise UniverseMismatch("relation belongs to another universe")
        if self.kind == "table":
            ps = self.universe.powerset()
            if len(self.table) != ps.size:
                raise ParseError(f"table needs {ps.size} entries, got {len(self.table)}")
            if any(not (0 <= int(t) < ps.size) for t in self.table):
                raise ParseError("table entries must be canonical subset indices")
            object.__setattr__(self, "table", tuple(int(t) for t in self.table))

    def __call__(self, Q: LSubset) -> LSubset:
        return apply(self, Q)

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        return self.kind

    def __repr__(self):
        return f"Operator({self.kind}, {self.direction}, {self.label})"


def induced_upper(R: LValuedRelation) -> Operator:
    return Operator(R.universe, "induced_upper", UPPER, relation=R, name="upper_approx")


def induced_lower(R: LValuedRelation) -> Operator:
    return Operator(R.universe, "induced_lower", LOWER, relation=R, name="lower_approx")


def builtin(universe: Universe, name: str, direction: str = None) -> Operator:
    if direction is None:
        direction = BUILTINS.get(name, (UPPER,))[0]
    return Operator(universe, "builtin", direction, name=name)


def table_operator(universe: Universe, table, direction: str, name=None) -> Operator:
    return Operator(universe, "table", direction, name=name, table=tuple(int(t) for t in table))


def compose(F: Operator, G: Operator, name=None) -> Operator:
    """``F o G``; keeps the direction of ``F``."""
    if F.universe != G.universe:
        raise UniverseMismatch("cannot compose operators on different universes")
    return Operator(F.universe, "derived", F.direction, name=name or f"{F.label}.{G.label}",
                    bases=("compose", F, G), func=lambda Q: apply(F, apply(G, Q)),
                    advisories=tuple(sorted(set(F.advisories) | set(G.advisories))))


def apply(op: Operator, Q: LSubset) -> LSubset:
    if Q.universe != op.universe:
        raise UniverseMismatch("subset and operator live in different universes")
    k = op.kind
    if k == "induced_upper":
        return upper_approx(op.relation, Q)
    if k == "induced_lower":
        return lower_approx(op.relation, Q)
    if k == "builtin":
        if op.name == "identity":
            return Q
        if op.name == "h1_largest":
            return _h1_largest(Q)
        return _l1_least(Q)
    if k == "table":
        ps = op.universe.powerset()
        return ps[op.table[ps.index(Q)]]
    if k == "derived":
        return op.func(Q)
    raise ParseError(f"unknown operator kind {k!r}")


def table_of(op: Operator) -> np.ndarray:
    """Extensional table of ``op`` in canonical P(U) order."""
    from .kernel import kernel_for

    K = kernel_for(op.universe)
    k = op.kind
    if k == "table":
        return np.array(op.table, dtype=np.int64)
    if k == "induced_upper":
        return K.upper_table(op.relation.array)
    if k == "induced_lower":
        return K.lower_table(op.relation.array)
    if k == "builtin":
        if op.name == "identity":
            return K.identity()
        return K.h1_largest() if op.name == "h1_largest" else K.l1_least()
    tag = op.bases[0] if op.bases else None
    if tag == "compose":
        return K.compose(table_of(op.bases[1]), table_of(op.bases[2]))
    if tag == "upper_inverse":
        return K.upper_inverse(table_of(op.bases[1]))
    if tag == "lower_inverse":
        return K.lower_inverse(table_of(op.bases[1]))
    ps = op.universe.powerset()
    return np.array([ps.index(apply(op, Q)) for Q in ps], dtype=np.int64)


def tabulate(op: Operator) -> Operator:
    if op.kind == "table":
        return op
    return Operator(op.universe, "table", op.direction, name=op.name,
                    table=tuple(int(t) for t in table_of(op)), advisories=op.advisories)


def operator_from_spec(universe: Universe, spec, direction: str = None) -> Operator:
    """Parse ``{"kind": ...}`` JSON; a bare string names a builtin."""
    if isinstance(spec, str):
        return builtin(universe, spec, direction)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError("operator spec must be an object with 'kind'")
    kind = spec["kind"]
    if kind in ("induced_upper", "induced_lower"):
        if "relation" not in spec:
            raise ParseError(f"{kind} needs a 'relation'")
        R = relation_from_spec(universe, spec["relation"])
        return induced_upper(R) if kind == "induced_upper" else induced_lower(R)
    d = spec.get("direction", direction)
    if kind == "builtin":
        return builtin(universe, spec.get("name"), d)
    if kind == "table":
        if d is None:
            raise ParseError("table operators need a 'direction'")
        entries = spec.get("entries")
        if not isinstance(entries, list):
            raise ParseError("table operators need an 'entries' list")
        ps = universe.powerset()
        table = [e if isinstance(e, int) else ps.index(subset_from_spec(universe, e)) for e in entries]
        return table_operator(universe, table, d, name=spec.get("name"))
    raise ParseError(f"unknown operator kind {kind!r}")


def operator_to_spec(op: Operator) -> dict:
    if op.kind in ("induced_upper", "induced_lower"):
        return {"kind": op.kind, "relation": op.relation.to_spec()}
    if op.kind == "builtin":
        return {"kind": "builtin", "name": op.name, "direction": op.direction}
    t = op if op.kind == "table" else tabulate(op)
    ps = op.universe.powerset()
    return {"kind": "table", "direction": op.direction,
            "entries": [ps[i].to_spec() for i in t.table]}
