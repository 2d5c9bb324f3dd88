"""L-valued relations on an L-universe and their five properties."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BoundViolation, ParseError, RelationSpaceTooLarge
from .universe import Universe

DEFAULT_MAX_RELATIONS = 1_000_000

# property letters used throughout: R reflexive, T transitive, S symmetric,
# E Euclidean, M mediate
PROPERTY_LETTERS = "RTSEM"
_LETTER_NAMES = {"R": "reflexive", "T": "transitive", "S": "symmetric",
                 "E": "euclidean", "M": "mediate"}


@dataclass(frozen=True)
class RelationProperties:
    reflexive: bool
    symmetric: bool
    transitive: bool
    euclidean: bool
    mediate: bool

    @property
    def tolerance(self) -> bool:
        return self.reflexive and self.symmetric

    @property
    def preorder(self) -> bool:
        return self.reflexive and self.transitive

    @property
    def equivalence(self) -> bool:
        return self.reflexive and self.symmetric and self.transitive

    @property
    def letters(self) -> str:
        return "".join(c for c in PROPERTY_LETTERS if getattr(self, _LETTER_NAMES[c]))

    def has(self, letters) -> bool:
        return all(getattr(self, _LETTER_NAMES[c]) for c in letters)

    def to_dict(self) -> dict:
        d = {name: getattr(self, name) for name in _LETTER_NAMES.values()}
        d.update(tolerance=self.tolerance, preorder=self.preorder, equivalence=self.equivalence)
        return d


@dataclass(frozen=True, eq=False)
class LValuedRelation:
    universe: Universe
    matrix: tuple  # row-major tuple of tuples of elements

    def __post_init__(self):
        U = self.universe
        lat = U.lattice
        rows = tuple(tuple(int(v) for v in row) for row in self.matrix)
        if len(rows) != U.n or any(len(r) != U.n for r in rows):
            raise ParseError(f"relation matrix must be {U.n}x{U.n}")
        for i, a in enumerate(U.points):
            for j, d in enumerate(U.points):
                v = rows[i][j]
                if not 0 <= v < lat.size:
                    raise ParseError(f"R({a},{d}) is not a carrier element")
                bound = lat.meet(U.membership[i], U.membership[j])
                if not lat.le(v, bound):
                    raise BoundViolation(
                        f"R({a},{d}) = {lat.label(v)} exceeds U({a})/\\U({d}) = {lat.label(bound)}")
        object.__setattr__(self, "matrix", rows)

    def __eq__(self, other):
        return (isinstance(other, LValuedRelation) and other.universe == self.universe
                and other.matrix == self.matrix)

    def __hash__(self):
        return hash(self.matrix)

    def __call__(self, a, d) -> int:
        U = self.universe
        return self.matrix[U.index(a)][U.index(d)]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    @cached_property
    def properties(self) -> RelationProperties:
        return RelationProperties(is_reflexive(self), is_symmetric(self), is_transitive(self),
                                  is_euclidean(self), is_mediate(self))

    def transpose(self) -> "LValuedRelation":
        return LValuedRelation(self.universe, tuple(zip(*self.matrix)))

    def labels(self) -> dict:
        U = self.universe
        lat = U.lattice
        return {a: {d: lat.label(self.matrix[i][j]) for j, d in enumerate(U.points)}
                for i, a in enumerate(U.points)}

    def to_spec(self) -> dict:
        return {"matrix": self.labels()}

    def __repr__(self):
        return f"LValuedRelation({self.labels()})"


def _parts(R):
    U = R.universe
    return U.lattice, R.array, np.array(U.membership, dtype=np.int64)


# array predicates: ``A`` has shape (..., n, n); results have shape (...)

def reflexive_array(lat, A, u):
    return lat.LE[u, np.diagonal(A, axis1=-2, axis2=-1)].all(axis=-1)


def symmetric_array(lat, A, u):
    return (A == np.swapaxes(A, -1, -2)).all(axis=(-2, -1))


def _transfer(lat, A, u):
    # G[..., d, h] = U(d) -> R(d, h)
    return lat.I[u[:, None], A]


def transitive_array(lat, A, u):
    G = _transfer(lat, A, u)
    lhs = lat.T[A[..., :, :, None], G[..., None, :, :]]  # [a, d, h]
    return lat.LE[lhs, A[..., :, None, :]].all(axis=(-3, -2, -1))


def euclidean_array(lat, A, u):
    G = _transfer(lat, A, u)
    At = np.swapaxes(A, -1, -2)
    lhs = lat.T[At[..., :, :, None], G[..., None, :, :]]  # [a, d, h]
    return lat.LE[lhs, A[..., :, None, :]].all(axis=(-3, -2, -1))


def mediate_array(lat, A, u):
    G = _transfer(lat, A, u)
    terms = lat.T[A[..., :, :, None], G[..., None, :, :]]  # [d, h, a]
    rhs = lat.join_reduce(terms, axis=-2)
    return lat.LE[A, rhs].all(axis=(-2, -1))


PREDICATES = {"R": reflexive_array, "T": transitive_array, "S": symmetric_array,
              "E": euclidean_array, "M": mediate_array}


def properties_array(lat, A, u) -> dict:
    """Letter -> boolean array over the leading axes of ``A``."""
    return {c: f(lat, A, u) for c, f in PREDICATES.items()}


def is_reflexive(R: LValuedRelation) -> bool:
    """``U(a) <= R(a,a)`` for all ``a``."""
    return bool(reflexive_array(*_parts(R)))


def is_symmetric(R: LValuedRelation) -> bool:
    return bool(symmetric_array(*_parts(R)))


def is_transitive(R: LValuedRelation) -> bool:
    """``R(a,d) * (U(d) -> R(d,h)) <= R(a,h)`` for all triples."""
    return bool(transitive_array(*_parts(R)))


def is_euclidean(R: LValuedRelation) -> bool:
    """``R(d,a) * (U(d) -> R(d,h)) <= R(a,h)`` for all triples."""
    return bool(euclidean_array(*_parts(R)))


def is_mediate(R: LValuedRelation) -> bool:
    """``R(d,a) <= join_h R(d,h) * (U(h) -> R(h,a))`` for all pairs."""
    return bool(mediate_array(*_parts(R)))


def relation_space_size(universe: Universe) -> int:
    lat = universe.lattice
    size = 1
    for ua in universe.membership:
        for ud in universe.membership:
            b = lat.meet(ua, ud)
            size *= sum(1 for e in lat.carrier if lat.le(e, b))
    return size


def enumerate_relations(universe: Universe, require: str = "", cap=DEFAULT_MAX_RELATIONS):
    """Yield every relation (row-major, values ascending) having ``require``.

    ``require`` is a string of property letters, e.g. ``"RST"``.
    """
    bad = set(require) - set(PROPERTY_LETTERS)
    if bad:
        raise ParseError(f"unknown property letters {sorted(bad)}")
    size = relation_space_size(universe)
    if size > cap:
        raise RelationSpaceTooLarge(f"relation space has {size} members, cap {cap}", size=size)
    lat = universe.lattice
    n = universe.n
    cells = []
    for ua in universe.membership:
        for ud in universe.membership:
            b = lat.meet(ua, ud)
            cells.append([e for e in lat.carrier if lat.le(e, b)])
    if "R" in require:
        # diagonal is forced to U(a)
        for i, ua in enumerate(universe.membership):
            cells[i * n + i] = [ua]
    for flat in itertools.product(*cells):
        R = LValuedRelation(universe, tuple(flat[i * n:(i + 1) * n] for i in range(n)))
        if R.properties.has(require):
            yield R


def zero_relation(universe: Universe) -> LValuedRelation:
    bot = universe.lattice.bot
    return LValuedRelation(universe, tuple((bot,) * universe.n for _ in range(universe.n)))


def identity_relation(universe: Universe) -> LValuedRelation:
    """``R(a,b) = U_{a}(b)``."""
    bot = universe.lattice.bot
    n = universe.n
    return LValuedRelation(universe, tuple(tuple(universe.membership[i] if i == j else bot
                                                 for j in range(n)) for i in range(n)))


def full_relation(universe: Universe) -> LValuedRelation:
    """``R(a,b) = U(a) /\\ U(b)``."""
    m = universe.lattice.meet
    u = universe.membership
    return LValuedRelation(universe, tuple(tuple(m(x, y) for y in u) for x in u))


def relation_from_spec(universe: Universe, spec: dict) -> LValuedRelation:
    if not isinstance(spec, dict) or not isinstance(spec.get("matrix"), dict):
        raise ParseError("relation spec must be an object with a 'matrix' mapping")
    lat = universe.lattice
    mat = spec["matrix"]
    unknown = [a for a in mat if a not in universe.points]
    if unknown:
        raise ParseError(f"relation names unknown points {unknown}")
    rows = []
    for a in universe.points:
        row = mat.get(a, {})
        if not isinstance(row, dict):
            raise ParseError(f"row {a!r} must be an object")
        extra = [d for d in row if d not in universe.points]
        if extra:
            raise ParseError(f"row {a!r} names unknown points {extra}")
        rows.append(tuple(lat.element(row[d]) if d in row else lat.bot for d in universe.points))
    return LValuedRelation(universe, tuple(rows))
