"""Axiom registry, checker and relation reconstruction.

Two engines evaluate the same axioms.  The table engine works on whole
operator tables with numpy and is what exhaustive checks and the oracle
use.  The direct engine evaluates one quantifier assignment at a time
through ``approx``/``product``; sampled mode and witness decoding use it,
and the tests run both engines against each other.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .approx import LOWER, UPPER, Operator, apply, induced_lower, induced_upper, table_of
from .errors import (BoundViolation, DirectionMismatch, H0Violated, ParseError, RequiresConstantUniverse,
                     RequiresMV)
from .kernel import MATRIX_CAP, kernel_for
from .product import inner_product, lower_inverse, subsethood, upper_inverse
from .relation import LValuedRelation, properties_array
from .universe import (LSubset, copoint_subset, join as sjoin, meet as smeet, neg, point_subset,
                       scale_lower, scale_upper)

# generic term names; "op" is H or L, "inv" its inverse, "a.b" is a after b
_SYMBOL = {UPPER: ("H", "Hinv"), LOWER: ("L", "Linv")}

# upper single axioms: I(X, H(Y)) = I(Y, T(X)); T = combination of terms
_UPPER_SINGLE = {
    "H": (("inv",), None),
    "HR": (("id", "inv"), "join"),
    "HT": (("inv.inv", "inv"), "join"),
    "HS": (("op",), None),
    "HE": (("op.inv", "inv"), "join"),
    "HM": (("inv.inv", "inv"), "meet"),
    "HRT": (("id", "inv.inv", "inv"), "join"),
    "HRS": (("id", "op"), "join"),
    "HRE": (("id", "op.inv", "inv"), "join"),
    "HTS": (("op.op", "op"), "join"),
    "HTE": (("inv.inv", "op.inv", "inv"), "join"),
    "HTM": (("inv.inv",), None),
    "HSM": (("op.op", "op"), "meet"),
    "HRTS": (("id", "op", "op.op"), "join"),
    "HRTE": (("id", "inv.inv", "op.inv", "inv"), "join"),
}
_DUAL = {"join": "meet", "meet": "join", None: None}
# lower single axioms: O(X, L(Y)) = O(Y, T(X)) with the dual combination
SINGLE = {**_UPPER_SINGLE,
          **{"L" + k[1:]: (terms, _DUAL[c]) for k, (terms, c) in _UPPER_SINGLE.items()}}

UPPER_COMPONENTS = ("H0", "H1", "H2", "H3", "H4", "H5", "H6", "H7", "C1", "C2", "C3", "C4", "C5")
LOWER_COMPONENTS = ("L1", "L2", "L3", "L4", "L5", "L6", "L7", "D1", "D2", "D3", "D4", "D5")
ALL_AXIOMS = tuple(SINGLE) + UPPER_COMPONENTS + LOWER_COMPONENTS

# rows of the characterization table: property set -> axiom name (upper form)
TABLE_ROWS = (
    ("", "H"), ("R", "HR"), ("T", "HT"), ("S", "HS"), ("E", "HE"), ("M", "HM"),
    ("RT", "HRT"), ("RS", "HRS"), ("RE", "HRE"), ("TS", "HTS"), ("TE", "HTE"), ("TM", "HTM"),
    ("SE", "HTS"), ("SM", "HSM"), ("RTS", "HRTS"), ("RTE", "HRTE"), ("RSE", "HRTS"),
    ("TSE", "HTS"),
)


def table_rows(family: str):
    if family == UPPER:
        return TABLE_ROWS
    return tuple((props, "L" + ax[1:]) for props, ax in TABLE_ROWS)


@dataclass(frozen=True)
class Theorem:
    """A characterization: ``components`` all hold iff the operator is induced
    by a relation with ``props``."""
    name: str
    family: str
    components: tuple
    props: str


def _theorems():
    out = {}
    for name in SINGLE:
        fam = UPPER if name[0] == "H" else LOWER
        props = "".join(c for c in "RTSEM" if c in name[1:])
        out[name] = Theorem(name, fam, (name,), props)
    for fam, a, b, extra in ((UPPER, "H1", "H2", "H"), (LOWER, "L1", "L2", "L")):
        out[f"{a}+{b}"] = Theorem(f"{a}+{b}", fam, (a, b), "")
        for k, c in zip(range(3, 8), "RTSEM"):
            nm = f"{a}+{b}+{extra}{k}"
            out[nm] = Theorem(nm, fam, (a, b, f"{extra}{k}"), c)
    out["C1+C2"] = Theorem("C1+C2", UPPER, ("C1", "C2"), "")
    out["C1-C5"] = Theorem("C1-C5", UPPER, ("C1", "C2", "C3", "C4", "C5"), "RST")
    out["D1+D2"] = Theorem("D1+D2", LOWER, ("D1", "D2"), "")
    out["D1-D5"] = Theorem("D1-D5", LOWER, ("D1", "D2", "D3", "D4", "D5"), "RST")
    return out


THEOREMS = _theorems()


@dataclass(frozen=True)
class AxiomId:
    family: str
    name: str

    def __post_init__(self):
        if self.name not in ALL_AXIOMS:
            raise ParseError(f"unknown axiom {self.name!r}")
        if family_of(self.name) != self.family:
            raise ParseError(f"axiom {self.name} belongs to the {family_of(self.name)} family")

    @classmethod
    def parse(cls, name) -> "AxiomId":
        if isinstance(name, AxiomId):
            return name
        if name not in ALL_AXIOMS:
            raise ParseError(f"unknown axiom {name!r}")
        return cls(family_of(name), name)

    def __str__(self):
        return self.name


def family_of(name: str) -> str:
    return UPPER if name[0] in "HC" else LOWER


def formula(name: str) -> str:
    """Human readable statement of a single axiom."""
    terms, comb = SINGLE[name]
    fam = family_of(name)
    op, inv = _SYMBOL[fam]
    sym = {"id": "X", "op": f"{op}(X)", "inv": f"{inv}(X)", "op.op": f"{op}{op}(X)",
           "inv.inv": f"{inv}{inv}(X)", "op.inv": f"{op}{inv}(X)"}
    glue = {"join": " v ", "meet": " ^ ", None: ""}[comb]
    P = "I" if fam == UPPER else "O"
    return f"{P}(X, {op}(Y)) = {P}(Y, {glue.join(sym[t] for t in terms)})"


@dataclass(frozen=True)
class Mode:
    kind: str = "exhaustive"
    seed: Optional[int] = None
    trials: Optional[int] = None

    def to_dict(self):
        if self.kind == "exhaustive":
            return {"kind": "exhaustive"}
        return {"kind": "sampled", "seed": self.seed, "trials": self.trials}


EXHAUSTIVE = Mode()


def sampled(seed: int = 0, trials: int = 1000) -> Mode:
    return Mode("sampled", int(seed), int(trials))


def _mode(mode) -> Mode:
    if isinstance(mode, Mode):
        return mode
    if mode in (None, "exhaustive"):
        return EXHAUSTIVE
    if mode == "sampled":
        return sampled()
    raise ParseError(f"unknown mode {mode!r}")


@dataclass
class AxiomReport:
    axiom: AxiomId
    holds: bool
    mode: Mode
    checked_count: int
    witness: Optional[dict] = None
    engine: str = "table"

    def to_dict(self) -> dict:
        return {"axiom": self.axiom.name, "family": self.axiom.family, "holds": self.holds,
                "mode": self.mode.to_dict(), "checked_count": self.checked_count,
                "witness": self.witness}


# -- preconditions ----------------------------------------------------------

def _require(op: Operator, family: str):
    if op.direction != family:
        raise DirectionMismatch(f"{family} axioms do not apply to a {op.direction} operator")
    if family == LOWER:
        U = op.universe
        if not U.lattice.caps.mv_algebra:
            raise RequiresMV("lower-family axioms need an MV-algebra")
        if not U.is_constant:
            raise RequiresConstantUniverse("lower-family axioms need a constant universe")


# one-variable order axioms: name -> (smaller term, larger term)
_ORDER_PAIRS = {
    "H3": ("id", "inv"), "H4": ("inv.inv", "inv"), "H6": ("op.inv", "inv"),
    "H7": ("inv", "inv.inv"), "L3": ("inv", "id"), "L4": ("inv", "inv.inv"),
    "L6": ("inv", "op.inv"), "L7": ("inv.inv", "inv"), "C3": ("id", "op"),
    "C4": ("op.op", "op"), "D3": ("op", "id"), "D4": ("op", "op.op"),
}


# -- table engine -----------------------------------------------------------

class TableTerms:
    """Lazily built term tables for a batch of operator tables ``(B, p)``."""

    def __init__(self, K, family, tables):
        self.K = K
        self.family = family
        self.tables = np.atleast_2d(tables)
        self._cache = {"op": self.tables}

    def __getitem__(self, name):
        if name not in self._cache:
            K = self.K
            if name == "id":
                val = np.broadcast_to(K.ar, self.tables.shape)
            elif name == "inv":
                f = K.upper_inverse if self.family == UPPER else K.lower_inverse
                val = f(self.tables)
            else:
                a, b = name.split(".")
                val = K.compose(self[a], self[b])
            self._cache[name] = val
        return self._cache[name]


def _combine(K, how, tabs):
    acc = tabs[0]
    T = K.JOIN if how == "join" else K.MEET
    for t in tabs[1:]:
        acc = T[acc, t]
    return acc


def _single_bad(K, name, terms: TableTerms):
    tnames, how = SINGLE[name]
    T = _combine(K, how, [terms[t] for t in tnames])
    P = K.IP if terms.family == UPPER else K.OP
    H = terms.tables
    lhs = P[K.ar[:, None], H[:, None, :]]  # [b, X, Y] = P(X, H(Y))
    rhs = P[K.ar[None, :], T[:, :, None]]  # [b, X, Y] = P(Y, T(X))
    return (lhs != rhs).reshape(len(H), -1), K.p * K.p


def _key(name):
    # C1/C2 and D1/D2 coincide with H1/H2 and L1/L2
    return _ALIAS.get(name, name)


_ALIAS = {"C1": "H1", "C2": "H2", "D1": "L1", "D2": "L2"}


def _le_bad(K, A, B):
    """``A <= B`` fails, pointwise over subset indices."""
    return ~K.SUBLE[A, B]


def _component_bad(K, name, terms: TableTerms):
    """``(bad[b, s], checked)`` over the canonical quantifier space of ``name``."""
    H = terms.tables
    Bn = len(H)
    key = _key(name)
    if key == "H0":
        img = K.V[H[:, K.pt]]
        return ~K.lattice.LE[img, K.u[:, None]].all(axis=-1), K.n
    if key == "H1":
        pairs, SC, valid = K.scalar_upper
        SCt, vt = SC.T, valid.T  # [q, k]
        lhs = np.take(H, SCt, axis=-1)
        rhs = SCt[H[:, :, None], np.arange(len(pairs))[None, None, :]]
        return (vt[None] & (lhs != rhs)).reshape(Bn, -1), int(vt.sum())
    if key == "L1":
        SL = K.scalar_lower  # [alpha, q]
        lhs = np.take(H, SL.T, axis=-1)  # [b, q, alpha]
        rhs = SL.T[H[:, :, None], np.arange(SL.shape[0])[None, None, :]]
        return (lhs != rhs).reshape(Bn, -1), SL.size
    if key in ("H2", "L2"):
        up = key == "H2"
        T = K.JOIN if up else K.MEET
        unit = K.zero if up else K.full
        lhs = np.take(H, T, axis=-1)
        rhs = T[H[:, :, None], H[:, None, :]]
        pair_bad = (lhs != rhs).reshape(Bn, -1)
        return np.concatenate([(H[:, unit] != unit)[:, None], pair_bad], axis=1), 1 + K.p * K.p
    if key in ("H5", "L5"):
        return terms["inv"] != H, K.p
    if key in ("C5", "D5"):
        R = K.upper_relation(H) if key == "C5" else K.lower_relation(H)
        return (R != np.swapaxes(R, -1, -2)).reshape(Bn, -1), K.n * K.n
    lo, hi = _ORDER_PAIRS[name]
    return _le_bad(K, terms[lo], terms[hi]), K.p


def bad_table(K, name: str, terms: TableTerms):
    if name in SINGLE:
        return _single_bad(K, name, terms)
    return _component_bad(K, name, terms)


def batch_holds(K, family: str, names, tables) -> dict:
    """``name -> (holds[B], first_bad[B])`` for a batch of operator tables."""
    terms = TableTerms(K, family, tables)
    out = {}
    for nm in names:
        bad, _ = bad_table(K, nm, terms)
        any_bad = bad.any(axis=1)
        out[nm] = (~any_bad, np.where(any_bad, bad.argmax(axis=1), -1))
    return out


def batch_reconstruct(K, family: str, tables) -> dict:
    """Reconstructed relations, validity, roundtrip flags and properties."""
    H = np.atleast_2d(tables)
    lat = K.lattice
    if family == UPPER:
        R = K.upper_relation(H)
        valid = K.h0_holds(H)
        back = K.upper_table(R)
    else:
        R = K.lower_relation(H)
        bound = lat.M[K.u[:, None], K.u[None, :]]
        valid = lat.LE[R, bound].all(axis=(-2, -1))
        back = K.lower_table(R)
    roundtrip = valid & (back == H).all(axis=-1)
    return {"R": R, "valid": valid, "roundtrip": roundtrip,
            "props": properties_array(lat, R, K.u)}


# -- direct engine ----------------------------------------------------------

class DirectTerms:
    """Element-wise evaluation of the term operators, memoised per subset."""

    def __init__(self, op: Operator, family: str):
        self.op = op
        self.family = family
        self._inv = upper_inverse(op) if family == UPPER else lower_inverse(op)
        self._memo = {}

    def P(self, M, Q) -> int:
        return inner_product(M, Q) if self.family == UPPER else subsethood(neg(M), Q)

    def apply(self, name, X: LSubset) -> LSubset:
        key = (name, X.values)
        if key not in self._memo:
            if name == "id":
                val = X
            elif name == "op":
                val = apply(self.op, X)
            elif name == "inv":
                val = apply(self._inv, X)
            else:
                a, b = name.split(".")
                val = self.apply(a, self.apply(b, X))
            self._memo[key] = val
        return self._memo[key]


def _lab(U, e):
    return U.lattice.label(e)


def _sub(W):
    return W.labels()


def _eval_single(D: DirectTerms, name, X, Y):
    tnames, how = SINGLE[name]
    parts = [D.apply(t, X) for t in tnames]
    T = parts[0]
    for t in parts[1:]:
        T = sjoin(T, t) if how == "join" else smeet(T, t)
    lhs = D.P(X, D.apply("op", Y))
    rhs = D.P(Y, T)
    U = X.universe
    return lhs == rhs, {"X": _sub(X), "Y": _sub(Y), "lhs": _lab(U, lhs), "rhs": _lab(U, rhs)}


def _eval_component(D: DirectTerms, name, a):
    """Evaluate component axiom ``name`` at assignment ``a``."""
    U = D.op.universe
    lat = U.lattice
    key = _key(name)
    op = lambda W: D.apply("op", W)  # noqa: E731
    if key == "H0":
        d = a["d"]
        img = op(point_subset(U, d))
        ok = all(lat.le(v, U.membership[d]) for v in img.values)
        return ok, {"d": U.points[d], "H(U_d)": _sub(img), "U(d)": _lab(U, U.membership[d])}
    if key in ("H1", "L1"):
        Q = a["Q"]
        if key == "H1":
            b, al = a["beta"], a["alpha"]
            lhs, rhs = op(scale_upper(b, al, Q)), scale_upper(b, al, op(Q))
            extra = {"beta": _lab(U, b), "alpha": _lab(U, al)}
        else:
            al = a["alpha"]
            lhs, rhs = op(scale_lower(al, Q)), scale_lower(al, op(Q))
            extra = {"alpha": _lab(U, al)}
        return lhs == rhs, {"Q": _sub(Q), **extra, "lhs": _sub(lhs), "rhs": _sub(rhs)}
    if key in ("H2", "L2"):
        up = key == "H2"
        if a.get("empty"):
            unit = U.zero if up else U.full
            img = op(unit)
            return img == unit, {"family": "empty", "lhs": _sub(img), "rhs": _sub(unit)}
        W, V = a["W"], a["V"]
        f = sjoin if up else smeet
        lhs, rhs = op(f(W, V)), f(op(W), op(V))
        return lhs == rhs, {"W": _sub(W), "V": _sub(V), "lhs": _sub(lhs), "rhs": _sub(rhs)}
    if key in ("C5", "D5"):
        d, h = a["d"], a["h"]
        if name == "C5":
            l, r = op(point_subset(U, d)).values[h], op(point_subset(U, h)).values[d]
        else:
            l = neg(op(copoint_subset(U, d))).values[h]
            r = neg(op(copoint_subset(U, h))).values[d]
        return l == r, {"d": U.points[d], "h": U.points[h], "lhs": _lab(U, l), "rhs": _lab(U, r)}
    W = a["W"]
    if key in ("H5", "L5"):
        l, r = D.apply("inv", W), op(W)
        return l == r, {"W": _sub(W), "lhs": _sub(l), "rhs": _sub(r)}
    s, t = _ORDER_PAIRS[name]
    l, r = D.apply(s, W), D.apply(t, W)
    return l.le(r), {"W": _sub(W), "lhs": _sub(l), "rhs": _sub(r)}


def _space(U, name):
    """Canonical quantifier space of ``name`` as ``(size, decode)``."""
    ps = U.powerset()
    p = ps.size
    lat = U.lattice
    key = _key(name)
    if name in SINGLE:
        return p * p, lambda s: {"X": ps[s // p], "Y": ps[s % p]}
    if key == "H0":
        return U.n, lambda s: {"d": s}
    if key in ("C5", "D5"):
        return U.n * U.n, lambda s: {"d": s // U.n, "h": s % U.n}
    if key == "H1":
        pairs = [(b, a) for a in lat.carrier for b in lat.carrier if lat.le(b, a)]
        k = len(pairs)
        return p * k, lambda s: {"Q": ps[s // k], "beta": pairs[s % k][0], "alpha": pairs[s % k][1]}
    if key == "L1":
        m = lat.size
        return p * m, lambda s: {"Q": ps[s // m], "alpha": s % m}
    if key in ("H2", "L2"):
        return 1 + p * p, lambda s: {"empty": True} if s == 0 else \
            {"W": ps[(s - 1) // p], "V": ps[(s - 1) % p]}
    return p, lambda s: {"W": ps[s]}


def _h1_valid(U, a) -> bool:
    lat = U.lattice
    return lat.le(lat.join_all(a["Q"].values), a["alpha"])


def evaluate(op: Operator, name: str, assignment: dict, terms: DirectTerms = None):
    """``(holds, witness-dict)`` of axiom ``name`` at one quantifier point."""
    D = terms or DirectTerms(op, family_of(name))
    if name in SINGLE:
        return _eval_single(D, name, assignment["X"], assignment["Y"])
    return _eval_component(D, name, assignment)


def _random_subset(U, rng):
    lat = U.lattice
    vals = []
    for u in U.membership:
        below = [e for e in lat.carrier if lat.le(e, u)]
        vals.append(rng.choice(below))
    return LSubset(U, tuple(vals))


def _random_assignment(U, name, rng):
    lat = U.lattice
    key = _key(name)
    if name in SINGLE:
        return {"X": _random_subset(U, rng), "Y": _random_subset(U, rng)}
    if key == "H0":
        return {"d": rng.randrange(U.n)}
    if key in ("C5", "D5"):
        return {"d": rng.randrange(U.n), "h": rng.randrange(U.n)}
    if key == "H1":
        Q = _random_subset(U, rng)
        top = lat.join_all(Q.values)
        al = rng.choice([e for e in lat.carrier if lat.le(top, e)])
        b = rng.choice([e for e in lat.carrier if lat.le(e, al)])
        return {"Q": Q, "beta": b, "alpha": al}
    if key == "L1":
        return {"Q": _random_subset(U, rng), "alpha": rng.randrange(lat.size)}
    if key in ("H2", "L2"):
        return {"W": _random_subset(U, rng), "V": _random_subset(U, rng)}
    return {"W": _random_subset(U, rng)}


def check_axiom(op: Operator, axiom, mode=EXHAUSTIVE, engine: str = "table") -> AxiomReport:
    """Check one axiom on ``op``.

    ``engine="direct"`` walks the exhaustive space element-wise instead of
    using tables; it is slower and exists for cross-checking.
    """
    ax = AxiomId.parse(axiom)
    mode = _mode(mode)
    _require(op, ax.family)
    U = op.universe
    if mode.kind == "sampled":
        rng = random.Random(mode.seed)
        D = DirectTerms(op, ax.family)
        for _ in range(mode.trials):
            ok, wit = evaluate(op, ax.name, _random_assignment(U, ax.name, rng), D)
            if not ok:
                return AxiomReport(ax, False, mode, mode.trials, wit, "direct")
        return AxiomReport(ax, True, mode, mode.trials, None, "direct")
    if engine == "table" and U.powerset_size > MATRIX_CAP:
        engine = "direct"
    if engine == "direct":
        size, decode = _space(U, ax.name)
        D = DirectTerms(op, ax.family)
        checked = 0
        witness = None
        for s in range(size):
            a = decode(s)
            if ax.name in ("H1", "C1") and not _h1_valid(U, a):
                continue
            checked += 1
            ok, wit = evaluate(op, ax.name, a, D)
            if not ok and witness is None:
                witness = wit
        return AxiomReport(ax, witness is None, mode, checked, witness, "direct")
    K = kernel_for(U)
    table = table_of(op)
    bad, checked = bad_table(K, ax.name, TableTerms(K, ax.family, table[None]))
    bad = bad[0]
    if not bad.any():
        return AxiomReport(ax, True, mode, checked)
    return AxiomReport(ax, False, mode, checked, witness_at(op, ax.name, int(bad.argmax())))


def witness_at(op: Operator, name: str, s: int) -> dict:
    """Decode flat quantifier index ``s`` and evaluate it element-wise."""
    _, decode = _space(op.universe, name)
    ok, wit = evaluate(op, name, decode(s))
    if ok:
        raise AssertionError(f"engines disagree on {name} at index {s}")
    return wit


def check_axiom_set(op: Operator, axioms, mode=EXHAUSTIVE) -> list:
    if isinstance(axioms, str):
        axioms = expand_axioms(axioms)
    return [check_axiom(op, a, mode) for a in axioms]


def expand_axioms(text: str) -> tuple:
    """``"C1-C5"`` or ``"H1+H2+H3"`` -> tuple of names."""
    if text in THEOREMS:
        return THEOREMS[text].components
    out = []
    for part in text.split("+"):
        if "-" in part:
            lo, hi = part.split("-")
            if lo[0] != hi[0]:
                raise ParseError(f"bad axiom range {part!r}")
            out.extend(f"{lo[0]}{k}" for k in range(int(lo[1:]), int(hi[1:]) + 1))
        else:
            out.append(part)
    for a in out:
        AxiomId.parse(a)
    return tuple(out)


# -- reconstruction ---------------------------------------------------------

def reconstruct_relation_upper(H: Operator) -> LValuedRelation:
    """``R(a, b) = H(U_a)(b)``; needs (H0)."""
    if H.direction != UPPER:
        raise DirectionMismatch("upper reconstruction needs an upper operator")
    U = H.universe
    rows = []
    for a in range(U.n):
        img = apply(H, point_subset(U, a))
        if not all(U.lattice.le(v, U.membership[a]) for v in img.values):
            raise H0Violated(f"H(U_{U.points[a]}) is not below U({U.points[a]})", point=U.points[a])
        rows.append(img.values)
    return LValuedRelation(U, tuple(rows))


def reconstruct_relation_lower(Lop: Operator) -> LValuedRelation:
    """``R(a, b) = not L(U_{X-a})(b)``; needs MV and a constant universe."""
    if Lop.direction != LOWER:
        raise DirectionMismatch("lower reconstruction needs a lower operator")
    U = Lop.universe
    if not U.lattice.caps.mv_algebra:
        raise RequiresMV("lower reconstruction needs an MV-algebra")
    if not U.is_constant:
        raise RequiresConstantUniverse("lower reconstruction needs a constant universe")
    return LValuedRelation(U, tuple(neg(apply(Lop, copoint_subset(U, a))).values
                                    for a in range(U.n)))


@dataclass
class CharacterizationReport:
    theorem: Theorem
    reports: list
    axiom_holds: bool
    relation: Optional[LValuedRelation]
    roundtrip_equal: bool
    properties: Optional[dict] = None
    reconstruction_error: Optional[str] = None
    predicted: bool = field(init=False)
    confirmed: bool = field(init=False)

    def __post_init__(self):
        has = bool(self.relation is not None and self.relation.properties.has(self.theorem.props))
        self.predicted = self.roundtrip_equal and has
        self.confirmed = self.axiom_holds == self.predicted

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem.name, "family": self.theorem.family,
            "required_properties": self.theorem.props,
            "axiom_holds": self.axiom_holds,
            "axioms": [r.to_dict() for r in self.reports],
            "relation": None if self.relation is None else self.relation.to_spec(),
            "properties": self.properties,
            "roundtrip_equal": self.roundtrip_equal,
            "reconstruction_error": self.reconstruction_error,
            "prediction": self.predicted, "confirmed": self.confirmed,
        }


def _same_map(F: Operator, G: Operator) -> bool:
    if F.universe.powerset_size > MATRIX_CAP:
        return all(apply(F, Q) == apply(G, Q) for Q in F.universe.powerset())
    return bool((table_of(F) == table_of(G)).all())


def theorem(name) -> Theorem:
    if isinstance(name, Theorem):
        return name
    if name not in THEOREMS:
        raise ParseError(f"unknown theorem {name!r}; known: {', '.join(THEOREMS)}")
    return THEOREMS[name]


def verify_characterization(thm, op: Operator, mode=EXHAUSTIVE) -> CharacterizationReport:
    th = theorem(thm)
    reports = [check_axiom(op, a, mode) for a in th.components]
    holds = all(r.holds for r in reports)
    rel, err = None, None
    try:
        rel = reconstruct_relation_upper(op) if th.family == UPPER else reconstruct_relation_lower(op)
    except (H0Violated, BoundViolation) as e:
        err = str(e)
    roundtrip = False
    if rel is not None:
        back = induced_upper(rel) if th.family == UPPER else induced_lower(rel)
        roundtrip = _same_map(back, op)
    props = None if rel is None else rel.properties.to_dict()
    return CharacterizationReport(th, reports, holds, rel, roundtrip, props, err)


def h5_equivalent(op: Operator) -> bool:
    """(H5) as table equality of the inverse and the operator."""
    return bool((table_of(upper_inverse(op)) == table_of(op)).all())


__all__ = [
    "AxiomId", "AxiomReport", "CharacterizationReport", "Mode", "Theorem", "THEOREMS", "SINGLE",
    "TABLE_ROWS", "EXHAUSTIVE", "sampled", "check_axiom", "check_axiom_set", "expand_axioms",
    "reconstruct_relation_upper", "reconstruct_relation_lower", "verify_characterization",
    "batch_holds", "batch_reconstruct", "table_rows", "formula", "family_of", "ALL_AXIOMS",
]
