"""Brute-force verification of the characterization theorems on finite instances.

Soundness: every relation with a property set induces an operator that
satisfies the matching axiom.  Completeness: every operator table that
satisfies an axiom is induced by a relation with the matching properties
(checked by reconstruction and round trip).  Both directions are also
checked in the converse sense, so any disagreement between "axiom holds"
and "characterized" counts as a refutation.
"""
from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .approx import LOWER, UPPER, builtin, induced_lower, induced_upper, table_operator
from .axiom import THEOREMS, SINGLE, batch_holds, batch_reconstruct, table_rows, witness_at
from .errors import OperatorSpaceTooLarge, ParseError, RelationSpaceTooLarge
from .kernel import kernel_for
from .lattice import lattice_from_spec
from .relation import LValuedRelation, properties_array
from .universe import LSubset, Universe, universe_from_spec

SCHEMA_VERSION = 1
DEFAULT_MAX_OPERATORS = 10 ** 7
CHUNK = 8192


@dataclass
class Budget:
    max_relations: int = 1_000_000
    max_operators: int = DEFAULT_MAX_OPERATORS
    sample_seed: int = 42
    sample_trials: int = 0

    def __post_init__(self):
        for k, v in asdict(self).items():
            if k != "sample_seed" and (not isinstance(v, int) or v < 0):
                raise ParseError(f"budget.{k} must be a non-negative integer")


@dataclass
class InstanceSpec:
    name: str
    lattice: dict
    universe: dict
    scope: Optional[list] = None  # theorem names; None means all
    budget: Budget = field(default_factory=Budget)

    @classmethod
    def from_dict(cls, d: dict) -> "InstanceSpec":
        if not isinstance(d, dict) or "lattice" not in d or "universe" not in d:
            raise ParseError("instance needs 'lattice' and 'universe'")
        scope = d.get("scope")
        if scope in ("all", None):
            scope = None
        elif not isinstance(scope, list) or any(s not in THEOREMS for s in scope):
            raise ParseError("scope must be 'all' or a list of theorem names")
        return cls(d.get("name", "instance"), d["lattice"], d["universe"], scope,
                   Budget(**d.get("budget", {})))

    def to_dict(self) -> dict:
        return {"name": self.name, "lattice": self.lattice, "universe": self.universe,
                "scope": self.scope if self.scope is not None else "all",
                "budget": asdict(self.budget)}

    def build(self) -> Universe:
        return universe_from_spec(lattice_from_spec(self.lattice), self.universe)


def _fixture(name, lattice, membership, **budget):
    return InstanceSpec(name, lattice, {"points": list(membership), "membership": membership},
                        budget=Budget(**budget))


FIXTURES = {
    "boolean2x": _fixture("boolean2x", {"kind": "boolean"}, {"a": "1", "b": "1"}),
    "luk2x1": _fixture("luk2x1", {"kind": "lukasiewicz", "levels": 2}, {"a": "1"}),
    "luk2x2": _fixture("luk2x2", {"kind": "lukasiewicz", "levels": 2}, {"a": "1", "b": "1"}),
    "goedel2x2": _fixture("goedel2x2", {"kind": "goedel", "levels": 2}, {"a": "1", "b": "1/2"}),
}


def fixture(name: str) -> InstanceSpec:
    if name not in FIXTURES:
        raise ParseError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return FIXTURES[name]


# -- rows -------------------------------------------------------------------

@dataclass(frozen=True)
class Row:
    """One theorem instance: ``components`` hold iff induced by a ``props`` relation."""
    id: str
    theorem: str
    family: str
    props: str
    components: tuple


def family_ok(U: Universe, family: str):
    """``None`` when the family applies, else a machine-readable reason."""
    if family == UPPER:
        return None
    if not U.lattice.caps.mv_algebra:
        return "requires-mv"
    if not U.is_constant:
        return "requires-constant-universe"
    return None


def rows_for(scope=None) -> list:
    rows = []
    for fam in (UPPER, LOWER):
        for props, ax in table_rows(fam):
            rows.append(Row(f"{ax}[{props or 'general'}]", ax, fam, props, (ax,)))
        for name, th in THEOREMS.items():
            if th.family == fam and name not in SINGLE:
                rows.append(Row(name, name, fam, th.props, th.components))
    if scope is not None:
        rows = [r for r in rows if r.theorem in scope]
    return rows


@dataclass
class RowResult:
    row: str
    theorem: str
    family: str
    direction: str
    status: str  # confirmed | refuted | skipped
    cases_checked: int = 0
    positives: int = 0
    witness: Optional[dict] = None
    reason: Optional[str] = None

    def to_dict(self):
        d = {"row": self.row, "theorem": self.theorem, "family": self.family,
             "direction": self.direction, "status": self.status,
             "cases_checked": self.cases_checked, "positives": self.positives}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason is not None:
            d["reason"] = self.reason
        return d


@dataclass
class VerificationMatrix:
    instance: InstanceSpec
    results: list = field(default_factory=list)

    def extend(self, results):
        self.results.extend(results)
        return self

    @property
    def refuted(self) -> list:
        return [r for r in self.results if r.status == "refuted"]

    @property
    def ok(self) -> bool:
        return not self.refuted

    def summary(self) -> dict:
        out = {"confirmed": 0, "refuted": 0, "skipped": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "instance": self.instance.to_dict(),
                "summary": self.summary(), "rows": [r.to_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# -- relation space ---------------------------------------------------------

def relation_arrays(U: Universe, cap: int) -> np.ndarray:
    """All relation matrices ``(N, n, n)`` in canonical row-major order."""
    lat = U.lattice
    cells = []
    for ua in U.membership:
        for ud in U.membership:
            b = lat.meet(ua, ud)
            cells.append([e for e in lat.carrier if lat.le(e, b)])
    size = int(np.prod([len(c) for c in cells], dtype=object))
    if size > cap:
        raise RelationSpaceTooLarge(f"relation space has {size} members, cap {cap}", size=size)
    flat = np.array(list(itertools.product(*cells)), dtype=np.int64)
    return flat.reshape(size, U.n, U.n)


def _mask(props: dict, letters: str, size: int) -> np.ndarray:
    m = np.ones(size, dtype=bool)
    for c in letters:
        m &= props[c]
    return m


def _relation_spec(U, A) -> dict:
    return LValuedRelation(U, tuple(tuple(int(v) for v in row) for row in A)).to_spec()


def verify_soundness(inst: InstanceSpec) -> list:
    U = inst.build()
    K = kernel_for(U)
    rows = rows_for(inst.scope)
    Rs = relation_arrays(U, inst.budget.max_relations)
    props = properties_array(U.lattice, Rs, K.u)
    out = []
    for fam in (UPPER, LOWER):
        frows = [r for r in rows if r.family == fam]
        reason = family_ok(U, fam)
        if reason:
            out.extend(RowResult(r.id, r.theorem, fam, "soundness", "skipped", reason=reason)
                       for r in frows)
            continue
        tables = K.upper_table(Rs) if fam == UPPER else K.lower_table(Rs)
        names = sorted({c for r in frows for c in r.components})
        holds = batch_holds(K, fam, names, tables)
        for r in frows:
            m = _mask(props, r.props, len(Rs))
            ok = np.ones(len(Rs), dtype=bool)
            for c in r.components:
                ok &= holds[c][0]
            bad = m & ~ok
            res = RowResult(r.id, r.theorem, fam, "soundness", "confirmed",
                            cases_checked=int(m.sum()), positives=int(m.sum()))
            if bad.any():
                i = int(bad.argmax())
                op = induced_upper if fam == UPPER else induced_lower
                R = LValuedRelation(U, tuple(tuple(int(v) for v in row) for row in Rs[i]))
                failing = next(c for c in r.components if not holds[c][0][i])
                res.status = "refuted"
                res.witness = {"relation": R.to_spec(), "axiom": failing,
                               "detail": witness_at(op(R), failing, int(holds[failing][1][i]))}
            out.append(res)
    return out


# -- completeness -----------------------------------------------------------

def _check_tables(U, K, fam, frows, tables):
    """Per-row ``(positives, first_bad_local_index or -1, kind)`` for a batch."""
    names = sorted({c for r in frows for c in r.components})
    holds = batch_holds(K, fam, names, tables)
    rec = batch_reconstruct(K, fam, tables)
    res = []
    for r in frows:
        ok = np.ones(len(tables), dtype=bool)
        for c in r.components:
            ok &= holds[c][0]
        pred = rec["roundtrip"] & _mask(rec["props"], r.props, len(tables))
        mism = ok != pred
        first = int(mism.argmax()) if mism.any() else -1
        res.append((int(ok.sum()), first))
    return res


def _completeness_worker(args):
    inst_dict, fam, row_ids, tables = args
    inst = InstanceSpec.from_dict(inst_dict)
    U = inst.build()
    K = kernel_for(U)
    frows = [r for r in rows_for() if r.id in row_ids]
    return _check_tables(U, K, fam, frows, tables)


def _exhaustive_chunks(p: int, total: int):
    radix = p ** np.arange(p - 1, -1, -1, dtype=np.int64)
    for s in range(0, total, CHUNK):
        idx = np.arange(s, min(s + CHUNK, total), dtype=np.int64)
        yield s, (idx[:, None] // radix[None, :]) % p


def _run_completeness(inst, U, K, chunks, direction, jobs=1, extra_witness=None):
    rows = rows_for(inst.scope)
    out = []
    for fam in (UPPER, LOWER):
        frows = [r for r in rows if r.family == fam]
        reason = family_ok(U, fam)
        if reason:
            out.extend(RowResult(r.id, r.theorem, fam, direction, "skipped", reason=reason)
                       for r in frows)
            continue
        ids = [r.id for r in frows]
        pos = [0] * len(frows)
        first = [None] * len(frows)
        count = 0
        chunk_list = list(chunks())
        jobs_args = [(inst.to_dict(), fam, ids, t) for _, t in chunk_list]
        if jobs > 1 and len(chunk_list) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                results = list(ex.map(_completeness_worker, jobs_args))
        else:
            results = [_check_tables(U, K, fam, frows, t) for _, t in chunk_list]
        # merge in chunk order so the canonical first witness wins
        for (start, t), res in zip(chunk_list, results):
            count += len(t)
            for k, (npos, f) in enumerate(res):
                pos[k] += npos
                if f >= 0 and first[k] is None:
                    first[k] = (start + f, t[f])
        for k, r in enumerate(frows):
            res = RowResult(r.id, r.theorem, fam, direction, "confirmed", cases_checked=count,
                            positives=pos[k])
            if first[k] is not None:
                res.status = "refuted"
                res.witness = _completeness_witness(U, fam, r, *first[k])
                if extra_witness:
                    res.witness.update(extra_witness)
            out.append(res)
    return out


def _completeness_witness(U, fam, row, index, table):
    from .axiom import verify_characterization

    ps = U.powerset()
    op = table_operator(U, table, fam)
    rep = verify_characterization(row.theorem, op)
    return {"operator_index": int(index), "table": [ps[int(i)].to_spec()["values"] for i in table],
            "report": rep.to_dict(), "row_props": row.props}


def operator_space_size(U: Universe) -> int:
    p = U.powerset_size
    return p ** p


def verify_completeness_exhaustive(inst: InstanceSpec, jobs: int = 1) -> list:
    U = inst.build()
    size = operator_space_size(U)
    if size > inst.budget.max_operators:
        p = U.powerset_size
        raise OperatorSpaceTooLarge(
            f"{p}^{p} = {size} operator tables exceed max_operators {inst.budget.max_operators}",
            size=size)
    K = kernel_for(U)
    return _run_completeness(inst, U, K, lambda: _exhaustive_chunks(K.p, size),
                             "completeness", jobs)


def sample_operators(U: Universe, seed: int, trials: int, max_relations: int = 1_000_000):
    """Seeded operator tables: half uniform, half perturbed induced tables.

    Induced tables come from relations drawn per property set of the
    characterization table (so every row gets positive cases) and then have
    0 to 3 entries overwritten with random subset indices.
    """
    K = kernel_for(U)
    rng = np.random.default_rng(seed)
    p = K.p
    n_uniform = trials // 2
    n_biased = trials - n_uniform
    uniform = rng.integers(0, p, size=(n_uniform, p))
    try:
        Rs = relation_arrays(U, max_relations)
    except RelationSpaceTooLarge:
        Rs = None
    if Rs is not None:
        props = properties_array(U.lattice, Rs, K.u)
        pools = [np.flatnonzero(_mask(props, letters, len(Rs)))
                 for letters in sorted({pr for pr, _ in table_rows(UPPER)})]
        pools = [pl for pl in pools if len(pl)]
        which = rng.integers(0, len(pools), size=n_biased)
        pick = np.array([pools[w][rng.integers(0, len(pools[w]))] for w in which], dtype=np.int64)
        chosen = Rs[pick]
    else:
        bound = U.lattice.M[K.u[:, None], K.u[None, :]]
        chosen = rng.integers(0, U.lattice.size, size=(n_biased, U.n, U.n))
        chosen = np.where(U.lattice.LE[chosen, bound], chosen, bound)
    fam_pick = rng.integers(0, 2, size=n_biased)
    has_lower = family_ok(U, LOWER) is None
    up = K.upper_table(chosen)
    biased = up.copy()
    if has_lower:
        lo = K.lower_table(chosen)
        biased = np.where(fam_pick[:, None] == 1, lo, up)
    k = rng.integers(0, 4, size=n_biased)
    for j in range(3):
        pos = rng.integers(0, p, size=n_biased)
        val = rng.integers(0, p, size=n_biased)
        sel = k > j
        biased[sel, pos[sel]] = val[sel]
    return np.concatenate([uniform, biased], axis=0)


def verify_completeness_sampled(inst: InstanceSpec, trials: int = None, seed: int = None,
                                jobs: int = 1) -> list:
    U = inst.build()
    K = kernel_for(U)
    seed = inst.budget.sample_seed if seed is None else seed
    trials = inst.budget.sample_trials if trials is None else trials
    tables = sample_operators(U, seed, trials, inst.budget.max_relations)

    def chunks():
        for s in range(0, len(tables), CHUNK):
            yield s, tables[s:s + CHUNK]

    return _run_completeness(inst, U, K, chunks, "completeness-sampled", jobs,
                             extra_witness={"seed": seed})


def run(inst: InstanceSpec, jobs: int = 1, sampled: Optional[bool] = None) -> VerificationMatrix:
    """Soundness, exhaustive completeness when affordable, sampled when budgeted."""
    M = VerificationMatrix(inst)
    M.extend(verify_soundness(inst))
    try:
        M.extend(verify_completeness_exhaustive(inst, jobs))
    except OperatorSpaceTooLarge as e:
        M.extend(RowResult(r.id, r.theorem, r.family, "completeness", "skipped",
                           reason=f"operator-space-too-large: {e}") for r in rows_for(inst.scope))
    trials = inst.budget.sample_trials
    if sampled is None:
        sampled = trials > 0
    if sampled and trials > 0:
        M.extend(verify_completeness_sampled(inst, jobs=jobs))
    return M


# -- classical degeneracy ---------------------------------------------------

class Classical:
    """Formulas over a crisp base set, written against raw lattice tables.

    Deliberately shares no code with ``approx``/``product`` so that the
    comparison in ``classical_degeneracy_suite`` is a real second opinion.
    """

    def __init__(self, lat):
        self.t, self.i, self.m, self.j = lat.tensor_table, lat.impl_table, lat.meet_table, \
            lat.join_table
        self.bot, self.top = lat.bot, lat.top

    def _sup(self, xs):
        acc = self.bot
        for x in xs:
            acc = self.j[acc][x]
        return acc

    def _inf(self, xs):
        acc = self.top
        for x in xs:
            acc = self.m[acc][x]
        return acc

    def upper(self, R, Q):
        n = len(Q)
        return tuple(self._sup(self.t[Q[d]][R[d][a]] for d in range(n)) for a in range(n))

    def lower(self, R, Q):
        n = len(Q)
        return tuple(self._inf(self.i[R[d][a]][Q[d]] for d in range(n)) for a in range(n))

    def inner(self, M, Q):
        return self._sup(self.t[x][y] for x, y in zip(M, Q))

    def subsethood(self, M, Q):
        return self._inf(self.i[x][y] for x, y in zip(M, Q))

    def outer(self, M, Q):
        return self._inf(self.i[self.i[x][self.bot]][y] for x, y in zip(M, Q))

    def chi(self, n, d):
        return tuple(self.top if x == d else self.bot for x in range(n))

    def co_chi(self, n, d):
        return tuple(self.bot if x == d else self.top for x in range(n))

    def upper_inverse(self, Hf, Q):
        n = len(Q)
        return tuple(self._sup(self.t[Hf(self.chi(n, d))[x]][Q[x]] for x in range(n))
                     for d in range(n))

    def lower_inverse(self, Lf, Q):
        n = len(Q)
        return tuple(self._inf(self.i[self.i[Lf(self.co_chi(n, d))[x]][self.bot]][Q[x]]
                               for x in range(n)) for d in range(n))


@dataclass
class DegeneracyReport:
    lattice: str
    n: int
    cases: dict
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self):
        return {"schema_version": SCHEMA_VERSION, "lattice": self.lattice, "points": self.n,
                "cases": self.cases, "mismatches": self.mismatches[:20],
                "mismatch_count": len(self.mismatches), "ok": self.ok}


def classical_degeneracy_suite(U: Universe, max_relations: int = 100_000) -> DegeneracyReport:
    """Compare every operator and product with ``Classical`` on U = constant 1."""
    from .approx import apply, lower_approx, upper_approx
    from .product import inner_product, lower_inverse, outer_product, subsethood, upper_inverse

    lat = U.lattice
    if not (U.is_constant and U.membership[0] == lat.top):
        raise ParseError("the degeneracy suite needs the constant universe 1")
    C = Classical(lat)
    ps = U.powerset()
    subsets = list(ps)
    mv = lat.caps.mv_algebra
    cases = {k: 0 for k in ("upper", "lower", "inner", "subsethood", "outer", "upper_inverse",
                            "lower_inverse")}
    bad = []

    def cmp(kind, ours, theirs, **ctx):
        cases[kind] += 1
        if ours != theirs:
            bad.append({"kind": kind, "ours": repr(ours), "classical": repr(theirs), **ctx})

    for M in subsets:
        for Q in subsets:
            cmp("inner", inner_product(M, Q), C.inner(M.values, Q.values), M=M.values, Q=Q.values)
            cmp("subsethood", subsethood(M, Q), C.subsethood(M.values, Q.values),
                M=M.values, Q=Q.values)
            cmp("outer", outer_product(M, Q), C.outer(M.values, Q.values), M=M.values, Q=Q.values)
    Rs = relation_arrays(U, max_relations)
    for A in Rs:
        R = LValuedRelation(U, tuple(tuple(int(v) for v in row) for row in A))
        Hop = induced_upper(R)
        Hinv = upper_inverse(Hop)
        Hf = lambda vals, R=R: C.upper(R.matrix, vals)  # noqa: E731
        Lop = induced_lower(R)
        Linv = lower_inverse(Lop) if mv else None
        Lf = lambda vals, R=R: C.lower(R.matrix, vals)  # noqa: E731
        for Q in subsets:
            cmp("upper", upper_approx(R, Q).values, C.upper(R.matrix, Q.values),
                R=R.matrix, Q=Q.values)
            cmp("lower", lower_approx(R, Q).values, C.lower(R.matrix, Q.values),
                R=R.matrix, Q=Q.values)
            cmp("upper_inverse", apply(Hinv, Q).values, C.upper_inverse(Hf, Q.values),
                R=R.matrix, Q=Q.values)
            if Linv is not None:
                cmp("lower_inverse", apply(Linv, Q).values, C.lower_inverse(Lf, Q.values),
                    R=R.matrix, Q=Q.values)
    for name, d in (("identity", UPPER), ("h1_largest", UPPER)):
        op = builtin(U, name, d)
        inv = upper_inverse(op)
        for Q in subsets:
            cmp("upper_inverse", apply(inv, Q).values,
                C.upper_inverse(lambda v: apply(op, LSubset(U, v)).values, Q.values),
                op=name, Q=Q.values)
    if mv:
        for name in ("identity", "l1_least"):
            op = builtin(U, name, LOWER)
            inv = lower_inverse(op)
            for Q in subsets:
                cmp("lower_inverse", apply(inv, Q).values,
                    C.lower_inverse(lambda v: apply(op, LSubset(U, v)).values, Q.values),
                    op=name, Q=Q.values)
    return DegeneracyReport(lat.name, U.n, cases, bad)


__all__ = [
    "Budget", "InstanceSpec", "VerificationMatrix", "RowResult", "Row", "FIXTURES", "fixture",
    "rows_for", "verify_soundness", "verify_completeness_exhaustive", "verify_completeness_sampled",
    "sample_operators", "run", "classical_degeneracy_suite", "Classical", "relation_arrays",
    "operator_space_size",
]
