"""Exact finite residuated lattices.

Elements are carrier indices ``0..m-1``; each carries an exact
:class:`fractions.Fraction` label used only for I/O.  All operation tables
are plain tuples so scalar lookups stay cheap, with numpy mirrors for the
vectorised kernels.

Distributivity of the tensor over arbitrary joins is checked through the
binary law ``a*(b v c) = (a*b) v (a*c)`` together with the empty join
``a*0 = 0``.  On a finite lattice every join is a finite iterated binary
join (or the empty one), so these two cases cover all families; the law
report additionally exercises the join of the whole carrier.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import LatticeTooLarge, NotALattice, NotResiduated, ParseError

DEFAULT_MAX_CARRIER = 64
# Lemma checks that quantify over every subset of the carrier do so only up to
# this size; beyond it they fall back to pairs plus the empty and full families.
SUBSET_LAW_LIMIT = 14


def parse_label(text) -> Fraction:
    """Parse ``"3/10"``, ``"0.3"`` or an int into an exact fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ParseError(f"not a rational label: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational label: {text!r}") from exc
    raise ParseError(f"labels must be strings of exact rationals, got {text!r}")


def format_label(value: Fraction) -> str:
    """Render a fraction as a finite decimal when exact, else ``p/q``."""
    value = Fraction(value)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    if value.denominator == 1:
        return str(value.numerator)
    digits = max(twos, fives)
    scaled = value * 10**digits
    sign = "-" if scaled < 0 else ""
    n = abs(scaled.numerator)
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


@dataclass(frozen=True)
class Capabilities:
    residuated: bool
    gl_quantale: bool
    mv_algebra: bool

    def to_dict(self):
        return {"residuated": self.residuated, "gl": self.gl_quantale, "mv": self.mv_algebra}


@dataclass(frozen=True, eq=False)
class FiniteResiduatedLattice:
    """A finite complete residuated lattice given by its tables.

    Instances are built through :func:`make_from_tables` (or one of the chain
    constructors), which verifies every law and computes :attr:`caps`.
    Equality is identity.
    """

    labels: tuple
    leq: tuple
    meet_table: tuple
    join_table: tuple
    tensor_table: tuple
    impl_table: tuple
    bot: int
    top: int
    caps: Capabilities
    name: str = "table"
    spec: dict = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def carrier(self) -> range:
        return range(len(self.labels))

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def tensor(self, a: int, b: int) -> int:
        return self.tensor_table[a][b]

    def impl(self, a: int, b: int) -> int:
        return self.impl_table[a][b]

    def neg(self, a: int) -> int:
        return self.impl_table[a][self.bot]

    def meet_all(self, elements) -> int:
        acc = self.top
        for e in elements:
            acc = self.meet_table[acc][e]
        return acc

    def join_all(self, elements) -> int:
        acc = self.bot
        for e in elements:
            acc = self.join_table[acc][e]
        return acc

    def label(self, e: int) -> str:
        return format_label(self.labels[e])

    def element(self, label) -> int:
        """Carrier index of a label (string, Fraction or int label value)."""
        value = parse_label(label)
        try:
            return self._label_index[value]
        except KeyError:
            raise ParseError(f"label {format_label(value)} is not on the carrier of {self.name}") from None

    @cached_property
    def _label_index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def is_index_chain(self) -> bool:
        """True when the order is a chain that agrees with index order."""
        return all(self.leq[a][b] == (a <= b) for a in self.carrier for b in self.carrier)

    # numpy mirrors for the vectorised kernels
    @cached_property
    def T(self) -> np.ndarray:
        return np.array(self.tensor_table, dtype=np.int64)

    @cached_property
    def I(self) -> np.ndarray:  # noqa: E743
        return np.array(self.impl_table, dtype=np.int64)

    @cached_property
    def M(self) -> np.ndarray:
        return np.array(self.meet_table, dtype=np.int64)

    @cached_property
    def J(self) -> np.ndarray:
        return np.array(self.join_table, dtype=np.int64)

    @cached_property
    def LE(self) -> np.ndarray:
        return np.array(self.leq, dtype=bool)

    def join_reduce(self, arr, axis=-1):
        arr = np.asarray(arr)
        if arr.shape[axis] == 0:
            return np.full(np.delete(arr.shape, axis % arr.ndim), self.bot, dtype=np.int64)
        if self.is_index_chain:
            return arr.max(axis=axis)
        arr = np.moveaxis(arr, axis, -1)
        acc = arr[..., 0]
        for k in range(1, arr.shape[-1]):
            acc = self.J[acc, arr[..., k]]
        return acc

    def meet_reduce(self, arr, axis=-1):
        arr = np.asarray(arr)
        if arr.shape[axis] == 0:
            return np.full(np.delete(arr.shape, axis % arr.ndim), self.top, dtype=np.int64)
        if self.is_index_chain:
            return arr.min(axis=axis)
        arr = np.moveaxis(arr, axis, -1)
        acc = arr[..., 0]
        for k in range(1, arr.shape[-1]):
            acc = self.M[acc, arr[..., k]]
        return acc

    def to_spec(self) -> dict:
        if self.spec is not None:
            return dict(self.spec)
        return {
            "kind": "table",
            "labels": [self.label(e) for e in self.carrier],
            "leq": [[int(x) for x in row] for row in self.leq],
            "tensor": [[self.label(x) for x in row] for row in self.tensor_table],
            "impl": [[self.label(x) for x in row] for row in self.impl_table],
        }

    def __repr__(self):
        return f"FiniteResiduatedLattice({self.name}, m={self.size}, caps={self.caps.to_dict()})"


def _lattice_structure(leq, labels):
    m = len(leq)
    for a in range(m):
        if not leq[a][a]:
            raise NotALattice(f"order is not reflexive at {labels[a]}", law="reflexive", witness=(a,))
    for a, b in itertools.product(range(m), repeat=2):
        if a != b and leq[a][b] and leq[b][a]:
            raise NotALattice(f"order is not antisymmetric at ({labels[a]}, {labels[b]})",
                              law="antisymmetric", witness=(a, b))
    for a, b, c in itertools.product(range(m), repeat=3):
        if leq[a][b] and leq[b][c] and not leq[a][c]:
            raise NotALattice("order is not transitive", law="transitive", witness=(a, b, c))

    def extremum(candidates, better):
        best = [x for x in candidates if all(better(y, x) for y in candidates)]
        return best[0] if len(best) == 1 else None

    meet = [[0] * m for _ in range(m)]
    join = [[0] * m for _ in range(m)]
    for a, b in itertools.product(range(m), repeat=2):
        lower = [x for x in range(m) if leq[x][a] and leq[x][b]]
        upper = [x for x in range(m) if leq[a][x] and leq[b][x]]
        g = extremum(lower, lambda y, x: leq[y][x])
        lub = extremum(upper, lambda y, x: leq[x][y])
        if g is None:
            raise NotALattice(f"no meet for ({labels[a]}, {labels[b]})", law="meet", witness=(a, b))
        if lub is None:
            raise NotALattice(f"no join for ({labels[a]}, {labels[b]})", law="join", witness=(a, b))
        meet[a][b] = g
        join[a][b] = lub
    bot = extremum(list(range(m)), lambda y, x: leq[x][y])
    top = extremum(list(range(m)), lambda y, x: leq[y][x])
    return meet, join, bot, top


def make_from_tables(labels, leq, tensor, impl=None, name="table", max_size=DEFAULT_MAX_CARRIER,
                     spec=None) -> FiniteResiduatedLattice:
    """Validate tables and build a lattice.

    ``tensor`` and ``impl`` are index tables.  When ``impl`` is omitted it is
    derived as the join of ``{g : a*g <= b}``.  Raises :class:`NotALattice`
    or :class:`NotResiduated` with the first violating tuple as witness.
    """
    labels = tuple(parse_label(x) for x in labels)
    m = len(labels)
    if m == 0:
        raise NotALattice("empty carrier", law="nonempty")
    if m > max_size:
        raise LatticeTooLarge(f"carrier of size {m} exceeds cap {max_size}", size=m)
    if len(set(labels)) != m:
        raise ParseError("duplicate element labels")
    leq = tuple(tuple(bool(x) for x in row) for row in leq)
    tensor = tuple(tuple(int(x) for x in row) for row in tensor)
    for tab, what in ((leq, "leq"), (tensor, "tensor")):
        if len(tab) != m or any(len(row) != m for row in tab):
            raise ParseError(f"{what} table must be {m}x{m}")
    if any(not 0 <= x < m for row in tensor for x in row):
        raise ParseError("tensor table refers to an element outside the carrier")

    meet, join, bot, top = _lattice_structure(leq, labels)
    lab = [format_label(x) for x in labels]
    R = range(m)

    def fail(law, *w):
        raise NotResiduated(f"tensor law '{law}' fails at ({', '.join(lab[x] for x in w)})",
                            law=law, witness=tuple(w))

    for a, b in itertools.product(R, repeat=2):
        if tensor[a][b] != tensor[b][a]:
            fail("commutative", a, b)
    for a in R:
        if tensor[a][top] != a:
            fail("unit", a)
        if tensor[a][bot] != bot:
            fail("empty-join distributive", a)
    for a, b, c in itertools.product(R, repeat=3):
        if tensor[tensor[a][b]][c] != tensor[a][tensor[b][c]]:
            fail("associative", a, b, c)
        if tensor[a][join[b][c]] != join[tensor[a][b]][tensor[a][c]]:
            fail("join distributive", a, b, c)

    if impl is None:
        impl_rows = []
        for a in R:
            row = []
            for b in R:
                acc = bot
                for g in R:
                    if leq[tensor[a][g]][b]:
                        acc = join[acc][g]
                row.append(acc)
            impl_rows.append(tuple(row))
        impl = tuple(impl_rows)
    else:
        impl = tuple(tuple(int(x) for x in row) for row in impl)
        if len(impl) != m or any(len(row) != m for row in impl):
            raise ParseError(f"impl table must be {m}x{m}")
        if any(not 0 <= x < m for row in impl for x in row):
            raise ParseError("impl table refers to an element outside the carrier")
    for a, b, g in itertools.product(R, repeat=3):
        if leq[tensor[a][g]][b] != leq[g][impl[a][b]]:
            fail("adjunction", a, b, g)

    gl = all(meet[a][b] == tensor[a][impl[a][b]] for a in R for b in R)
    mv = gl and all(impl[impl[g][bot]][bot] == g for g in R)
    caps = Capabilities(residuated=True, gl_quantale=gl, mv_algebra=mv)
    return FiniteResiduatedLattice(
        labels=labels, leq=leq,
        meet_table=tuple(tuple(r) for r in meet), join_table=tuple(tuple(r) for r in join),
        tensor_table=tensor, impl_table=impl, bot=bot, top=top, caps=caps, name=name, spec=spec,
    )


def _chain_leq(n):
    return [[a <= b for b in range(n + 1)] for a in range(n + 1)]


def make_lukasiewicz_chain(levels: int, **kw) -> FiniteResiduatedLattice:
    """The chain {0, 1/n, ..., 1} with a*b = max(a+b-1, 0)."""
    n = _check_levels(levels)
    labels = [Fraction(k, n) for k in range(n + 1)]
    tensor = [[max(i + j - n, 0) for j in range(n + 1)] for i in range(n + 1)]
    impl = [[min(n, n - i + j) for j in range(n + 1)] for i in range(n + 1)]
    return make_from_tables(labels, _chain_leq(n), tensor, impl, name=f"lukasiewicz-{n}",
                            spec={"kind": "lukasiewicz", "levels": n}, **kw)


def make_goedel_chain(levels: int, **kw) -> FiniteResiduatedLattice:
    """The chain {0, 1/n, ..., 1} with a*b = min(a, b)."""
    n = _check_levels(levels)
    labels = [Fraction(k, n) for k in range(n + 1)]
    tensor = [[min(i, j) for j in range(n + 1)] for i in range(n + 1)]
    impl = [[n if i <= j else j for j in range(n + 1)] for i in range(n + 1)]
    return make_from_tables(labels, _chain_leq(n), tensor, impl, name=f"goedel-{n}",
                            spec={"kind": "goedel", "levels": n}, **kw)


def make_boolean(**kw) -> FiniteResiduatedLattice:
    return make_from_tables([0, 1], _chain_leq(1), [[0, 0], [0, 1]], [[1, 1], [0, 1]],
                            name="boolean", spec={"kind": "boolean"}, **kw)


def _check_levels(levels):
    if isinstance(levels, bool) or not isinstance(levels, int) or levels < 1:
        raise ParseError(f"levels must be a positive integer, got {levels!r}")
    return levels


# ---------------------------------------------------------------------------
# law verification


@dataclass
class LawResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    checked: int = 0
    witness: tuple | None = None
    note: str = ""

    def to_dict(self, lat=None):
        d = {"law": self.name, "status": self.status, "checked": self.checked}
        if self.witness is not None:
            d["witness"] = [_fmt_witness(lat, w) for w in self.witness]
        if self.note:
            d["note"] = self.note
        return d


def _fmt_witness(lat, w):
    if lat is None:
        return w
    if isinstance(w, (tuple, frozenset, list)):
        return [lat.label(x) for x in sorted(w)]
    return lat.label(w)


@dataclass
class LawReport:
    lattice: FiniteResiduatedLattice
    results: list

    @property
    def all_passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def get(self, name) -> LawResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self):
        return {
            "lattice": self.lattice.name,
            "caps": self.lattice.caps.to_dict(),
            "all_passed": self.all_passed,
            "laws": [r.to_dict(self.lattice) for r in self.results],
        }


def _families(lat):
    """Families of carrier elements quantified over by the big-meet/join laws."""
    R = list(lat.carrier)
    if lat.size <= SUBSET_LAW_LIMIT:
        for k in range(len(R) + 1):
            yield from itertools.combinations(R, k)
    else:
        yield ()
        yield tuple(R)
        yield from itertools.combinations(R, 1)
        yield from itertools.combinations(R, 2)


def _run(name, cases, pred):
    checked = 0
    for case in cases:
        checked += 1
        if not pred(*case):
            return LawResult(name, "fail", checked, case)
    return LawResult(name, "pass", checked)


def verify_laws(lat: FiniteResiduatedLattice) -> LawReport:
    """Exhaustively check the residuation, GL and MV lemma items on ``lat``."""
    R = list(lat.carrier)
    le, T, Im, Mt = lat.le, lat.tensor, lat.impl, lat.meet
    bot, top = lat.bot, lat.top
    triples = list(itertools.product(R, repeat=3))
    pairs = list(itertools.product(R, repeat=2))
    out = []

    out.append(_run("residuation.1 adjunction", triples,
                    lambda a, b, g: le(T(a, g), b) == le(g, Im(a, b))))
    out.append(_run("residuation.2 modus ponens", pairs,
                    lambda a, b: le(T(Im(a, b), a), b)))
    out.append(_run("residuation.3 currying", triples,
                    lambda a, b, g: Im(a, Im(b, g)) == Im(T(a, b), g)))
    out.append(_run("residuation.4 order via implication", pairs,
                    lambda a, b: le(a, b) == (Im(a, b) == top)))
    fam_cases = [(b, fam) for fam in _families(lat) for b in R]
    out.append(_run("residuation.5 implication into meets", fam_cases,
                    lambda b, fam: Im(b, lat.meet_all(fam)) == lat.meet_all(Im(b, a) for a in fam)))
    out.append(_run("residuation.6 implication out of joins", fam_cases,
                    lambda b, fam: Im(lat.join_all(fam), b) == lat.meet_all(Im(a, b) for a in fam)))
    out.append(_run("tensor distributes over joins", fam_cases,
                    lambda b, fam: T(b, lat.join_all(fam)) == lat.join_all(T(b, a) for a in fam)))

    gl_names = ["gl.1 divisibility below", "gl.2 exchange", "gl.3 tensor-implication"]
    if lat.caps.gl_quantale:
        out.append(_run(gl_names[0], pairs,
                        lambda b, g: not le(b, g) or b == T(g, Im(g, b))))
        out.append(_run(gl_names[1], triples,
                        lambda a, b, g: not (le(a, g) and le(b, g)) or T(a, Im(g, b)) == T(b, Im(g, a))))
        out.append(_run(gl_names[2], triples,
                        lambda a, b, g: not le(b, g) or T(g, Im(b, a)) == Mt(g, Im(Im(g, b), a))))
    else:
        out.extend(LawResult(n, "skipped", note="lattice is not a GL-quantale") for n in gl_names)

    mv_names = ["mv.1 contraposition", "mv.2 tensor distributes over meets"]
    if lat.caps.mv_algebra:
        out.append(_run(mv_names[0], pairs,
                        lambda b, g: Im(b, g) == Im(Im(g, bot), Im(b, bot))))
        # the empty family is excluded: b*(meet of nothing) = b, not 1
        nonempty = [(b, fam) for b, fam in fam_cases if fam]
        out.append(_run(mv_names[1], nonempty,
                        lambda b, fam: T(b, lat.meet_all(fam)) == lat.meet_all(T(b, a) for a in fam)))
    else:
        out.extend(LawResult(n, "skipped", note="lattice is not an MV-algebra") for n in mv_names)
    return LawReport(lat, out)


# ---------------------------------------------------------------------------
# JSON lattice specs


def lattice_from_spec(spec: dict, max_size=DEFAULT_MAX_CARRIER) -> FiniteResiduatedLattice:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ParseError("lattice spec must be an object with a 'kind' field")
    kind = spec["kind"]
    if kind == "lukasiewicz":
        return make_lukasiewicz_chain(spec.get("levels"), max_size=max_size)
    if kind == "goedel":
        return make_goedel_chain(spec.get("levels"), max_size=max_size)
    if kind == "boolean":
        return make_boolean(max_size=max_size)
    if kind != "table":
        raise ParseError(f"unknown lattice kind {kind!r}")
    try:
        labels = [parse_label(x) for x in spec["labels"]]
        leq = spec["leq"]
        tensor = spec["tensor"]
    except KeyError as exc:
        raise ParseError(f"table lattice spec is missing {exc}") from None
    index = {lab: i for i, lab in enumerate(labels)}

    def cell(x):
        if isinstance(x, int) and not isinstance(x, bool):
            return x
        try:
            return index[parse_label(x)]
        except KeyError:
            raise ParseError(f"table entry {x!r} is not a carrier label") from None

    def table(rows):
        return [[cell(x) for x in row] for row in rows]

    impl = spec.get("impl")
    return make_from_tables(labels, leq, table(tensor), None if impl is None else table(impl),
                            name=spec.get("name", "table"), max_size=max_size, spec=dict(spec))
