"""Command-line front end.

Every command prints one JSON document (sorted keys, two-space indent) and
exits 0 on success, 1 when a check fails, 2 on invalid input and 3 when a
budget is exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .approx import (BUILTINS, LOWER, UPPER, apply, lower_approx, operator_from_spec,
                     operator_to_spec, upper_approx)
from .axiom import (THEOREMS, check_axiom, expand_axioms, family_of, reconstruct_relation_lower,
                    reconstruct_relation_upper, sampled, theorem, verify_characterization)
from .errors import (BudgetExceeded, H0Violated, InputError, LawViolation, LVRoughError,
                     ParseError)
from .fixtures import EXAMPLES
from .lattice import format_label, lattice_from_spec, parse_label, verify_laws
from .oracle import (FIXTURES, SCHEMA_VERSION, InstanceSpec, classical_degeneracy_suite,
                     fixture as oracle_fixture, run as oracle_run)
from .product import (NONCONSTANT, inner_product, lower_inverse, outer_product, subsethood,
                      upper_inverse)
from .relation import relation_from_spec
from .universe import Universe, subset_from_spec, universe_from_spec, verify_universe_laws

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_FIXTURE = "luk2x2"


# -- input ------------------------------------------------------------------

def load_json(arg, what: str):
    """Parse ``arg`` as a path, or as inline JSON when it starts with ``{``."""
    if arg is None:
        return None
    text = arg.strip()
    source = "<inline>"
    if not text.startswith(("{", "[")):
        source = arg
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise ParseError(f"{what}: cannot read {arg}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{what}: malformed JSON in {source} at line {e.lineno} column {e.colno}"
                         f" (char {e.pos}): {e.msg}") from None


def _fixture_doc(name) -> dict:
    if name in EXAMPLES:
        return EXAMPLES[name]
    if name in FIXTURES:
        inst = FIXTURES[name]
        return {"lattice": inst.lattice, "universe": inst.universe}
    raise ParseError(f"unknown fixture {name!r}; known: {', '.join([*EXAMPLES, *FIXTURES])}")


@dataclass
class Workspace:
    """Resolved inputs of one command."""
    universe: Universe
    doc: dict  # the fixture (or embedded) document, for defaults

    @property
    def lattice(self):
        return self.universe.lattice

    def part(self, args, attr: str, key: str, what: str):
        spec = load_json(getattr(args, attr, None), what)
        if spec is None:
            spec = self.doc.get(key)
        return spec


def workspace(args, *embedded) -> Workspace:
    """Lattice and universe from flags, then fixture, then embedded docs, then the default."""
    doc = _fixture_doc(args.fixture) if getattr(args, "fixture", None) else {}
    lat_spec = load_json(getattr(args, "lattice", None), "lattice")
    uni_spec = load_json(getattr(args, "universe", None), "universe")
    if isinstance(lat_spec, dict) and "lattice" in lat_spec:
        lat_spec = lat_spec["lattice"]
    if isinstance(uni_spec, dict) and "universe" in uni_spec:
        lat_spec = lat_spec or uni_spec.get("lattice")
        uni_spec = uni_spec["universe"]
    elif isinstance(uni_spec, dict) and lat_spec is None:
        lat_spec = uni_spec.get("lattice")
    for source in (doc, *[e for e in embedded if isinstance(e, dict)]):
        lat_spec = lat_spec or source.get("lattice")
        uni_spec = uni_spec or source.get("universe")
    if uni_spec is None and lat_spec is None:
        base = _fixture_doc(DEFAULT_FIXTURE)
        lat_spec, uni_spec = base["lattice"], base["universe"]
    if lat_spec is None:
        raise ParseError("no lattice given (use --lattice, --fixture, or embed it in the universe)")
    if uni_spec is None:
        raise ParseError("no universe given (use --universe or --fixture)")
    lat = lattice_from_spec(lat_spec)
    return Workspace(universe_from_spec(lat, uni_spec), doc)


def _subset(ws: Workspace, args, attr: str, key: str):
    spec = ws.part(args, attr, key, key)
    if spec is None:
        raise ParseError(f"missing --{attr.replace('_', '-')}")
    return subset_from_spec(ws.universe, spec)


def _operator(args, direction=None):
    """Resolve ``--op`` (builtin name, path or inline JSON) together with its universe."""
    raw = getattr(args, "op", None)
    spec = raw if raw is None or raw in BUILTINS else load_json(raw, "operator")
    ws = workspace(args, spec if isinstance(spec, dict) else None)
    if spec is None:
        key = "op_lower" if direction == LOWER and "op_lower" in ws.doc else "op"
        spec = ws.doc.get(key)
        if spec is None:
            raise ParseError("missing --op")
    if isinstance(spec, dict) and "operator" in spec:
        spec = spec["operator"]
    return ws, operator_from_spec(ws.universe, spec, direction)


# -- output -----------------------------------------------------------------

def emit(doc: dict, args) -> None:
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error(kind: str, message: str, **extra) -> None:
    doc = {"schema_version": SCHEMA_VERSION, "error": kind, "message": message, **extra}
    sys.stderr.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


# -- commands ---------------------------------------------------------------

def cmd_lattice_check(args) -> int:
    spec = load_json(args.spec, "lattice") if args.spec else None
    if spec is None:
        if not args.fixture:
            raise ParseError("lattice check needs --spec or --fixture")
        spec = _fixture_doc(args.fixture)["lattice"]
    if isinstance(spec, dict) and "lattice" in spec:
        spec = spec["lattice"]
    try:
        lat = lattice_from_spec(spec)
    except LawViolation as e:
        labels = spec.get("labels", []) if isinstance(spec, dict) else []
        try:
            wit = [format_label(parse_label(labels[i])) for i in (e.witness or ())]
        except (IndexError, ParseError):
            wit = list(e.witness or ())
        emit({"all_passed": False, "construction": {"law": e.law, "witness": wit,
                                                    "message": str(e)}}, args)
        return EXIT_FAILED
    report = verify_laws(lat)
    doc = report.to_dict()
    ok = report.all_passed
    if args.universe:
        U = universe_from_spec(lat, load_json(args.universe, "universe"))
        results = verify_universe_laws(U)
        doc["universe_laws"] = [r.to_dict(lat) for r in results]
        ok = ok and all(r.status != "fail" for r in results)
        doc["all_passed"] = ok
    emit(doc, args)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_universe_enumerate(args) -> int:
    ws = workspace(args)
    U = ws.universe
    size = U.powerset_size
    doc = {"universe": U.to_spec(), "size": size, "constant": U.is_constant}
    if not args.count:
        doc["subsets"] = [W.labels() for W in U.powerset()]
    emit(doc, args)
    return EXIT_OK


def cmd_relation_check(args) -> int:
    ws = workspace(args)
    spec = ws.part(args, "relation", "relation", "relation")
    if spec is None:
        raise ParseError("missing --relation")
    R = relation_from_spec(ws.universe, spec)
    props = R.properties
    doc = {"relation": R.to_spec(), "properties": props.to_dict(), "letters": props.letters}
    if args.require:
        doc["required"] = args.require
        doc["satisfied"] = props.has(args.require)
    emit(doc, args)
    return EXIT_OK if not args.require or props.has(args.require) else EXIT_FAILED


def cmd_approx(args) -> int:
    ws = workspace(args)
    spec = ws.part(args, "relation", "relation", "relation")
    if spec is None:
        raise ParseError("missing --relation")
    R = relation_from_spec(ws.universe, spec)
    Q = _subset(ws, args, "subset", "q")
    dirs = (UPPER, LOWER) if args.both else (args.direction,)
    doc = {"subset": Q.labels()}
    adv = []
    for d in dirs:
        doc[d] = (upper_approx(R, Q) if d == UPPER else lower_approx(R, Q)).labels()
        if d == LOWER and not ws.lattice.caps.mv_algebra:
            adv.append("non-mv-lattice")
    doc["advisories"] = adv
    emit(doc, args)
    return EXIT_OK


_PRODUCTS = {"inner": inner_product, "subsethood": subsethood}


def cmd_product(args) -> int:
    if args.which == "inverse":
        ws, op = _operator(args, args.direction)
        Q = _subset(ws, args, "q", "q")
        inv = upper_inverse(op) if op.direction == UPPER else lower_inverse(op)
        emit({"product": "inverse", "direction": op.direction, "operator": op.label,
              "q": Q.labels(), "value": apply(inv, Q).labels(),
              "advisories": list(inv.advisories)}, args)
        return EXIT_OK
    ws = workspace(args)
    M = _subset(ws, args, "m", "m")
    Q = _subset(ws, args, "q", "q")
    adv = []
    if args.which == "outer":
        if not ws.universe.is_constant:
            adv.append(NONCONSTANT)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            v = outer_product(M, Q)
    else:
        v = _PRODUCTS[args.which](M, Q)
    emit({"product": args.which, "value": ws.lattice.label(v), "m": M.labels(), "q": Q.labels(),
          "advisories": adv}, args)
    return EXIT_OK


def _mode(args):
    if args.mode == "sampled":
        return sampled(args.seed, args.trials)
    return "exhaustive"


def cmd_axiom_check(args) -> int:
    name = args.axiom
    if name is None:
        doc = _fixture_doc(args.fixture) if args.fixture else {}
        name = doc.get("axiom_lower" if args.direction == LOWER else "axiom")
        if name is None:
            raise ParseError("missing --axiom")
    names = expand_axioms(name)
    direction = args.direction or family_of(names[0])
    ws, op = _operator(args, direction)
    reports = [check_axiom(op, a, _mode(args)) for a in names]
    holds = all(r.holds for r in reports)
    doc = {"operator": op.label, "direction": op.direction, "axiom": name, "holds": holds,
           "advisories": list(op.advisories)}
    if len(reports) == 1:
        doc.update(reports[0].to_dict())
        doc["axiom"] = name
    else:
        doc["reports"] = [r.to_dict() for r in reports]
    emit(doc, args)
    return EXIT_OK if holds else EXIT_FAILED


def cmd_axiom_reconstruct(args) -> int:
    ws, op = _operator(args, args.direction)
    try:
        R = reconstruct_relation_upper(op) if op.direction == UPPER else reconstruct_relation_lower(op)
    except H0Violated as e:
        emit({"operator": op.label, "direction": op.direction, "relation": None,
              "error": "h0-violated", "point": e.point, "message": str(e)}, args)
        return EXIT_FAILED
    emit({"operator": op.label, "direction": op.direction, "relation": R.to_spec(),
          "properties": R.properties.to_dict()}, args)
    return EXIT_OK


def cmd_axiom_verify(args) -> int:
    th = theorem(args.theorem)
    ws, op = _operator(args, th.family)
    rep = verify_characterization(th, op, _mode(args))
    doc = rep.to_dict()
    doc["operator"] = operator_to_spec(op) if op.kind != "table" else op.label
    emit(doc, args)
    return EXIT_OK if rep.confirmed else EXIT_FAILED


def _instances(args) -> list:
    if args.instance:
        return [InstanceSpec.from_dict(load_json(args.instance, "instance"))]
    if args.fixture == "all":
        return [FIXTURES[k] for k in FIXTURES]
    if args.fixture:
        return [oracle_fixture(args.fixture)]
    raise ParseError("oracle run needs --instance or --fixture")


def cmd_oracle_run(args) -> int:
    out = []
    ok = True
    for inst in _instances(args):
        if args.trials is not None or args.seed is not None:
            b = inst.budget
            inst = InstanceSpec(inst.name, inst.lattice, inst.universe, inst.scope,
                                type(b)(b.max_relations, b.max_operators,
                                        b.sample_seed if args.seed is None else args.seed,
                                        b.sample_trials if args.trials is None else args.trials))
        M = oracle_run(inst, jobs=args.jobs)
        ok = ok and M.ok
        out.append(M.to_dict())
    if len(out) == 1:
        doc = out[0]
        doc.pop("schema_version")
    else:
        doc = {"instances": out, "ok": ok}
    emit(doc, args)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_oracle_degeneracy(args) -> int:
    ws = workspace(args)
    rep = classical_degeneracy_suite(ws.universe)
    doc = rep.to_dict()
    doc.pop("schema_version")
    emit(doc, args)
    return EXIT_OK if rep.ok else EXIT_FAILED


# -- parser -----------------------------------------------------------------

def _common(p, universe=True):
    p.add_argument("-o", "--output", help="write the JSON report here instead of stdout")
    p.add_argument("-v", "--verbose", action="count", default=0)
    if universe:
        p.add_argument("--lattice", help="lattice JSON (path or inline)")
        p.add_argument("--universe", help="universe JSON (path or inline); may embed 'lattice'")
        p.add_argument("--fixture", help="named example or oracle fixture")


def _modes(p):
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lvrough", description="L-valued rough sets on finite models")
    ap.add_argument("--version", action="version", version=f"lvrough {__version__}")
    sub = ap.add_subparsers(dest="group", required=True)

    g = sub.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("check", help="verify the lattice law suite")
    p.add_argument("--spec", help="lattice JSON")
    p.add_argument("--fixture")
    p.add_argument("--universe", help="also check subset-level laws on this universe")
    _common(p, universe=False)
    p.set_defaults(func=cmd_lattice_check)

    g = sub.add_parser("universe").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("enumerate", help="list P(U)")
    p.add_argument("--count", action="store_true", help="only report the size")
    _common(p)
    p.set_defaults(func=cmd_universe_enumerate)

    g = sub.add_parser("relation").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("check", help="report relation properties")
    p.add_argument("--relation")
    p.add_argument("--require", help="property letters that must hold, e.g. RST")
    _common(p)
    p.set_defaults(func=cmd_relation_check)

    p = sub.add_parser("approx", help="upper/lower approximation of a subset")
    p.add_argument("--relation")
    p.add_argument("--subset", help="subset JSON")
    p.add_argument("--direction", choices=(UPPER, LOWER), default=UPPER)
    p.add_argument("--both", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("product", help="inner, subsethood, outer product or inverse mapping")
    p.add_argument("which", choices=("inner", "subsethood", "outer", "inverse"))
    p.add_argument("--m")
    p.add_argument("--q")
    p.add_argument("--op", help="operator for 'inverse'")
    p.add_argument("--direction", choices=(UPPER, LOWER))
    _common(p)
    p.set_defaults(func=cmd_product)

    g = sub.add_parser("axiom").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("check")
    p.add_argument("--op", help="builtin name, operator JSON path, or inline JSON")
    p.add_argument("--axiom", help="axiom name or set, e.g. HRTS, C1-C5, H1+H2+H3")
    p.add_argument("--direction", choices=(UPPER, LOWER))
    _modes(p)
    _common(p)
    p.set_defaults(func=cmd_axiom_check)
    p = g.add_parser("reconstruct")
    p.add_argument("--op")
    p.add_argument("--direction", choices=(UPPER, LOWER), default=UPPER)
    _common(p)
    p.set_defaults(func=cmd_axiom_reconstruct)
    p = g.add_parser("verify")
    p.add_argument("--theorem", required=True, choices=sorted(THEOREMS), metavar="THEOREM")
    p.add_argument("--op")
    _modes(p)
    _common(p)
    p.set_defaults(func=cmd_axiom_verify)

    g = sub.add_parser("oracle").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("run", help="theorem verification matrix")
    p.add_argument("--instance")
    p.add_argument("--fixture", help=f"one of {', '.join(FIXTURES)}, or 'all'")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--trials", type=int, help="sampled completeness trials")
    p.add_argument("--seed", type=int)
    _common(p, universe=False)
    p.set_defaults(func=cmd_oracle_run)
    p = g.add_parser("degeneracy", help="compare against the classical definitions (U = 1)")
    _common(p)
    p.set_defaults(func=cmd_oracle_degeneracy)
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        _error(type(e).__name__, str(e))
        return EXIT_INPUT
    except BudgetExceeded as e:
        _error(type(e).__name__, str(e), size=e.size)
        return EXIT_BUDGET
    except LVRoughError as e:
        _error(type(e).__name__, str(e))
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
