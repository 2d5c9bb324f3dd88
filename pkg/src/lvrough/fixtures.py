"""Named worked examples, loadable from the CLI with ``--fixture``."""
from __future__ import annotations

from .errors import ParseError

_U4 = {"a": "0.2", "b": "0.7", "c": "0.3", "d": "0.8"}
_M4 = {"a": "0.2", "b": "0.5", "c": "0.3", "d": "0.6"}
_Q4 = {"a": "0.2", "b": "0.5", "c": "0.3", "d": "0.5"}
_U3 = {"a": "0.5", "b": "0.7", "c": "0.4"}


def _universe(m):
    return {"points": list(m), "membership": dict(m)}


EXAMPLES = {
    "inner-example-godel": {
        "lattice": {"kind": "goedel", "levels": 10},
        "universe": _universe(_U4),
        "m": {"values": _M4}, "q": {"values": _Q4},
        "op": {"kind": "builtin", "name": "identity", "direction": "upper"},
        "expect": {"inner": "0.5", "upper_inverse_of_q": _Q4},
    },
    "inner-example-luk": {
        "lattice": {"kind": "lukasiewicz", "levels": 10},
        "universe": _universe(_U4),
        "m": {"values": _M4}, "q": {"values": _Q4},
        "op": {"kind": "builtin", "name": "identity", "direction": "upper"},
        "expect": {"inner": "0.3", "upper_inverse_of_q": _Q4},
    },
    "outer-example": {
        "lattice": {"kind": "lukasiewicz", "levels": 10},
        "universe": _universe(_U4),
        "m": {"values": _M4}, "q": {"values": _Q4},
        "op": {"kind": "builtin", "name": "identity", "direction": "lower"},
        "expect": {"outer": "0.2", "lower_inverse_of_q": {k: "0.2" for k in _U4},
                   "neg_m": {"a": "0", "b": "0.2", "c": "0", "d": "0.2"}},
    },
    "euclidean-example": {
        "lattice": {"kind": "goedel", "levels": 10},
        "universe": _universe(_U3),
        "relation": {"matrix": {"a": {"a": "0.5", "b": "0.2", "c": "0.2"},
                                "b": {"a": "0.2", "b": "0.7", "c": "0.1"},
                                "c": {"a": "0.2", "b": "0.1", "c": "0.4"}}},
        "q": {"values": {"a": "0.5"}},
        "expect": {"symmetric": True, "euclidean": True},
    },
    "mediate-example": {
        "lattice": {"kind": "goedel", "levels": 10},
        "universe": _universe(_U3),
        "relation": {"matrix": {"a": {"a": "0.5", "b": "0.2", "c": "0.3"},
                                "b": {"a": "0.1", "b": "0.7", "c": "0.1"},
                                "c": {"a": "0.2", "b": "0.4", "c": "0.4"}}},
        "q": {"values": {"a": "0.5"}},
        "expect": {"mediate": True},
    },
    "least-equivalent": {
        "lattice": {"kind": "lukasiewicz", "levels": 4},
        "universe": _universe({"a": "1/2", "b": "1/2"}),
        "op": {"kind": "builtin", "name": "identity", "direction": "upper"},
        "op_lower": {"kind": "builtin", "name": "identity", "direction": "lower"},
        "axiom": "HRTS", "axiom_lower": "LRTS",
    },
    "largest-equivalent": {
        "lattice": {"kind": "lukasiewicz", "levels": 4},
        "universe": _universe({"a": "1/2", "b": "1/2"}),
        "op": {"kind": "builtin", "name": "h1_largest", "direction": "upper"},
        "op_lower": {"kind": "builtin", "name": "l1_least", "direction": "lower"},
        "axiom": "HRTS", "axiom_lower": "LRTS",
    },
}


def example(name: str) -> dict:
    if name not in EXAMPLES:
        raise ParseError(f"unknown fixture {name!r}; known: {', '.join(EXAMPLES)}")
    return EXAMPLES[name]
