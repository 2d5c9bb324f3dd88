"""Finite-model engine for L-valued rough sets over an L-universe."""

__version__ = "0.1.0"

from .approx import (LOWER, UPPER, Operator, builtin, compose, induced_lower, induced_upper,
                     lower_approx, table_operator, upper_approx)
from .axiom import (THEOREMS, AxiomReport, CharacterizationReport, check_axiom, check_axiom_set,
                    reconstruct_relation_lower, reconstruct_relation_upper,
                    verify_characterization)
from .errors import *  # noqa: F401,F403
from .lattice import (FiniteResiduatedLattice, lattice_from_spec, make_boolean, make_goedel_chain,
                      make_lukasiewicz_chain, verify_laws)
from .product import inner_product, lower_inverse, outer_product, subsethood, upper_inverse
from .relation import LValuedRelation, RelationProperties, enumerate_relations
from .universe import LSubset, Universe


def main(argv=None) -> int:
    from .cli import main as _main
    return _main(argv)
