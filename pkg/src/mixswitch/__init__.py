"""Switching of (m, n)-mixed graphs by Abelian groups of colour permutations.

Homomorphisms, switchable homomorphisms and isomorphisms, the switching graph
``P_Gamma`` and its quotient ``S_Gamma``, switchable cores and colourings.
"""

from ._jit import BACKEND
from .decision import (
    ColouringWitness,
    SwitchHomWitness,
    SwitchIsoWitness,
    is_switchable_core,
    k_colourable,
    oracle_is_switchable_core,
    oracle_switchable_hom,
    oracle_switchable_iso,
    switchable_2_colourable_fast,
    switchable_core_of,
    switchable_hom,
    switchable_iso,
    switchable_k_colourable,
)
from .errors import MixSwitchError
from .graph import (
    ColourParams,
    MixedGraph,
    graphs_equal,
    induced_subgraph,
    parse_graph,
    relabel,
    serialize_graph,
    underlying,
)
from .group import (
    SwitchElement,
    SwitchingGroup,
    closure,
    compose,
    identity,
    invert,
    is_abelian,
    parse_group,
    serialize_group,
)
from .hom import VertexMap, brute_force_hom, core_of, find_hom, find_iso, is_core
from .product import equiv_classes, p_gamma, s_gamma, transversal_subgraph
from .switching import SwitchingPair, apply_assignment, apply_sequence, apply_switch, switch_equal

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
