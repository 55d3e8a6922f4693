"""Graph-state entanglement tools: marginal dimensions, LC orbits, invariants and condensation."""

from .graph import Graph, canonical_form, parse_graph6, to_graph6
from .lc import lc_equivalent, lc_orbit, local_complement
from .stabilizer import marginal_dimension, reduced_stabilizer

__all__ = ["Graph", "canonical_form", "parse_graph6", "to_graph6", "lc_equivalent", "lc_orbit",
           "local_complement", "marginal_dimension", "reduced_stabilizer"]
