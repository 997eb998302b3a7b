"""
Peeling valued digraphs: lattices of initial sections, weak orders on
Coxeter groups and wreath products, and the quasi-symmetric series attached
to generalized columns.
"""

from .digraph import (
    InitialSection, NotErasable, NotInitialSection, PeelingSequence, ValidationReport,
    ValuedDigraph, erasable_in_residual, from_mask, initial_section, is_erasable,
    is_initial_section, iter_peeling_sequences, out_degree, peel, peeling_sequences,
    residual, residual_theta, to_mask, validate,
)
from .lattice import (
    CapExceeded, ISLattice, JoinUnavailable, build, join, maximal_chain_count, meet,
    moebius, moebius_oracle,
)

__all__ = [
    "InitialSection", "NotErasable", "NotInitialSection", "PeelingSequence", "ValidationReport",
    "ValuedDigraph", "erasable_in_residual", "from_mask", "initial_section", "is_erasable",
    "is_initial_section", "iter_peeling_sequences", "out_degree", "peel", "peeling_sequences",
    "residual", "residual_theta", "to_mask", "validate",
    "CapExceeded", "ISLattice", "JoinUnavailable", "build", "join", "maximal_chain_count",
    "meet", "moebius", "moebius_oracle",
]

__version__ = "0.1.0"
