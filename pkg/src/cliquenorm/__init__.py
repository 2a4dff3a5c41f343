"""Sharp bounds on clique counts in graphs and hypergraphs of bounded degree-sequence p-norm."""

from .bounds import (
    BoundResult,
    PreconditionError,
    chase_gls_bound,
    clique_bound,
    fixed_n_bound,
    hyperclique_bound,
    kruskal_katona_bound,
)
from .graphs import Graph, count_cliques, degree_norm
from .hypergraphs import Hypergraph, count_hypercliques, hyper_norm

__version__ = "0.1.0"
