"""Core decompositions and dense structures in multilayer, temporal and signed graphs."""

from .applications import (CommunityQuery, CommunityResult, DensestParams, DensestResult,
                           QuasiCliqueParams, community_search, densest_subgraph,
                           min_degree_score, multilayer_density, quasi_clique_enumerate,
                           quasi_clique_prune)
from .errors import (ContractViolation, ConvergenceError, DenseCoresError, NoSolutionError,
                     ParseError, ResourceLimitError, SignConflictError, UnknownVertexError)
from .generators import gen_random
from .graphs import (GraphView, MultilayerGraph, SignedGraph, TemporalGraph, induced_degree,
                     parse_multilayer, parse_signed, parse_temporal, read_multilayer,
                     read_signed, read_temporal, write_multilayer, write_signed,
                     write_temporal)
from .multilayer import (LatticeNode, MultilayerCore, collapse_distinct_sets, decompose_all,
                         decompose_naive, filter_maximal, maximal_cores)
from .peeling import CoreIndexing, core_decomposition, peel_interval, peel_to_vector
from .signed import (PolarizedPartition, SpectralResult, brute_force_polarity,
                     generate_planted, leading_eigenvector, polarity, round_deterministic,
                     round_randomized)
from .temporal import (SpanCore, SpanStats, filter_maximal_spans, maximal_span_cores,
                       span_cores_all, span_cores_naive, span_statistics)

__version__ = "0.1.0"
