"""Supra-Laplacian spectra and synchronization diagnostics for multiplex networks.

Build multiplex networks (synthetic or ingested), assemble the combined
supra-Laplacian `p * intra + d_x * inter`, and quantify how well the
system synchronizes: algebraic connectivity, the eigenratio R with its
weak/strong closed-form approximations and their optimal crossing, and
relaxation times of the diffusion dynamics.
"""

__version__ = "0.1.0"

from suprasync.core import (LayerGraph, MultiplexNetwork, StructuralStats,
                            SupraLaplacian, build_supra, connected_components,
                            layer_laplacian, structural_stats, supra_adjacency)
from suprasync.errors import (BracketError, ConfigError, ConvergenceError,
                              DisconnectedError, DomainError, GenerationError,
                              ParseError, StructuralError, SupraSyncError,
                              UnknownLayerError)
from suprasync.dynamics import (ModeState, evolve_oracle, init_modes,
                                sync_level, sync_time)
from suprasync.generators import (GeneratorSpec, couple_replicas, generate_ba,
                                  generate_powerlaw)
from suprasync.ingest import (LayerReport, MultiplexEdgeFile, from_network,
                              layer_report, parse_multiplex, read_edge_list,
                              read_multiplex, serialize_multiplex, to_multiplex,
                              write_edge_list, write_multiplex)
from suprasync.spectral import (EigenratioCurve, SpectralSummary, SweepResult,
                                algebraic_connectivity, eig_sym, eigenratio,
                                eigenratio_curve, lambda2_sweep, optimal_dx,
                                rayleigh_quotient, strong_approx, weak_approx,
                                zero_tolerance)
from suprasync.trust import (TransactionLedger, TrustProfile, assign_weights,
                             build_profile, gamma, read_ledger,
                             synthesize_ledger, trust_score, write_ledger)

__all__ = [
    "LayerGraph", "MultiplexNetwork", "StructuralStats", "SupraLaplacian",
    "build_supra", "connected_components", "layer_laplacian",
    "structural_stats", "supra_adjacency",
    "BracketError", "ConfigError", "ConvergenceError", "DisconnectedError",
    "DomainError", "GenerationError", "ParseError", "StructuralError",
    "SupraSyncError", "UnknownLayerError",
    "ModeState", "evolve_oracle", "init_modes", "sync_level", "sync_time",
    "GeneratorSpec", "couple_replicas", "generate_ba", "generate_powerlaw",
    "LayerReport", "MultiplexEdgeFile", "from_network", "layer_report",
    "parse_multiplex", "read_edge_list", "read_multiplex",
    "serialize_multiplex", "to_multiplex", "write_edge_list",
    "write_multiplex",
    "EigenratioCurve", "SpectralSummary", "SweepResult",
    "algebraic_connectivity", "eig_sym", "eigenratio", "eigenratio_curve",
    "lambda2_sweep", "optimal_dx", "rayleigh_quotient", "strong_approx",
    "weak_approx", "zero_tolerance",
    "TransactionLedger", "TrustProfile", "assign_weights", "build_profile",
    "gamma", "read_ledger", "synthesize_ledger", "trust_score", "write_ledger",
]
