"""Quantum-like bit graphs from coupled regular networks.

Build d-regular basis graphs, couple them into QL bits, compose Cartesian
products and their spectra without materializing product matrices, classify
emergent/hybrid/random states, and project emergent eigenvectors onto the
2^N qubit tensor basis.
"""
from .ensembles import (EMERGENT, HYBRID, RANDOM, EnsembleHistogram, StateLabel,
                        classify_states, emergent_component_counts,
                        histogram_from_values, write_histogram_csv)
from .errors import (GenerationFailureError, InvalidParameterError,
                     NumericalFailureError, QLGraphError, SizeCapError)
from .experiments import (BUNDLED_EXPERIMENTS, EXPERIMENT_NOTES, ExperimentDescriptor,
                          FactorResult, SampleResult, ensemble_spectrum,
                          iter_samples, run_sample)
from .graphs import (AdjacencyMatrix, Graph, adjacency, apply_diagonal_disorder,
                     complete_graph, cycle_graph, d_regular_random,
                     delete_random_edges, graph_from_adjacency, graph_from_json_dict,
                     graph_to_json_dict, is_connected)
from .products import (ComposedSpectrum, ProductGraph, cartesian_product,
                       compose_spectra, composed_spectrum_rows,
                       kronecker_sum_adjacency, mixed_radix_decode,
                       mixed_radix_encode, product_eigenvector, product_graph,
                       write_composed_spectrum_csv)
from .projection import (BellCombination, BellStateReport, JBasis, ProjectionReport,
                         bell_state_check, block_split, project_alphas)
from .qlbits import (IN_PHASE, OUT_OF_PHASE, EmergentPair, EmergentState, QLBit,
                     SplittingPrediction, couple, emergent_pair, predict_splitting,
                     qlbit_from_json_dict, qlbit_to_json_dict)
from .rng import RngSeed
from .spectra import (AlonBoppanaReport, Spectrum, alon_boppana_check, eigendecompose,
                      fix_sign, max_residual, orthonormality_defect, spectral_gap)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyMatrix", "AlonBoppanaReport", "BellCombination", "BellStateReport",
    "BUNDLED_EXPERIMENTS", "ComposedSpectrum", "EMERGENT", "EXPERIMENT_NOTES",
    "EmergentPair", "EmergentState", "EnsembleHistogram", "ExperimentDescriptor",
    "FactorResult", "GenerationFailureError", "Graph", "HYBRID", "IN_PHASE",
    "InvalidParameterError", "JBasis", "NumericalFailureError", "OUT_OF_PHASE",
    "ProductGraph", "ProjectionReport", "QLBit", "QLGraphError", "RANDOM",
    "RngSeed", "SampleResult", "SizeCapError", "Spectrum", "SplittingPrediction",
    "StateLabel", "adjacency", "alon_boppana_check", "apply_diagonal_disorder",
    "bell_state_check", "block_split", "cartesian_product", "classify_states",
    "complete_graph", "compose_spectra", "composed_spectrum_rows", "couple",
    "cycle_graph", "d_regular_random", "delete_random_edges", "eigendecompose",
    "emergent_component_counts", "emergent_pair", "ensemble_spectrum", "fix_sign",
    "graph_from_adjacency", "graph_from_json_dict", "graph_to_json_dict",
    "histogram_from_values", "is_connected", "iter_samples",
    "kronecker_sum_adjacency", "max_residual", "mixed_radix_decode",
    "mixed_radix_encode", "orthonormality_defect", "predict_splitting",
    "product_eigenvector", "product_graph", "project_alphas",
    "qlbit_from_json_dict", "qlbit_to_json_dict", "run_sample", "spectral_gap",
    "write_composed_spectrum_csv", "write_histogram_csv",
]
