"""Declarative experiment descriptors and the seeded generation pipeline.

A descriptor captures one experiment (a figure recipe): the factor family,
its parameters, the factor count, disorder, and sampling controls. One
master seed drives everything; per-sample and per-stage streams are derived
from it, so samples are independent and any parallel evaluation order gives
identical results.
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from functools import cached_property
from typing import Iterator

import numpy as np

from .ensembles import EnsembleHistogram, StateLabel, classify_states, histogram_from_values
from .errors import GenerationFailureError, InvalidParameterError
from .graphs import (Graph, adjacency, apply_diagonal_disorder, cycle_graph,
                     d_regular_random, delete_random_edges, is_connected)
from .products import ComposedSpectrum, compose_spectra
from .qlbits import EmergentPair, QLBit, SplittingPrediction, couple, emergent_pair, predict_splitting
from .rng import RngSeed
from .spectra import Spectrum, eigendecompose

KIND_SINGLE = "single-graph"
KIND_REGULAR_PRODUCT = "d-regular-product"
KIND_QLBIT_PRODUCT = "qlbit-product"
KINDS = (KIND_SINGLE, KIND_REGULAR_PRODUCT, KIND_QLBIT_PRODUCT)

GRAPH_REGULAR = "d-regular"
GRAPH_CYCLE = "cycle"
GRAPH_FAMILIES = (GRAPH_REGULAR, GRAPH_CYCLE)

# Stream separation within one sample.
_STAGE_BASE = 0
_STAGE_DELETE = 1
_STAGE_COUPLE = 2
_STAGE_DISORDER = 3


@dataclass(frozen=True)
class ExperimentDescriptor:
    """Complete description of one experiment; serializes round-trip stable."""

    name: str
    kind: str
    n: int
    graph: str = GRAPH_REGULAR
    d: int | None = None
    deletions: int = 0
    p: float = 0.0
    sign: int = 1
    n_factors: int = 1
    identical_factors: bool = False
    shared_base: bool = False
    sigma: float = 0.0
    n_samples: int = 1
    bins: int = 200
    master_seed: int = 20260808

    def validate(self) -> list[str]:
        """All precondition violations, empty when the descriptor is runnable."""
        errors = []
        if not self.name:
            errors.append("name must be non-empty")
        if self.kind not in KINDS:
            errors.append(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.graph not in GRAPH_FAMILIES:
            errors.append(f"graph must be one of {GRAPH_FAMILIES}, got {self.graph!r}")
        if self.graph == GRAPH_CYCLE:
            if self.n < 3:
                errors.append(f"cycle graphs need n >= 3, got {self.n}")
            if self.d is not None:
                errors.append("d does not apply to cycle graphs")
        else:
            if self.d is None:
                errors.append("d is required for d-regular graphs")
            elif self.d < 1 or self.n <= self.d:
                errors.append(f"need n > d >= 1, got n={self.n}, d={self.d}")
            elif (self.n * self.d) % 2 != 0:
                errors.append(f"n*d must be even, got n={self.n}, d={self.d}")
        max_edges = self.n if self.graph == GRAPH_CYCLE else (
            self.n * self.d // 2 if self.d else 0)
        if self.deletions < 0 or (not errors and self.deletions > max_edges):
            errors.append(f"deletions must be in [0, {max_edges}], got {self.deletions}")
        if not 0.0 <= self.p <= 1.0:
            errors.append(f"p must be in [0,1], got {self.p}")
        if self.kind != KIND_QLBIT_PRODUCT and self.p != 0.0:
            errors.append(f"p applies only to {KIND_QLBIT_PRODUCT}")
        if self.sign not in (1, -1):
            errors.append(f"sign must be +1 or -1, got {self.sign}")
        if self.n_factors < 1:
            errors.append(f"n_factors must be positive, got {self.n_factors}")
        if self.kind == KIND_SINGLE and self.n_factors != 1:
            errors.append(f"{KIND_SINGLE} requires n_factors == 1")
        if self.sigma < 0:
            errors.append(f"sigma must be non-negative, got {self.sigma}")
        if self.n_samples < 1:
            errors.append(f"n_samples must be positive, got {self.n_samples}")
        if self.bins < 1:
            errors.append(f"bins must be positive, got {self.bins}")
        if not 0 <= self.master_seed < 2**64:
            errors.append(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        return errors

    def to_json_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "ExperimentDescriptor":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParameterError(f"unknown descriptor fields: {sorted(unknown)}")
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidParameterError(f"malformed descriptor: {exc}") from exc

    def with_overrides(self, **kwargs) -> "ExperimentDescriptor":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class FactorResult:
    """One realized factor: its graph, spectrum, and diagnostics."""

    graph: Graph
    spectrum: Spectrum
    emergent_indices: frozenset[int]
    connected: bool
    qlbit: QLBit | None = None
    splitting: SplittingPrediction | None = None
    emergent: EmergentPair | None = None


@dataclass(frozen=True)
class SampleResult:
    """One pipeline sample: factors, composed spectrum, and state labels."""

    index: int
    factors: tuple[FactorResult, ...]
    composed: ComposedSpectrum

    @property
    def emergent_index_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(f.emergent_indices for f in self.factors)

    @cached_property
    def labels(self) -> tuple[StateLabel, ...]:
        """Per-eigenvalue classification, built on first use (the grid can be large)."""
        return tuple(classify_states(self.composed, list(self.emergent_index_sets)))


def _base_graph(desc: ExperimentDescriptor, sample_seed: RngSeed, k: int, side: int) -> Graph:
    if desc.graph == GRAPH_CYCLE:
        g = cycle_graph(desc.n)
    else:
        k_base = 0 if desc.shared_base else k
        g = d_regular_random(desc.n, desc.d, sample_seed.derive(_STAGE_BASE, k_base, side))
    if desc.deletions:
        g = delete_random_edges(g, desc.deletions, sample_seed.derive(_STAGE_DELETE, k, side))
    return g


def _build_factor(desc: ExperimentDescriptor, sample_seed: RngSeed, k: int) -> FactorResult:
    if desc.kind == KIND_QLBIT_PRODUCT:
        b1 = _base_graph(desc, sample_seed, k, 0)
        b2 = _base_graph(desc, sample_seed, k, 1)
        q = couple(b1, b2, desc.p, desc.sign, sample_seed.derive(_STAGE_COUPLE, k))
        graph = q.composite
        emergent_indices = frozenset({0, 1})
    else:
        q = None
        graph = _base_graph(desc, sample_seed, k, 0)
        emergent_indices = frozenset({0})
    a = adjacency(graph)
    if desc.sigma > 0:
        a = apply_diagonal_disorder(a, desc.sigma, sample_seed.derive(_STAGE_DISORDER, k))
    spectrum = eigendecompose(a, want_vectors=desc.kind == KIND_QLBIT_PRODUCT)
    if q is not None:
        return FactorResult(graph, spectrum, emergent_indices, is_connected(graph),
                            qlbit=q, splitting=predict_splitting(q), emergent=emergent_pair(q))
    return FactorResult(graph, spectrum, emergent_indices, is_connected(graph))


def run_sample(desc: ExperimentDescriptor, sample_index: int,
               master_seed: int | None = None) -> SampleResult:
    """Run the full pipeline for one sample, deterministic in the master seed."""
    errors = desc.validate()
    if errors:
        raise InvalidParameterError("; ".join(errors))
    seed = RngSeed(desc.master_seed if master_seed is None else master_seed)
    sample_seed = seed.derive(sample_index)
    factors = []
    for k in range(desc.n_factors):
        if desc.identical_factors and k > 0:
            factors.append(factors[0])
        else:
            factors.append(_build_factor(desc, sample_seed, k))
    composed = compose_spectra([f.spectrum for f in factors])
    return SampleResult(sample_index, tuple(factors), composed)


def iter_samples(desc: ExperimentDescriptor, n_samples: int | None = None,
                 master_seed: int | None = None) -> Iterator[SampleResult]:
    count = desc.n_samples if n_samples is None else n_samples
    for i in range(count):
        try:
            yield run_sample(desc, i, master_seed)
        except GenerationFailureError as exc:
            raise GenerationFailureError(f"sample {i}: {exc}", exc.restarts) from exc


def ensemble_spectrum(desc: ExperimentDescriptor, n_samples: int | None = None,
                      bins: int | None = None,
                      master_seed: int | None = None) -> EnsembleHistogram:
    """Aggregate all eigenvalues of the sampled pipeline into one histogram.

    Counts sum to n_samples * product_dim: every eigenvalue of every sample
    lands in a bin.
    """
    count = desc.n_samples if n_samples is None else n_samples
    seed = desc.master_seed if master_seed is None else master_seed
    if count < 1:
        raise InvalidParameterError(f"n_samples must be positive, got {count}")
    values = np.concatenate(
        [s.composed.values for s in iter_samples(desc, count, seed)])
    parameters = dict(desc.to_json_dict(), n_samples=count, master_seed=seed)
    return histogram_from_values(values, desc.bins if bins is None else bins,
                                 count, parameters)


def _fig(name: str, **kwargs) -> ExperimentDescriptor:
    return ExperimentDescriptor(name=name, **kwargs)


BUNDLED_EXPERIMENTS: dict[str, ExperimentDescriptor] = {
    d.name: d for d in (
        _fig("fig2a", kind=KIND_REGULAR_PRODUCT, graph=GRAPH_CYCLE, n=5,
             n_factors=2, n_samples=1, master_seed=101),
        _fig("fig2b", kind=KIND_REGULAR_PRODUCT, graph=GRAPH_CYCLE, n=5,
             n_factors=3, n_samples=1, master_seed=102),
        _fig("fig2c", kind=KIND_REGULAR_PRODUCT, graph=GRAPH_CYCLE, n=5,
             n_factors=4, n_samples=1, master_seed=103),
        _fig("fig3", kind=KIND_REGULAR_PRODUCT, n=12, d=8, deletions=4,
             sigma=2.0, n_factors=3, shared_base=True, n_samples=100,
             master_seed=300),
        _fig("fig4a", kind=KIND_QLBIT_PRODUCT, n=20, d=15, p=0.2,
             n_factors=1, n_samples=100, master_seed=401),
        _fig("fig4b", kind=KIND_QLBIT_PRODUCT, n=20, d=15, p=0.2,
             n_factors=2, identical_factors=True, n_samples=1, master_seed=402),
        _fig("fig4c", kind=KIND_QLBIT_PRODUCT, n=20, d=15, p=0.2,
             n_factors=2, n_samples=50, master_seed=403),
        _fig("fig4d", kind=KIND_QLBIT_PRODUCT, n=10, d=9, p=0.1,
             n_factors=3, identical_factors=True, n_samples=1, master_seed=404),
        _fig("fig4e", kind=KIND_QLBIT_PRODUCT, n=12, d=11, p=0.1,
             n_factors=3, n_samples=50, master_seed=405),
        _fig("fig4f", kind=KIND_QLBIT_PRODUCT, n=7, d=6, p=0.1,
             n_factors=4, identical_factors=True, n_samples=1, master_seed=406),
    )
}

EXPERIMENT_NOTES: dict[str, str] = {
    "fig2a": "C5 x C5 spectrum (25 states, top eigenvalue 4)",
    "fig2b": "C5 x C5 x C5 spectrum",
    "fig2c": "Fourfold C5 product spectrum",
    "fig3": "Ensemble of 3-fold products of deleted 8-regular graphs, diagonal disorder 2.0",
    "fig4a": "Single QL-bit ensemble (n=20, d=15, p=0.2): emergent pair split by 2*Delta",
    "fig4b": "Product of two identical QL bits, single spectrum",
    "fig4c": "Ensemble of two-QL-bit products: emergent states A, B, B, C",
    "fig4d": "Product of three identical QL bits (n=10, d=9, p=0.1)",
    "fig4e": "Ensemble of three-QL-bit products (n=12, d=11, p=0.1): 8 emergent states",
    "fig4f": "Product of four identical QL bits (n=7, d=6, p=0.1): 38,416 states, 16 emergent",
}
