"""QL bits: two basis graphs coupled by random cross edges.

The composite graph stacks basis_1's vertices first, then basis_2's. With
positive unit coupling the top two eigenvalues are the in- and out-of-phase
combinations of the basis graphs' principal states, split by roughly
2*Delta with Delta = n_c / n.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .graphs import Graph, adjacency, graph_from_json_dict, graph_to_json_dict
from .rng import RngSeed
from .spectra import eigendecompose, fix_sign

IN_PHASE = "in_phase"
OUT_OF_PHASE = "out_of_phase"
INDETERMINATE = "indeterminate"

# Relative tolerance below which the top pair counts as degenerate and is
# resolved explicitly against block-uniform vectors.
DEGENERACY_RTOL = 1e-9


@dataclass(frozen=True)
class QLBit:
    """Two coupled basis graphs and their block-structured composite."""

    basis_1: Graph
    basis_2: Graph
    coupling_edges: tuple[tuple[int, int, float], ...]
    sign: int
    composite: Graph

    def __post_init__(self):
        n1, n2 = self.basis_1.n_vertices, self.basis_2.n_vertices
        if self.composite.n_vertices != n1 + n2:
            raise InvalidParameterError("composite size must be |basis_1| + |basis_2|")
        seen = set()
        for u, v, _ in self.coupling_edges:
            if not (0 <= u < n1 and 0 <= v < n2):
                raise InvalidParameterError(f"coupling edge ({u},{v}) does not bridge the blocks")
            if (u, v) in seen:
                raise InvalidParameterError(f"duplicate coupling edge ({u},{v})")
            seen.add((u, v))

    @property
    def n_coupling(self) -> int:
        return len(self.coupling_edges)


@dataclass(frozen=True)
class SplittingPrediction:
    """Predicted emergent pair d_eff +- Delta with Delta = n_c / n."""

    d_eff: float
    delta: float
    predicted_pair: tuple[float, float]


@dataclass(frozen=True)
class EmergentState:
    eigenvalue: float
    eigenvector: np.ndarray
    phase: str


@dataclass(frozen=True)
class EmergentPair:
    """The QL bit's two emergent eigenpairs plus an isolation diagnostic.

    ``degraded_isolation`` is a warning, not an error: it fires when the
    second eigenvalue is not separated from the third by the detection
    threshold.
    """

    states: tuple[EmergentState, EmergentState]
    degraded_isolation: bool
    isolation_gap: float
    isolation_threshold: float

    def by_phase(self, phase: str) -> EmergentState | None:
        for st in self.states:
            if st.phase == phase:
                return st
        return None


def couple(basis_1: Graph, basis_2: Graph, p: float, sign: int, seed: RngSeed) -> QLBit:
    """Couple two basis graphs with independent Bernoulli(p) cross edges.

    Every (u in basis_1) x (v in basis_2) pair receives an edge with
    probability p; edge weight is sign * 1. The composite lays out basis_1
    vertices first.
    """
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"coupling probability must be in [0,1], got {p}")
    if sign not in (1, -1):
        raise InvalidParameterError(f"sign must be +1 or -1, got {sign}")
    n1, n2 = basis_1.n_vertices, basis_2.n_vertices
    mask = seed.generator().random((n1, n2)) < p
    w = float(sign)
    coupling = tuple((int(i), int(j), w) for i, j in np.argwhere(mask))
    composite_edges = list(basis_1.edges)
    composite_edges += [(u + n1, v + n1, wt) for u, v, wt in basis_2.edges]
    composite_edges += [(i, j + n1, w) for i, j, _ in coupling]
    composite = Graph(n1 + n2, tuple(composite_edges))
    return QLBit(basis_1, basis_2, coupling, sign, composite)


def predict_splitting(q: QLBit) -> SplittingPrediction:
    """Splitting prediction Delta = n_c / n from the coupling edge count.

    d_eff is the measured top eigenvalue of basis_1 (exact d for an intact
    d-regular basis, slightly below after edge deletions). Unequal basis
    sizes are permitted but flagged; n = |basis_1| is used.
    """
    n1, n2 = q.basis_1.n_vertices, q.basis_2.n_vertices
    if n1 != n2:
        warnings.warn(
            f"basis sizes differ ({n1} vs {n2}); splitting uses n = |basis_1| = {n1}",
            stacklevel=2,
        )
    delta = q.n_coupling / n1
    d_eff = float(np.linalg.eigvalsh(adjacency(q.basis_1).entries)[-1])
    return SplittingPrediction(d_eff, delta, (d_eff + delta, d_eff - delta))


def _block_uniform(n1: int, n2: int) -> tuple[np.ndarray, np.ndarray]:
    j0 = np.zeros(n1 + n2)
    j0[:n1] = 1.0 / math.sqrt(n1)
    j1 = np.zeros(n1 + n2)
    j1[n1:] = 1.0 / math.sqrt(n2)
    return j0, j1


def _phase_of(v: np.ndarray, n1: int) -> str:
    prod = np.sign(v[:n1].mean()) * np.sign(v[n1:].mean())
    if prod > 0:
        return IN_PHASE
    if prod < 0:
        return OUT_OF_PHASE
    return INDETERMINATE


def emergent_pair(q: QLBit, min_gap: float = 0.5) -> EmergentPair:
    """The two emergent eigenpairs of the composite, phase-classified.

    Returns the two largest eigenvalues with eigenvectors; each vector is
    classified in-phase or out-of-phase from the relative sign of its block
    means. Cross-coupling sign does not move the pair (the sign=-1
    composite is similar to the sign=+1 one), it swaps which phase sits on
    top. An exactly degenerate pair (p=0) is resolved into in/out-of-phase
    combinations against the block-uniform vectors.

    Isolation: the second eigenvalue must clear the third by
    max(min_gap, 2*sqrt(d_mean - 1) - lambda_2); otherwise
    ``degraded_isolation`` is set on the result.
    """
    n1 = q.basis_1.n_vertices
    s = eigendecompose(adjacency(q.composite), want_vectors=True)
    if s.dim < 3:
        raise InvalidParameterError("composite too small to isolate an emergent pair")
    lam = s.eigenvalues
    vecs = s.eigenvectors

    degenerate = abs(lam[0] - lam[1]) <= DEGENERACY_RTOL * max(1.0, abs(lam[0]))
    if degenerate:
        basis = vecs[:, :2]
        j0, j1 = _block_uniform(n1, q.basis_2.n_vertices)
        proj = basis @ basis.T
        resolved = []
        for combo, phase in ((j0 + j1, IN_PHASE), (j0 - j1, OUT_OF_PHASE)):
            w = proj @ combo
            norm = np.linalg.norm(w)
            if norm < 1e-8:
                # Span does not contain the combination; keep the raw vector.
                w = vecs[:, len(resolved)]
                phase = _phase_of(w, n1)
            else:
                w = w / norm
            resolved.append((fix_sign(w), phase))
        states = (
            EmergentState(float(lam[0]), resolved[0][0], resolved[0][1]),
            EmergentState(float(lam[1]), resolved[1][0], resolved[1][1]),
        )
    else:
        states = tuple(
            EmergentState(float(lam[k]), fix_sign(vecs[:, k]), _phase_of(vecs[:, k], n1))
            for k in (0, 1)
        )

    gap = float(lam[1] - lam[2])
    d_mean = 2.0 * q.basis_1.n_edges / n1
    band = 2.0 * math.sqrt(max(d_mean - 1.0, 0.0))
    threshold = max(min_gap, band - float(lam[2]))
    return EmergentPair(states, gap < threshold, gap, threshold)


def qlbit_to_json_dict(q: QLBit) -> dict:
    """Interchange form with per-basis graph JSON and the coupling list."""
    return {
        "basis_1": graph_to_json_dict(q.basis_1),
        "basis_2": graph_to_json_dict(q.basis_2),
        "coupling": [[u, v, w] for u, v, w in q.coupling_edges],
        "sign": q.sign,
    }


def qlbit_from_json_dict(data: dict) -> QLBit:
    try:
        b1 = graph_from_json_dict(data["basis_1"])
        b2 = graph_from_json_dict(data["basis_2"])
        sign = int(data["sign"])
        coupling = tuple((int(u), int(v), float(w)) for u, v, w in data["coupling"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidParameterError(f"malformed QL-bit JSON: {exc}") from exc
    n1 = b1.n_vertices
    edges = list(b1.edges)
    edges += [(u + n1, v + n1, w) for u, v, w in b2.edges]
    edges += [(u, v + n1, w) for u, v, w in coupling]
    return QLBit(b1, b2, coupling, sign, Graph(n1 + b2.n_vertices, tuple(edges)))
