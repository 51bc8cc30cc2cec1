"""Basis graphs: construction, validation and dense adjacency matrices.

Graphs are simple, undirected and weighted (default weight +1). Edges are
stored canonically as (u, v, weight) with u < v, sorted, which makes every
downstream random draw over edges deterministic.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import GenerationFailureError, InvalidParameterError
from .rng import RngSeed

Edge = tuple[int, int, float]

DEFAULT_MAX_RESTARTS = 10_000


@dataclass(frozen=True)
class Graph:
    """Simple undirected weighted graph on vertices 0..n_vertices-1.

    Invariants enforced at construction: no self-loops, no duplicate edges,
    all endpoints in range, finite weights. Instances are immutable.
    """

    n_vertices: int
    edges: tuple[Edge, ...]
    vertex_labels: tuple | None = None

    def __post_init__(self):
        if self.n_vertices <= 0:
            raise InvalidParameterError(f"n_vertices must be positive, got {self.n_vertices}")
        seen = set()
        normalized = []
        for e in self.edges:
            if len(e) == 2:
                u, v, w = e[0], e[1], 1.0
            else:
                u, v, w = e
            u, v = int(u), int(v)
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise InvalidParameterError(f"edge ({u},{v}) out of range for n={self.n_vertices}")
            if (u, v) in seen:
                raise InvalidParameterError(f"duplicate edge ({u},{v})")
            w = float(w)
            if not math.isfinite(w):
                raise InvalidParameterError(f"non-finite weight on edge ({u},{v})")
            seen.add((u, v))
            normalized.append((u, v, w))
        normalized.sort()
        object.__setattr__(self, "edges", tuple(normalized))
        if self.vertex_labels is not None:
            labels = tuple(self.vertex_labels)
            if len(labels) != self.n_vertices:
                raise InvalidParameterError("vertex_labels length must equal n_vertices")
            object.__setattr__(self, "vertex_labels", labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, v, _ in self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_vertices, dtype=np.int64)
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Dense symmetric real matrix realization of a graph.

    The diagonal is zero unless disorder has been applied, in which case
    ``diagonal_disorder`` records the added values.
    """

    entries: np.ndarray
    diagonal_disorder: np.ndarray | None = None

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidParameterError(f"adjacency must be square, got shape {m.shape}")
        if not np.array_equal(m, m.T):
            raise InvalidParameterError("adjacency must be exactly symmetric")
        object.__setattr__(self, "entries", m)
        if self.diagonal_disorder is not None:
            d = np.asarray(self.diagonal_disorder, dtype=np.float64)
            if d.shape != (m.shape[0],):
                raise InvalidParameterError("diagonal_disorder length must equal dim")
            object.__setattr__(self, "diagonal_disorder", d)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def cycle_graph(n: int) -> Graph:
    """The n-cycle C_n: edges (i, i+1 mod n), every vertex degree 2."""
    if n < 3:
        raise InvalidParameterError(f"cycle needs n >= 3 vertices, got {n}")
    return Graph(n, tuple((i, (i + 1) % n, 1.0) for i in range(n)))


def complete_graph(n: int) -> Graph:
    """The complete graph K_n."""
    if n < 1:
        raise InvalidParameterError(f"n must be positive, got {n}")
    return Graph(n, tuple((i, j, 1.0) for i in range(n) for j in range(i + 1, n)))


def _pairing_attempt(n: int, d: int, rng: np.random.Generator) -> set[tuple[int, int]] | None:
    """One stub-matching pass of the configuration model.

    Pairs all n*d stubs, keeps valid pairs and re-shuffles the leftovers;
    returns None when the remaining stubs admit no suitable pair.
    """
    edges: set[tuple[int, int]] = set()
    stubs = list(range(n)) * d
    while stubs:
        potential: dict[int, int] = defaultdict(int)
        rng.shuffle(stubs)
        it = iter(stubs)
        for s1, s2 in zip(it, it):
            if s1 > s2:
                s1, s2 = s2, s1
            if s1 != s2 and (s1, s2) not in edges:
                edges.add((s1, s2))
            else:
                potential[s1] += 1
                potential[s2] += 1
        if not potential:
            return edges
        nodes = sorted(potential)
        suitable = any(
            (min(a, b), max(a, b)) not in edges
            for i, a in enumerate(nodes)
            for b in nodes[i + 1 :]
        )
        if not suitable:
            return None
        stubs = [v for v in nodes for _ in range(potential[v])]
    return edges


def d_regular_random(n: int, d: int, seed: RngSeed,
                     max_restarts: int = DEFAULT_MAX_RESTARTS) -> Graph:
    """Sample a simple d-regular graph on n vertices, deterministic in seed.

    Uses the configuration (stub-pairing) model with repair of clashing
    stubs. Dense degrees (2d > n-1) are reduced to the sparse complement:
    an (n-1-d)-regular graph is sampled and complemented, which is exact
    and keeps degrees close to n-1 feasible.
    """
    if d < 1:
        raise InvalidParameterError(f"degree must be positive, got {d}")
    if n <= d:
        raise InvalidParameterError(f"need n > d, got n={n}, d={d}")
    if (n * d) % 2 != 0:
        raise InvalidParameterError(f"n*d must be even, got n={n}, d={d}")
    edges = _d_regular_edges(n, d, seed.generator(), max_restarts)
    return Graph(n, tuple((u, v, 1.0) for u, v in sorted(edges)))


def _d_regular_edges(n: int, d: int, rng: np.random.Generator,
                     max_restarts: int) -> set[tuple[int, int]]:
    if d == n - 1:
        return {(i, j) for i in range(n) for j in range(i + 1, n)}
    if d == 0:
        return set()
    if 2 * d > n - 1:
        comp = _d_regular_edges(n, n - 1 - d, rng, max_restarts)
        return {(i, j) for i in range(n) for j in range(i + 1, n)} - comp
    restarts = 0
    while restarts < max_restarts:
        edges = _pairing_attempt(n, d, rng)
        if edges is not None:
            return edges
        restarts += 1
    raise GenerationFailureError(
        f"d-regular generation failed for n={n}, d={d} after {restarts} restarts", restarts
    )


def delete_random_edges(g: Graph, count: int, seed: RngSeed) -> Graph:
    """A copy of g with `count` uniformly chosen distinct edges removed."""
    if count < 0:
        raise InvalidParameterError(f"count must be non-negative, got {count}")
    if count > g.n_edges:
        raise InvalidParameterError(f"cannot delete {count} of {g.n_edges} edges")
    if count == 0:
        return g
    rng = seed.generator()
    doomed = set(rng.choice(g.n_edges, size=count, replace=False).tolist())
    kept = tuple(e for i, e in enumerate(g.edges) if i not in doomed)
    return Graph(g.n_vertices, kept, g.vertex_labels)


def adjacency(g: Graph) -> AdjacencyMatrix:
    """Dense symmetric adjacency matrix; entries equal edge weights."""
    m = np.zeros((g.n_vertices, g.n_vertices), dtype=np.float64)
    for u, v, w in g.edges:
        m[u, v] = w
        m[v, u] = w
    return AdjacencyMatrix(m)


def graph_from_adjacency(a: AdjacencyMatrix) -> Graph:
    """Recover the graph whose edges are the nonzero off-diagonal entries."""
    m = a.entries
    n = a.dim
    edges = tuple(
        (i, j, float(m[i, j])) for i in range(n) for j in range(i + 1, n) if m[i, j] != 0.0
    )
    return Graph(n, edges)


def apply_diagonal_disorder(a: AdjacencyMatrix, sigma: float, seed: RngSeed) -> AdjacencyMatrix:
    """Add independent N(0, sigma^2) draws to the diagonal, off-diagonal untouched."""
    if sigma < 0:
        raise InvalidParameterError(f"sigma must be non-negative, got {sigma}")
    draws = seed.generator().normal(0.0, sigma, size=a.dim)
    entries = a.entries.copy()
    entries[np.diag_indices(a.dim)] += draws
    total = draws if a.diagonal_disorder is None else a.diagonal_disorder + draws
    return AdjacencyMatrix(entries, total)


def is_connected(g: Graph) -> bool:
    """Breadth-first connectivity check."""
    if g.n_vertices == 1:
        return True
    neighbors: list[list[int]] = [[] for _ in range(g.n_vertices)]
    for u, v, _ in g.edges:
        neighbors[u].append(v)
        neighbors[v].append(u)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return len(seen) == g.n_vertices


def graph_to_json_dict(g: Graph) -> dict:
    """Interchange form: {"n": int, "edges": [[u, v, w?], ...]}, weight omitted when +1."""
    edges = [[u, v] if w == 1.0 else [u, v, w] for u, v, w in g.edges]
    return {"n": g.n_vertices, "edges": edges}


def graph_from_json_dict(data: dict) -> Graph:
    try:
        n = int(data["n"])
        raw: Iterable[Sequence] = data["edges"]
    except (KeyError, TypeError) as exc:
        raise InvalidParameterError(f"malformed graph JSON: {exc}") from exc
    edges = []
    for item in raw:
        if len(item) == 2:
            edges.append((int(item[0]), int(item[1]), 1.0))
        elif len(item) == 3:
            edges.append((int(item[0]), int(item[1]), float(item[2])))
        else:
            raise InvalidParameterError(f"edge entry must have 2 or 3 fields, got {item}")
    return Graph(n, tuple(edges))
