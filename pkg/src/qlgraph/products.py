"""Cartesian products of graphs and structure-exploiting spectrum composition.

Index convention, used everywhere in this module and its consumers: a
product vertex (i_1, ..., i_N) maps to the flat index

    flat = i_1 * (n_2 * ... * n_N) + i_2 * (n_3 * ... * n_N) + ... + i_N

i.e. the first factor is slowest, the last fastest (C order). This matches
numpy's ``kron`` operand order, so the product adjacency is
``kron(A_G, I) + kron(I, A_H)`` and product eigenvectors are
``kron(x_G, y_H)``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Iterator, Sequence

import numpy as np

from .errors import InvalidParameterError, SizeCapError
from .graphs import AdjacencyMatrix, Graph
from .spectra import Spectrum

DEFAULT_SIZE_CAP = 100_000


def mixed_radix_encode(indices: Sequence[int], dims: Sequence[int]) -> int:
    flat = 0
    for i, n in zip(indices, dims):
        flat = flat * n + i
    return flat


def mixed_radix_decode(flat: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for n in reversed(dims):
        out.append(flat % n)
        flat //= n
    return tuple(reversed(out))


@dataclass(frozen=True)
class ProductGraph:
    """Explicitly constructed Cartesian product with its factor list."""

    factors: tuple[Graph, ...]
    composite: Graph

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.n_vertices for f in self.factors)

    def flat_index(self, indices: Sequence[int]) -> int:
        if len(indices) != len(self.factors):
            raise InvalidParameterError("index tuple length must equal factor count")
        for i, n in zip(indices, self.dims):
            if not 0 <= i < n:
                raise InvalidParameterError(f"factor index {i} out of range [0,{n})")
        return mixed_radix_encode(indices, self.dims)

    def factor_indices(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.composite.n_vertices:
            raise InvalidParameterError(f"flat index {flat} out of range")
        return mixed_radix_decode(flat, self.dims)


def cartesian_product(g: Graph, h: Graph, size_cap: int = DEFAULT_SIZE_CAP) -> ProductGraph:
    """Explicit Cartesian product: an edge wherever one factor steps and the
    other stands still. Weights are inherited from the contributing edge."""
    dim = g.n_vertices * h.n_vertices
    if dim > size_cap:
        raise SizeCapError(f"product dim {dim} exceeds cap {size_cap}")
    nh = h.n_vertices
    edges = []
    for u, v, w in g.edges:
        for x in range(nh):
            edges.append((u * nh + x, v * nh + x, w))
    for x, y, w in h.edges:
        for u in range(g.n_vertices):
            edges.append((u * nh + x, u * nh + y, w))
    return ProductGraph((g, h), Graph(dim, tuple(edges)))


def product_graph(factors: Sequence[Graph], size_cap: int = DEFAULT_SIZE_CAP) -> ProductGraph:
    """Left fold of `cartesian_product` over two or more factors.

    Under the flat-index convention the fold is exactly associative, so the
    result records the flattened factor list.
    """
    if len(factors) < 1:
        raise InvalidParameterError("need at least one factor")
    if len(factors) == 1:
        return ProductGraph((factors[0],), factors[0])
    acc = cartesian_product(factors[0], factors[1], size_cap)
    for f in factors[2:]:
        step = cartesian_product(acc.composite, f, size_cap)
        acc = ProductGraph(acc.factors + (f,), step.composite)
    return acc


def kronecker_sum_adjacency(a_g: AdjacencyMatrix, a_h: AdjacencyMatrix,
                            size_cap: int = DEFAULT_SIZE_CAP) -> AdjacencyMatrix:
    """kron(A_G, I) + kron(I, A_H): the product adjacency, bit-identical to
    adjacency(cartesian_product(G, H).composite) for undisordered factors.

    Diagonal disorder on either factor lands on the product diagonal (the
    identity blocks carry it through), so disordered products compose the
    same way.
    """
    dim = a_g.dim * a_h.dim
    if dim > size_cap:
        raise SizeCapError(f"product dim {dim} exceeds cap {size_cap}")
    entries = np.kron(a_g.entries, np.eye(a_h.dim)) + np.kron(np.eye(a_g.dim), a_h.entries)
    disorder = None
    if a_g.diagonal_disorder is not None or a_h.diagonal_disorder is not None:
        dg = a_g.diagonal_disorder if a_g.diagonal_disorder is not None else np.zeros(a_g.dim)
        dh = a_h.diagonal_disorder if a_h.diagonal_disorder is not None else np.zeros(a_h.dim)
        disorder = (dg[:, None] + dh[None, :]).ravel()
    return AdjacencyMatrix(entries, disorder)


@dataclass(frozen=True)
class ComposedSpectrum:
    """All eigenvalue sums of the factor spectra, labeled by factor indices.

    ``values[flat]`` is the eigenvalue whose per-factor labels are the
    mixed-radix digits of ``flat``; it equals the left-fold sum of the
    labeled factor eigenvalues exactly, by construction. Eigenvectors are
    tensor products of factor eigenvectors, built on demand.
    """

    factor_spectra: tuple[Spectrum, ...]
    values: np.ndarray

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.factor_spectra)

    @property
    def size(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_factors(self) -> int:
        return len(self.factor_spectra)

    def labels_of(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.size:
            raise InvalidParameterError(f"flat index {flat} out of range")
        return mixed_radix_decode(flat, self.dims)

    def flat_of(self, labels: Sequence[int]) -> int:
        self._check_labels(labels)
        return mixed_radix_encode(labels, self.dims)

    def value_of(self, labels: Sequence[int]) -> float:
        return float(self.values[self.flat_of(labels)])

    def descending_order(self) -> np.ndarray:
        """Flat indices sorted by descending value; ties keep flat order."""
        return np.argsort(-self.values, kind="stable")

    def iter_sorted(self) -> Iterator[tuple[float, tuple[int, ...]]]:
        for flat in self.descending_order():
            yield float(self.values[flat]), self.labels_of(int(flat))

    def _check_labels(self, labels: Sequence[int]) -> None:
        if len(labels) != self.n_factors:
            raise InvalidParameterError("label tuple length must equal factor count")
        for i, n in zip(labels, self.dims):
            if not 0 <= i < n:
                raise InvalidParameterError(f"label {i} out of range [0,{n})")


def compose_spectra(factor_spectra: Sequence[Spectrum]) -> ComposedSpectrum:
    """All pairwise (N-wise) eigenvalue sums, without any product matrix.

    Associative by construction: the value grid is the left fold of outer
    sums, raveled in C order to match the flat-index convention.
    """
    if len(factor_spectra) == 0:
        raise InvalidParameterError("need at least one factor spectrum")
    grid = factor_spectra[0].eigenvalues
    for s in factor_spectra[1:]:
        grid = np.add.outer(grid, s.eigenvalues)
    return ComposedSpectrum(tuple(factor_spectra), grid.ravel())


def product_eigenvector(c: ComposedSpectrum, labels: Sequence[int]) -> np.ndarray:
    """Tensor product of the labeled factor eigenvectors (first factor slowest)."""
    c._check_labels(labels)
    vec = None
    for s, i in zip(c.factor_spectra, labels):
        if s.eigenvectors is None:
            raise InvalidParameterError("factor spectrum carries no eigenvectors")
        col = s.eigenvectors[:, i]
        vec = col if vec is None else np.kron(vec, col)
    return vec


def composed_spectrum_rows(c: ComposedSpectrum,
                           emergent_indices: Sequence[frozenset[int]] | None = None,
                           ) -> Iterator[list]:
    """CSV rows `value,label_1,...,label_N,n_emergent_factors`, sorted descending.

    ``n_emergent_factors`` counts factor components whose label is in that
    factor's emergent index set (0 everywhere when no sets are given).
    """
    if emergent_indices is not None and len(emergent_indices) != c.n_factors:
        raise InvalidParameterError("one emergent index set per factor required")
    for value, labels in c.iter_sorted():
        if emergent_indices is None:
            n_em = 0
        else:
            n_em = sum(1 for i, s in zip(labels, emergent_indices) if i in s)
        yield [repr(value), *labels, n_em]


def write_composed_spectrum_csv(c: ComposedSpectrum, fh: IO[str],
                                emergent_indices: Sequence[frozenset[int]] | None = None) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    header = ["value"] + [f"label_{k+1}" for k in range(c.n_factors)] + ["n_emergent_factors"]
    writer.writerow(header)
    for row in composed_spectrum_rows(c, emergent_indices):
        writer.writerow(row)
