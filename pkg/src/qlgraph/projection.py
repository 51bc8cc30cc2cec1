"""Projection of product eigenvectors onto the 2^N qubit tensor basis.

Each QL bit contributes two block-uniform unit vectors J_0 (over basis_1's
vertices) and J_1 (over basis_2's); their tensor products over the factors
form an orthonormal set indexed by N-bit strings. The alpha coefficient of
a product eigenvector on bit string b is the inner product with that
J-product vector; for a vector with known factor decomposition it factors
into per-bit inner products.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParameterError
from .qlbits import IN_PHASE, OUT_OF_PHASE, EmergentPair, QLBit, emergent_pair
from .spectra import fix_sign


@dataclass(frozen=True)
class JBasis:
    """Block-uniform unit vectors of one QL bit on its composite space."""

    j0: np.ndarray
    j1: np.ndarray

    @classmethod
    def from_qlbit(cls, q: QLBit) -> "JBasis":
        n1, n2 = q.basis_1.n_vertices, q.basis_2.n_vertices
        j0 = np.zeros(n1 + n2)
        j0[:n1] = 1.0 / math.sqrt(n1)
        j1 = np.zeros(n1 + n2)
        j1[n1:] = 1.0 / math.sqrt(n2)
        return cls(j0, j1)

    def stacked(self) -> np.ndarray:
        """(dim, 2) matrix with columns [j0, j1]."""
        return np.stack([self.j0, self.j1], axis=1)


@dataclass(frozen=True)
class ProjectionReport:
    """Alpha coefficients over all N-bit strings plus the leftover mass.

    residual_norm is the eigenvector weight orthogonal to every J-product
    vector; alphas and residual satisfy sum(alpha^2) + residual^2 = |v|^2.
    """

    alphas: dict[str, float]
    residual_norm: float
    eigenvalue: float | None = None
    labels: tuple[int, ...] | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"alphas": dict(sorted(self.alphas.items())), "residual": self.residual_norm}
        if self.eigenvalue is not None:
            out["eigenvalue"] = self.eigenvalue
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out


def block_split(v: np.ndarray, q: QLBit) -> tuple[np.ndarray, np.ndarray]:
    """Split a composite-space vector into its block restrictions.

    Returns (U_1, X_2) as full-length vectors that are zero off their block,
    so U_1 + X_2 == v exactly and <U_1, X_2> = 0.
    """
    n1, n2 = q.basis_1.n_vertices, q.basis_2.n_vertices
    if v.shape != (n1 + n2,):
        raise InvalidParameterError(f"vector length {v.shape} does not match composite dim {n1 + n2}")
    u = np.zeros_like(v)
    x = np.zeros_like(v)
    u[:n1] = v[:n1]
    x[n1:] = v[n1:]
    return u, x


def _bit_strings(n: int) -> list[str]:
    return [format(i, f"0{n}b") for i in range(2**n)]


def project_alphas(v: np.ndarray | None, qlbits: Sequence[QLBit],
                   factor_vectors: Sequence[np.ndarray] | None = None,
                   eigenvalue: float | None = None,
                   labels: Sequence[int] | None = None) -> ProjectionReport:
    """Alpha coefficients of a product-space vector on the qubit basis.

    With ``factor_vectors`` (one per-bit eigenvector whose tensor product is
    the state), alphas factor into products of per-bit inner products with
    J_0/J_1. Without them, ``v`` is projected directly onto the J-product
    vectors; the two paths agree for product vectors.
    """
    if len(qlbits) == 0:
        raise InvalidParameterError("need at least one QL bit")
    n = len(qlbits)
    bases = [JBasis.from_qlbit(q) for q in qlbits]
    dims = [q.composite.n_vertices for q in qlbits]

    if factor_vectors is not None:
        if len(factor_vectors) != n:
            raise InvalidParameterError("one factor eigenvector per QL bit required")
        per_factor = []
        sq_norm = 1.0
        for w, jb, d in zip(factor_vectors, bases, dims):
            w = np.asarray(w, dtype=np.float64)
            if w.shape != (d,):
                raise InvalidParameterError(f"factor vector length {w.shape} != composite dim {d}")
            per_factor.append(np.array([w @ jb.j0, w @ jb.j1]))
            sq_norm *= float(w @ w)
        tensor = per_factor[0]
        for comp in per_factor[1:]:
            tensor = np.multiply.outer(tensor, comp)
    else:
        if v is None:
            raise InvalidParameterError("either v or factor_vectors must be given")
        v = np.asarray(v, dtype=np.float64)
        total = 1
        for d in dims:
            total *= d
        if v.shape != (total,):
            raise InvalidParameterError(f"vector length {v.shape} != product dim {total}")
        sq_norm = float(v @ v)
        tensor = v.reshape(dims)
        # Contract each factor axis with [j0, j1]; axes accumulate in order.
        for jb in bases:
            tensor = np.tensordot(tensor, jb.stacked(), axes=([0], [0]))

    flat = tensor.reshape(-1)
    alphas = {b: float(a) for b, a in zip(_bit_strings(n), flat)}
    residual_sq = max(0.0, sq_norm - float(flat @ flat))
    return ProjectionReport(alphas, math.sqrt(residual_sq), eigenvalue,
                            tuple(labels) if labels is not None else None)


@dataclass(frozen=True)
class BellCombination:
    """Projection of one emergent-pair product choice onto the qubit basis."""

    choices: tuple[int, ...]
    eigenvalue: float
    report: ProjectionReport
    sign_pattern: tuple[int, ...]
    expected_pattern: tuple[int, ...]
    matches_expected: bool
    max_magnitude_deviation: float


@dataclass(frozen=True)
class BellStateReport:
    combinations: tuple[BellCombination, ...]
    degraded_isolation: tuple[bool, bool]
    all_match: bool


def bell_state_check(qlbit_a: QLBit, qlbit_b: QLBit, min_gap: float = 0.5) -> BellStateReport:
    """Project all four emergent-pair product combinations of two QL bits.

    For each choice (s_a, s_b) with s = +1 (in-phase) or -1 (out-of-phase),
    the alpha sign pattern over (00, 01, 10, 11) is compared, up to a global
    sign, against the tensor product of per-bit patterns (+,+) and (+,-).
    Magnitudes are reported against the uniform |alpha| = 1/2.
    """
    pairs = (emergent_pair(qlbit_a, min_gap), emergent_pair(qlbit_b, min_gap))
    qlbits = (qlbit_a, qlbit_b)
    combos = []
    all_match = True
    for sa in (1, -1):
        for sb in (1, -1):
            vectors = []
            value = 0.0
            for choice, pair in zip((sa, sb), pairs):
                phase = IN_PHASE if choice == 1 else OUT_OF_PHASE
                state = pair.by_phase(phase)
                if state is None:
                    # Phase classification failed; fall back positionally.
                    state = pair.states[0 if choice == 1 else 1]
                vectors.append(fix_sign(state.eigenvector))
                value += state.eigenvalue
            report = project_alphas(None, qlbits, factor_vectors=vectors, eigenvalue=value)
            keys = _bit_strings(2)
            pattern = tuple(int(np.sign(report.alphas[k])) for k in keys)
            expected = _expected_pattern((sa, sb))
            neg = tuple(-x for x in expected)
            matches = pattern in (expected, neg) and 0 not in pattern
            deviation = max(abs(abs(report.alphas[k]) - 0.5) for k in keys)
            combos.append(BellCombination((sa, sb), value, report, pattern, expected,
                                          matches, deviation))
            all_match = all_match and matches
    degraded = (pairs[0].degraded_isolation, pairs[1].degraded_isolation)
    return BellStateReport(tuple(combos), degraded, all_match)


def _expected_pattern(choices: Sequence[int]) -> tuple[int, ...]:
    """Tensor product of per-factor patterns (+,+) for +1 and (+,-) for -1."""
    pattern = np.array([1.0])
    for s in choices:
        pattern = np.multiply.outer(pattern, np.array([1.0, float(s)])).reshape(-1)
    return tuple(int(x) for x in pattern)
