import numpy as np
import pytest

import qlgraph as ql

RESIDUAL_TOL = 1e-8
ORTHO_TOL = 1e-8


def assert_valid_spectrum(a: ql.AdjacencyMatrix, s: ql.Spectrum):
    """Spectrum invariants: order, residual, orthonormality, trace."""
    assert s.source_dim == a.dim
    assert np.all(np.diff(s.eigenvalues) <= 0)
    assert abs(s.eigenvalues.sum() - np.trace(a.entries)) <= 1e-6 * a.dim
    if s.eigenvectors is not None:
        assert ql.max_residual(a, s) <= RESIDUAL_TOL
        assert ql.orthonormality_defect(s) <= ORTHO_TOL


def make_qlbit(n=20, d=15, p=0.2, seed=1234, sign=1, deletions=0) -> ql.QLBit:
    root = ql.RngSeed(seed)
    b1 = ql.d_regular_random(n, d, root.derive(0))
    b2 = ql.d_regular_random(n, d, root.derive(1))
    if deletions:
        b1 = ql.delete_random_edges(b1, deletions, root.derive(2))
        b2 = ql.delete_random_edges(b2, deletions, root.derive(3))
    return ql.couple(b1, b2, p, sign, root.derive(4))


@pytest.fixture
def c5():
    return ql.cycle_graph(5)
