"""
Test suite for SVD, QR and interpolative decompositions
"""

import numpy as np
import pytest

from src.tensor.dense import DenseTensor, contract
from src.tensor.factorize import interpolative_decomposition, qr_split, svd_split
from src.utils.errors import EmptyIndexSet


def _low_rank(rng, shape, rank):
    return rng.standard_normal((shape[0], rank)) @ rng.standard_normal((rank, shape[1]))


def test_svd_split_exact_rank(rng):
    """Test a rank-3 tensor splits losslessly with 3 kept values"""
    m = _low_rank(rng, (8, 6), 3)
    t = DenseTensor(("a", "b", "c"), m.reshape(2, 4, 6))
    f = svd_split(t, ["a", "b"], chi_max=10, tol=1e-12)
    assert f.kept_rank == 3
    back = contract(f.left, f.right).transpose(("a", "b", "c"))
    np.testing.assert_allclose(back.data, t.data, atol=1e-10)


def test_svd_split_cap_and_weight(rng):
    """Test the cap wins over tol and the discarded weight is reported"""
    t = DenseTensor(("a", "b"), np.diag([4.0, 2.0, 1.0]))
    f = svd_split(t, ["a"], chi_max=2)
    assert f.kept_rank == 2
    assert f.discarded_weight == pytest.approx(1.0 / 21.0)


def test_svd_split_empty_side():
    t = DenseTensor(("a", "b"), np.ones((2, 2)))
    with pytest.raises(EmptyIndexSet):
        svd_split(t, [], chi_max=1)
    with pytest.raises(EmptyIndexSet):
        svd_split(t, ["a", "b"], chi_max=1)


def test_qr_split_isometry(rng):
    t = DenseTensor(("a", "b", "c"), rng.standard_normal((2, 3, 5)))
    f = qr_split(t, ["a", "b"], bond="k")
    q, _ = f.left.matricize(["a", "b"])
    np.testing.assert_allclose(q.T @ q, np.eye(q.shape[1]), atol=1e-12)
    back = contract(f.left, f.right).transpose(("a", "b", "c"))
    np.testing.assert_allclose(back.data, t.data, atol=1e-12)


def test_interpolative_decomposition_exact(rng):
    """Test C holds exact columns and Z is the identity on the pivots"""
    m = _low_rank(rng, (10, 12), 4)
    d = interpolative_decomposition(m, tol=1e-12)
    assert d.rank == 4
    assert not d.rank_exceeded
    np.testing.assert_array_equal(d.C, m[:, d.pivots])
    np.testing.assert_allclose(d.Z[:, d.pivots], np.eye(4), atol=1e-14)
    np.testing.assert_allclose(d.C @ d.Z, m, atol=1e-10)


def test_interpolative_decomposition_rank_cap(rng):
    """Test hitting r_max before tol sets rank_exceeded"""
    m = rng.standard_normal((6, 6))
    d = interpolative_decomposition(m, tol=1e-12, r_max=2)
    assert d.rank == 2
    assert d.rank_exceeded


def test_interpolative_decomposition_zero_matrix():
    d = interpolative_decomposition(np.zeros((3, 4)))
    assert d.rank == 1
    assert d.residual == 0.0


def test_interpolative_decomposition_skips_zero_column():
    """Test the nonzero column is pivoted and the zero column gets a zero weight"""
    m = np.array([[0.0, 1.0], [0.0, 2.0]])
    d = interpolative_decomposition(m, tol=1e-12)
    assert list(d.pivots) == [1]
    assert d.Z[0, 0] == 0.0
    np.testing.assert_allclose(d.C @ d.Z, m, atol=1e-12)
