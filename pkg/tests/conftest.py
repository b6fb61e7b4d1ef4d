"""Shared test oracles, implemented independently of the library internals.

The oracles deliberately use different data structures (dense uint8 arrays,
Python sets of column indices) than the bit-packed implementation they
check.
"""

import numpy as np
import pytest

from mmcodes.gf2 import BitMatrix


def naive_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Triple-loop product mod 2."""
    n, m = a.shape
    m2, p = b.shape
    assert m == m2
    out = np.zeros((n, p), dtype=np.uint8)
    for i in range(n):
        for k in range(m):
            if a[i, k]:
                for j in range(p):
                    out[i, j] ^= b[k, j]
    return out


def oracle_rank(dense: np.ndarray) -> int:
    """Row elimination on sets of column indices."""
    rows = [set(np.nonzero(r)[0].tolist()) for r in dense]
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        pivot_row = min(rows, key=min)
        rows.remove(pivot_row)
        pc = min(pivot_row)
        rows = [r ^ pivot_row if pc in r else r for r in rows]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def oracle_in_rowspace(dense: np.ndarray, v: np.ndarray) -> bool:
    stacked = np.vstack([dense, v[None, :]])
    return oracle_rank(stacked) == oracle_rank(dense)


def random_dense(rng: np.random.Generator, rows: int, cols: int, p=0.4):
    return (rng.random((rows, cols)) < p).astype(np.uint8)


def random_bitmatrix(rng: np.random.Generator, rows: int, cols: int, p=0.4):
    return BitMatrix.from_dense(random_dense(rng, rows, cols, p))


def shift_matrix(order: int, power: int) -> np.ndarray:
    s = np.zeros((order, order), dtype=np.uint8)
    s[(np.arange(order) + power) % order, np.arange(order)] = 1
    return s


def kron_circulant(orders, monomials) -> np.ndarray:
    """Kronecker-product construction of a multivariate circulant."""
    n = int(np.prod(orders))
    out = np.zeros((n, n), dtype=np.uint8)
    for exps in monomials:
        m = np.ones((1, 1), dtype=np.uint8)
        for o, e in zip(orders, exps):
            m = np.kron(m, shift_matrix(o, e))
        out ^= m
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
