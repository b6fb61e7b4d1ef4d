"""Regular-representation (circulant) matrices of quotient-ring elements.

A polynomial over Z_l1 x ... x Z_lD maps to an n x n matrix over GF(2),
n = prod(l_i).  Column j is decoded in mixed radix (last variable least
significant); each monomial shifts the decoded index componentwise.
"""

from __future__ import annotations

import numpy as np

from .gf2 import BitMatrix, DimensionMismatch, mat_mul
from .ring import GroupSpec, RingElem, SpecMismatch

# Refuse to materialize circulants beyond this group size unless the caller
# raises the limit explicitly.
DEFAULT_SIZE_BUDGET = 4096


class SizeBudgetExceeded(Exception):
    def __init__(self, n: int, budget: int):
        self.n = n
        self.budget = budget
        super().__init__(f"group size {n} exceeds the size budget {budget}")


def poly_to_circulant(
    f: RingElem, spec: GroupSpec, size_budget: int = DEFAULT_SIZE_BUDGET
) -> BitMatrix:
    """Column-by-column construction; exponents are already reduced into
    [0, l_k), so no lifting step is needed."""
    if f.spec != spec:
        raise SpecMismatch(f"element spec {f.spec} does not match {spec}")
    n = spec.size
    if n > size_budget:
        raise SizeBudgetExceeded(n, size_budget)
    orders = spec.orders
    dense = np.zeros((n, n), dtype=np.uint8)
    for j in range(n):
        idxs = spec.index_to_exponents(j)
        for mono in f.monomials:
            row = 0
            for k in range(spec.dim):
                row = row * orders[k] + (idxs[k] + mono[k]) % orders[k]
            dense[row, j] ^= 1
    return BitMatrix.from_dense(dense)


def circulant_commute_check(mats: list[BitMatrix]) -> bool:
    """True iff all pairs commute mod 2."""
    for m in mats:
        if m.rows != m.cols or m.shape != mats[0].shape:
            raise DimensionMismatch("commute_check", mats[0].shape, m.shape)
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mat_mul(mats[i], mats[j]) != mat_mul(mats[j], mats[i]):
                return False
    return True
