"""Koszul boundary maps on t generators and mCSS code extraction.

Degree-k chains are indexed by the k-subsets of {1..t} in lexicographic
order.  The differential sends a subset U to the sum over j in U of
generator j times the basis element of U \\ {j}; all signs vanish in
characteristic 2.  Matrices act on column vectors, so the degree-k map has
shape C(t,k-1)*n x C(t,k)*n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .circulant import DEFAULT_SIZE_BUDGET, circulant_commute_check, poly_to_circulant
from .gf2 import BitMatrix, DimensionMismatch, GF2Error, mat_mul, transpose
from .ring import GroupSpec, RingElem

ZERO = 0  # symbolic zero entry; nonzero entries are 1-based generator indices


class KoszulError(Exception):
    pass


@dataclass(frozen=True)
class SymbolicBoundary:
    """Subset-incidence patterns of the t boundary maps.

    maps[k-1] is the degree-k map as a dict {(row, col): generator_index}
    over the C(t,k-1) x C(t,k) block grid; absent keys are zero blocks.
    """

    t: int
    maps: tuple[dict[tuple[int, int], int], ...]
    subsets: tuple[tuple[tuple[int, ...], ...], ...]  # per degree 0..t

    def block_shape(self, k: int) -> tuple[int, int]:
        return (comb(self.t, k - 1), comb(self.t, k))


def symbolic_boundaries(t: int) -> SymbolicBoundary:
    if t < 1:
        raise KoszulError(f"need at least one generator, got t={t}")
    subsets = tuple(
        tuple(combinations(range(1, t + 1), k)) for k in range(t + 1)
    )
    maps = []
    for k in range(1, t + 1):
        row_index = {s: i for i, s in enumerate(subsets[k - 1])}
        grid: dict[tuple[int, int], int] = {}
        for col, u in enumerate(subsets[k]):
            for j in u:
                tt = tuple(x for x in u if x != j)
                grid[(row_index[tt], col)] = j
        maps.append(grid)
    return SymbolicBoundary(t=t, maps=tuple(maps), subsets=subsets)


def instantiate(
    sym: SymbolicBoundary,
    gens: list[RingElem],
    spec: GroupSpec,
    size_budget: int = DEFAULT_SIZE_BUDGET,
) -> list[BitMatrix]:
    """Substitute each generator index with its circulant block."""
    if len(gens) != sym.t:
        raise KoszulError(f"expected {sym.t} generators, got {len(gens)}")
    for g in gens:
        if g.spec != spec:
            raise KoszulError("generator spec mismatch")
    circs = [poly_to_circulant(g, spec, size_budget) for g in gens]
    if not circulant_commute_check(circs):
        raise KoszulError("circulant blocks do not commute pairwise")
    n = spec.size
    out = []
    for k in range(1, sym.t + 1):
        br, bc = sym.block_shape(k)
        dense = np.zeros((br * n, bc * n), dtype=np.uint8)
        for (i, j), s in sym.maps[k - 1].items():
            dense[i * n : (i + 1) * n, j * n : (j + 1) * n] = circs[s - 1].to_dense()
        out.append(BitMatrix.from_dense(dense))
    return out


def chain_dims(t: int, n: int) -> list[int]:
    """Dimensions of the degree-0..t chain spaces."""
    return [comb(t, k) * n for k in range(t + 1)]


def verify_complex(maps: list[BitMatrix]) -> bool:
    """True iff consecutive maps compose to zero."""
    for k in range(len(maps) - 1):
        if maps[k].cols != maps[k + 1].rows:
            raise DimensionMismatch(
                "verify_complex", maps[k].shape, maps[k + 1].shape
            )
        if not mat_mul(maps[k], maps[k + 1]).is_zero():
            return False
    return True


@dataclass(frozen=True)
class MCssCode:
    """CSS code with optional metachecks extracted from a chain complex."""

    n: int
    p_x: BitMatrix
    p_z: BitMatrix
    m_x: BitMatrix | None
    m_z: BitMatrix | None
    spec: GroupSpec
    generators: tuple[RingElem, ...]
    t: int
    q: int
    provenance: dict = field(default_factory=dict)


def extract_mcss(
    maps: list[BitMatrix],
    t: int,
    spec: GroupSpec,
    gens: list[RingElem],
    q_override: int | None = None,
    provenance: dict | None = None,
) -> MCssCode:
    """Pick qubits in degree q and read the check/metacheck matrices off the
    surrounding maps.  All orthogonality conditions are asserted."""
    q = q_override if q_override is not None else t // 2
    if not 1 <= q <= t - 1:
        raise KoszulError(f"qubit degree q={q} out of range 1..{t - 1}")
    p_x = maps[q - 1]
    p_z = transpose(maps[q])
    m_x = maps[q - 2] if q >= 2 else None
    m_z = transpose(maps[q + 1]) if q + 2 <= t else None

    if not mat_mul(p_x, transpose(p_z)).is_zero():
        raise GF2Error("P_X P_Z^T != 0: inconsistent instantiation")
    if m_x is not None and not mat_mul(m_x, p_x).is_zero():
        raise GF2Error("M_X P_X != 0: inconsistent instantiation")
    if m_z is not None and not mat_mul(m_z, p_z).is_zero():
        raise GF2Error("M_Z P_Z != 0: inconsistent instantiation")

    return MCssCode(
        n=p_x.cols,
        p_x=p_x,
        p_z=p_z,
        m_x=m_x,
        m_z=m_z,
        spec=spec,
        generators=tuple(gens),
        t=t,
        q=q,
        provenance=dict(provenance or {}),
    )


def build_code(
    gens: list[RingElem],
    spec: GroupSpec,
    q_override: int | None = None,
    size_budget: int = DEFAULT_SIZE_BUDGET,
    provenance: dict | None = None,
) -> tuple[MCssCode, list[BitMatrix]]:
    """Full pipeline: symbolic maps, circulant instantiation, chain-condition
    check, mCSS extraction.  Returns the code and the instantiated maps."""
    t = len(gens)
    sym = symbolic_boundaries(t)
    maps = instantiate(sym, gens, spec, size_budget)
    if not verify_complex(maps):
        raise KoszulError("chain condition failed: some d_k d_{k+1} != 0")
    code = extract_mcss(maps, t, spec, gens, q_override, provenance)
    return code, maps
