"""Code-parameter computation: logical count, distances, single-shot
distances, confinement profiles, and check-weight statistics.

Distance search works in two regimes:

* exhaustive: all kernel vectors of weight <= w_max are enumerated by a
  meet-in-the-middle split (two half-weight patterns with colliding
  syndromes), which visits the same set of vectors as direct enumeration in
  increasing weight / lexicographic-support order but at square-root cost;
* randomized: information-set style sampling over the kernel basis, giving
  upper bounds only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, inf

import numpy as np

from .gf2 import BitMatrix, kernel_basis, in_rowspace, rank, rref, transpose
from .koszul import MCssCode

DEFAULT_ENUM_BUDGET = 10**9
DEFAULT_IRREDUCIBILITY_BUDGET = 10**8


class BudgetExceeded(Exception):
    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"enumeration needs ~{needed:.3g} steps, over the budget {budget:.3g}; "
            "lower w_max or raise the budget (MMCODES_BUDGET)"
        )


class MetacheckAbsent(Exception):
    pass


@dataclass(frozen=True)
class DistanceBound:
    """lower is certified (no nontrivial logical strictly below it); upper
    carries a witness when known."""

    lower: int
    upper: int | None
    witness: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass(frozen=True)
class ConfinementProfile:
    """Per-weight minimum nonzero syndrome weights, 1-indexed by reduced
    error weight.  entries[w-1] is None when no qualifying error exists."""

    entries: tuple[int | None, ...]
    exact: tuple[bool, ...]
    mode: str
    fell_back: bool = False

    def to_dict(self) -> dict:
        return {
            "entries": list(self.entries),
            "exact": list(self.exact),
            "mode": self.mode,
            "fell_back": self.fell_back,
        }


def _support_key(sup: int) -> tuple[int, ...]:
    return tuple(i for i in range(sup.bit_length()) if (sup >> i) & 1)


def _col_ints(m: BitMatrix) -> list[int]:
    return m.col_ints()


def _enum_cost(n: int, w_max: int) -> int:
    return sum(comb(n, j) for j in range(1, w_max + 1))


def _xor_cols(cols: list[int], idxs) -> int:
    s = 0
    for i in idxs:
        s ^= cols[i]
    return s


def _syndrome_patterns(cols: list[int], max_w: int):
    """All supports of weight <= max_w with their syndromes, grouped by
    syndrome value."""
    n = len(cols)
    buckets: dict[int, list[tuple[int, int]]] = {}

    def rec(start: int, syn: int, sup: int, w: int):
        buckets.setdefault(syn, []).append((sup, w))
        if w == max_w:
            return
        for i in range(start, n):
            rec(i + 1, syn ^ cols[i], sup | (1 << i), w + 1)

    rec(0, 0, 0, 0)
    return buckets


def low_weight_kernel_vectors(
    p: BitMatrix, w_max: int, budget: int = DEFAULT_ENUM_BUDGET
) -> dict[int, list[int]]:
    """All v != 0 with p v^T = 0 and |v| <= w_max, as weight -> supports
    sorted by lexicographic support order."""
    n = p.cols
    w_max = min(w_max, n)
    needed = _enum_cost(n, w_max)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    half = (w_max + 1) // 2
    buckets = _syndrome_patterns(_col_ints(p), half)
    found: set[int] = set()
    for group in buckets.values():
        m = len(group)
        for i in range(m):
            sup_a, w_a = group[i]
            for j in range(i + 1, m):
                sup_b, w_b = group[j]
                if w_a + w_b <= w_max and not (sup_a & sup_b):
                    v = sup_a | sup_b
                    if v:
                        found.add(v)
    out: dict[int, list[int]] = {}
    for v in found:
        out.setdefault(v.bit_count(), []).append(v)
    for w in out:
        out[w].sort(key=_support_key)
    return out


def _select_check_pair(code: MCssCode, err_type: str) -> tuple[BitMatrix, BitMatrix]:
    """For an error of the given Pauli type, return (detecting matrix,
    same-type stabilizer matrix)."""
    if err_type == "Z":
        return code.p_x, code.p_z
    if err_type == "X":
        return code.p_z, code.p_x
    raise ValueError(f"err_type must be 'X' or 'Z', got {err_type!r}")


def logical_count(code: MCssCode) -> int:
    return code.n - rank(code.p_x) - rank(code.p_z)


def _min_logical(
    kv: dict[int, list[int]], stab_cache, w_max: int
) -> DistanceBound:
    for w in range(1, w_max + 1):
        for v in kv.get(w, []):
            if not in_rowspace(stab_cache, v):
                return DistanceBound(lower=w, upper=w, witness=_support_key(v))
    return DistanceBound(lower=w_max + 1, upper=None, witness=None)


def distance_exhaustive(
    code: MCssCode,
    err_type: str,
    w_max: int,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> DistanceBound:
    """Certified search over all errors of weight <= w_max."""
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    p, opp = _select_check_pair(code, err_type)
    kv = low_weight_kernel_vectors(p, w_max, budget)
    return _min_logical(kv, rref(opp), w_max)


def _isd_pass(
    gen_dense: np.ndarray, rng: np.random.Generator, best_w: int
) -> list[tuple[int, int]]:
    """One information-set iteration: permute columns, row-reduce, and
    return candidate (weight, support) pairs below the current best."""
    k, n = gen_dense.shape
    perm = rng.permutation(n)
    packed = BitMatrix.from_dense(gen_dense[:, perm])
    reduced = rref(packed)
    rows = reduced.rref.row_ints()[: reduced.rank]
    inv = np.empty(n, dtype=np.int64)
    inv[perm] = np.arange(n)
    out = []

    def push(v: int):
        w = v.bit_count()
        if 0 < w < best_w:
            orig = 0
            x = v
            while x:
                b = x & -x
                orig |= 1 << int(perm[b.bit_length() - 1])
                x ^= b
            out.append((w, orig))

    for r in rows:
        push(r)
    nr = len(rows)
    for i in range(nr):
        ri = rows[i]
        for j in range(i + 1, nr):
            push(ri ^ rows[j])
    return out


def distance_randomized(
    code: MCssCode,
    err_type: str,
    iterations: int,
    seed: int,
    workers: int = 1,
    stop_at: int | None = None,
) -> DistanceBound:
    """Randomized upper bound via information-set sampling: random column
    permutation, row reduction of the kernel generators, then single rows
    and row pairs as codeword candidates.  Deterministic given
    (seed, workers)."""
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    p, opp = _select_check_pair(code, err_type)
    gen = kernel_basis(p)
    if gen.rows == 0:
        return DistanceBound(lower=1, upper=None, witness=None)
    gen_dense = gen.to_dense()
    opp_cache = rref(opp)
    best_w = code.n + 1
    best_sup: int | None = None
    streams = [np.random.default_rng([seed, w]) for w in range(workers)]
    done = False
    for it in range(iterations):
        if done:
            break
        rng = streams[it % workers]
        for w, sup in sorted(_isd_pass(gen_dense, rng, best_w)):
            if w < best_w or (w == best_w and best_sup is not None
                              and _support_key(sup) < _support_key(best_sup)):
                if not in_rowspace(opp_cache, sup):
                    best_w, best_sup = w, sup
                    if stop_at is not None and best_w <= stop_at:
                        done = True
                        break
    if best_sup is None:
        return DistanceBound(lower=1, upper=None, witness=None)
    return DistanceBound(lower=1, upper=best_w, witness=_support_key(best_sup))


def single_shot_distance(
    code: MCssCode,
    check_type: str,
    w_max: int,
    iterations: int = 0,
    seed: int = 0,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> DistanceBound:
    """Minimum weight of a syndrome passing the metachecks yet not realizable
    by any error: s in ker(M) minus the column space of the check matrix."""
    if check_type == "X":
        m, p = code.m_x, code.p_x
    elif check_type == "Z":
        m, p = code.m_z, code.p_z
    else:
        raise ValueError(f"check_type must be 'X' or 'Z', got {check_type!r}")
    if m is None:
        raise MetacheckAbsent(
            f"no {check_type}-metacheck for t={code.t}, q={code.q}"
        )
    valid_cache = rref(transpose(p))
    kv = low_weight_kernel_vectors(m, w_max, budget)
    bound = _min_logical(kv, valid_cache, w_max)
    if bound.upper is not None or iterations < 1:
        return bound
    gen = kernel_basis(m)
    if gen.rows == 0:
        return bound
    gen_dense = gen.to_dense()
    best_w = m.cols + 1
    best_sup = None
    rng = np.random.default_rng([seed, 0])
    for _ in range(iterations):
        for w, sup in sorted(_isd_pass(gen_dense, rng, best_w)):
            if w < best_w and not in_rowspace(valid_cache, sup):
                best_w, best_sup = w, sup
    if best_sup is None:
        return bound
    return DistanceBound(
        lower=bound.lower, upper=best_w, witness=_support_key(best_sup)
    )


# ---- confinement ------------------------------------------------------


def _tanner_neighbors(h: BitMatrix) -> list[set[int]]:
    """Qubit adjacency through the checks of h."""
    neighbors: list[set[int]] = [set() for _ in range(h.cols)]
    for r in h.row_ints():
        sup = _support_key(r)
        for q in sup:
            neighbors[q].update(sup)
    for q in range(h.cols):
        neighbors[q].discard(q)
    return neighbors


def connected_subsets(neighbors: list[set[int]], max_size: int):
    """Every connected vertex subset of size <= max_size, exactly once
    (ESU-style enumeration rooted at the minimal vertex)."""
    n = len(neighbors)

    def extend(sub: tuple[int, ...], ext: list[int], excl: frozenset[int],
               root: int):
        yield tuple(sorted(sub))
        if len(sub) == max_size:
            return
        ext = list(ext)
        while ext:
            u = ext.pop()
            fresh = [v for v in neighbors[u] if v > root and v not in excl]
            yield from extend(
                sub + (u,), ext + fresh, excl | {u} | set(fresh), root
            )

    for v in range(n):
        start_ext = [u for u in neighbors[v] if u > v]
        yield from extend((v,), start_ext, frozenset({v}) | set(start_ext), v)


def _reachable_syndromes(cols: list[int], max_w: int) -> set[int]:
    """{KB u : |u| <= max_w} used for coset-minimality tests."""
    seen: set[int] = set()
    n = len(cols)

    def rec(start: int, syn: int, w: int):
        seen.add(syn)
        if w == max_w:
            return
        for i in range(start, n):
            rec(i + 1, syn ^ cols[i], w + 1)

    rec(0, 0, 0)
    return seen


def _minplus_closure(entries: list[int | None]) -> list[int | None]:
    w_max = len(entries)
    closed: list[float] = [e if e is not None else inf for e in entries]
    for w in range(2, w_max + 1):
        for a in range(1, w):
            closed[w - 1] = min(closed[w - 1], closed[a - 1] + closed[w - a - 1])
    return [int(c) if c < inf else None for c in closed]


def confinement_profile(
    code: MCssCode,
    err_type: str,
    w_max: int,
    mode: str = "exact",
    budget: int = DEFAULT_IRREDUCIBILITY_BUDGET,
    seed: int = 0,
    samples: int = 20000,
) -> ConfinementProfile:
    """Minimum nonzero syndrome weight over irreducible errors, per reduced
    error weight 1..w_max.

    An error of weight w is irreducible when its coset under the same-type
    stabilizers contains no lighter vector.  Candidates have supports
    connected through the checks of the detecting matrix; disconnected
    errors are recovered by the min-plus closure (syndrome weight and
    reduced weight add across syndrome-disjoint components).
    """
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    if mode not in ("exact", "cluster"):
        raise ValueError(f"mode must be 'exact' or 'cluster', got {mode!r}")
    h, stab = _select_check_pair(code, err_type)
    n = h.cols
    fell_back = False
    if mode == "exact":
        needed = sum(comb(n, j) for j in range(w_max))
        if needed > budget:
            mode, fell_back = "cluster", True

    h_cols = _col_ints(h)
    kb = kernel_basis(stab)
    kb_cols = _col_ints(kb)
    neighbors = _tanner_neighbors(h)
    best: list[float] = [inf] * w_max
    # reachable[j] tests membership of {KB u : |u| <= j}
    reachable = [_reachable_syndromes(kb_cols, j) for j in range(w_max)]

    def consider(sup: tuple[int, ...]):
        w = len(sup)
        if _xor_cols(kb_cols, sup) in reachable[w - 1]:
            return
        sw = _xor_cols(h_cols, sup).bit_count()
        if 0 < sw < best[w - 1]:
            best[w - 1] = sw

    if mode == "exact":
        for sup in connected_subsets(neighbors, w_max):
            consider(sup)
    else:
        rng = np.random.default_rng([seed, 1])
        for _ in range(samples):
            cur = [int(rng.integers(n))]
            cur_set = set(cur)
            consider(tuple(cur))
            while len(cur) < w_max:
                frontier = sorted(
                    set().union(*(neighbors[q] for q in cur)) - cur_set
                )
                if not frontier:
                    break
                q = frontier[int(rng.integers(len(frontier)))]
                cur.append(q)
                cur_set.add(q)
                consider(tuple(sorted(cur)))

    raw = [int(b) if b < inf else None for b in best]
    closed = _minplus_closure(raw)
    exact_flags = tuple(mode == "exact" for _ in range(w_max))
    return ConfinementProfile(
        entries=tuple(closed), exact=exact_flags, mode=mode, fell_back=fell_back
    )


# ---- aggregate report -------------------------------------------------


@dataclass
class CheckWeightStats:
    w_med_x: int
    w_med_z: int
    w_max_x: int
    w_max_z: int


def check_weight_stats(code: MCssCode) -> CheckWeightStats:
    """Lower-median and maximum row weights of the two check matrices."""

    def med_max(m: BitMatrix) -> tuple[int, int]:
        ws = sorted(int(w) for w in m.row_weights())
        return ws[(len(ws) - 1) // 2], ws[-1]

    mx, xx = med_max(code.p_x)
    mz, xz = med_max(code.p_z)
    return CheckWeightStats(w_med_x=mx, w_med_z=mz, w_max_x=xx, w_max_z=xz)


@dataclass
class CodeReport:
    name: str
    n: int
    k: int
    d_x: DistanceBound
    d_z: DistanceBound
    d_ss_x: DistanceBound | None
    d_ss_z: DistanceBound | None
    confinement_x: ConfinementProfile | None
    confinement_z: ConfinementProfile | None
    d_s: int | None
    weights: CheckWeightStats
    seed: int
    workers: int
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "name": self.name,
            "n": self.n,
            "k": self.k,
            "d_x": self.d_x.to_dict(),
            "d_z": self.d_z.to_dict(),
            "d_ss_x": self.d_ss_x.to_dict() if self.d_ss_x else None,
            "d_ss_z": self.d_ss_z.to_dict() if self.d_ss_z else None,
            "confinement_x": (
                self.confinement_x.to_dict() if self.confinement_x else None
            ),
            "confinement_z": (
                self.confinement_z.to_dict() if self.confinement_z else None
            ),
            "d_s": self.d_s,
            "w_med_x": self.weights.w_med_x,
            "w_med_z": self.weights.w_med_z,
            "w_max_x": self.weights.w_max_x,
            "w_max_z": self.weights.w_max_z,
            "seed": self.seed,
            "workers": self.workers,
            "params": self.params,
        }


def profile_min(*profiles: ConfinementProfile | None) -> int | None:
    vals = [
        e
        for p in profiles
        if p is not None
        for e in p.entries
        if e is not None
    ]
    return min(vals) if vals else None


def analyze(
    code: MCssCode,
    name: str = "",
    w_exhaustive: int = 4,
    iterations: int = 0,
    confinement_w: int | None = None,
    ss_w: int | None = None,
    seed: int = 0,
    workers: int = 1,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> CodeReport:
    """Run the full parameter pipeline with the given search budgets."""
    k = logical_count(code)
    bounds = {}
    for et in ("X", "Z"):
        b = distance_exhaustive(code, et, w_exhaustive, budget)
        if b.upper is None and iterations > 0:
            r = distance_randomized(code, et, iterations, seed, workers)
            if r.upper is not None:
                b = DistanceBound(lower=b.lower, upper=r.upper, witness=r.witness)
        bounds[et] = b

    sdx = sdz = None
    if ss_w is not None:
        if code.m_x is not None:
            sdx = single_shot_distance(code, "X", ss_w, iterations, seed, budget)
        if code.m_z is not None:
            sdz = single_shot_distance(code, "Z", ss_w, iterations, seed, budget)

    cx = cz = None
    if confinement_w is not None:
        cx = confinement_profile(code, "X", confinement_w, seed=seed)
        cz = confinement_profile(code, "Z", confinement_w, seed=seed)

    return CodeReport(
        name=name,
        n=code.n,
        k=k,
        d_x=bounds["X"],
        d_z=bounds["Z"],
        d_ss_x=sdx,
        d_ss_z=sdz,
        confinement_x=cx,
        confinement_z=cz,
        d_s=profile_min(cx, cz),
        weights=check_weight_stats(code),
        seed=seed,
        workers=workers,
        params={
            "w_exhaustive": w_exhaustive,
            "iterations": iterations,
            "confinement_w": confinement_w,
            "ss_w": ss_w,
        },
    )
