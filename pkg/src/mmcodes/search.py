"""Randomized search over generator polynomials.

Candidates pass through staged filters (construction, logical count,
certified low-weight distance, randomized distance, optional confinement);
accepted candidates stream out as JSONL records, followed by a telemetry
footer with per-stage rejection counters.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from . import codeparams as cp
from .circulant import DEFAULT_SIZE_BUDGET
from .koszul import build_code
from .ring import GroupSpec, RingElem, _names_for, parse_poly, render


class SearchError(Exception):
    pass


@dataclass(frozen=True)
class SearchConfig:
    t: int
    orders: tuple[tuple[int, ...], ...]
    term_range: tuple[int, int] = (2, 6)
    require_k_min: int = 1
    require_d_min: int = 2
    distance_budget: tuple[int, int] = (4, 100)  # (w_exhaustive, iterations)
    confinement_w_max: int | None = None
    max_candidates: int = 100
    seed: int = 0
    workers: int = 1
    structured_families: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.t < 1:
            raise SearchError("t must be >= 1")
        if self.term_range[0] < 1 or self.term_range[0] > self.term_range[1]:
            raise SearchError(f"bad term_range {self.term_range}")
        if self.max_candidates < 0:
            raise SearchError("max_candidates must be >= 0")
        if not self.orders:
            raise SearchError("need at least one candidate order tuple")


@dataclass(frozen=True)
class Rejection:
    stage: int
    cause: str
    orders: tuple[int, ...]
    generators: tuple[str, ...]


_TEMPLATE_VAR = re.compile(r"v_([a-z])")


def _instantiate_template(
    template: str, spec: GroupSpec, rng: np.random.Generator
) -> RingElem:
    """Replace v_a, v_b, ... placeholders with a random assignment of
    distinct variables, then parse."""
    slots = []
    for m in _TEMPLATE_VAR.finditer(template):
        if m.group(1) not in slots:
            slots.append(m.group(1))
    if len(slots) > spec.dim:
        raise SearchError(
            f"template {template!r} needs {len(slots)} distinct variables, "
            f"spec has {spec.dim}"
        )
    names = _names_for(spec, None)
    perm = rng.permutation(spec.dim)
    assign = {s: names[int(perm[i])] for i, s in enumerate(slots)}
    text = _TEMPLATE_VAR.sub(lambda m: assign[m.group(1)], template)
    return parse_poly(text, spec)


def sample_generators(
    config: SearchConfig, spec: GroupSpec, rng: np.random.Generator
) -> list[RingElem]:
    """t random generators: term count uniform in term_range, monomials
    drawn without replacement; or template instances when
    structured_families is set."""
    if config.structured_families:
        fam = config.structured_families
        return [
            _instantiate_template(fam[int(rng.integers(len(fam)))], spec, rng)
            for _ in range(config.t)
        ]
    n = spec.size
    lo, hi = config.term_range
    if lo > n:
        raise SearchError(f"term_range minimum {lo} exceeds ring size {n}")
    hi = min(hi, n)
    gens = []
    for _ in range(config.t):
        terms = int(rng.integers(lo, hi + 1))
        picks = rng.choice(n, size=terms, replace=False)
        monos = tuple(spec.index_to_exponents(int(j)) for j in picks)
        gens.append(RingElem(spec, monos))
    return gens


def canonical_key(spec: GroupSpec, gens) -> tuple:
    return (spec.orders, tuple(sorted(tuple(g.monomials) for g in gens)))


def evaluate_candidate(
    gens: list[RingElem],
    spec: GroupSpec,
    config: SearchConfig,
    size_budget: int = DEFAULT_SIZE_BUDGET,
) -> cp.CodeReport | Rejection:
    rendered = tuple(render(g) for g in gens)

    def reject(stage: int, cause: str) -> Rejection:
        return Rejection(stage, cause, spec.orders, rendered)

    try:
        code, _ = build_code(gens, spec, size_budget=size_budget)
    except Exception as exc:  # noqa: BLE001 - construction errors become rejections
        return reject(1, f"{type(exc).__name__}: {exc}")
    k = cp.logical_count(code)
    if k < config.require_k_min:
        return reject(2, f"k={k} < {config.require_k_min}")
    w_exh, iters = config.distance_budget
    bounds = {}
    for et in ("X", "Z"):
        try:
            b = cp.distance_exhaustive(code, et, w_exh)
        except cp.BudgetExceeded as exc:
            return reject(3, str(exc))
        if b.upper is not None and b.upper < config.require_d_min:
            return reject(3, f"d_{et.lower()} <= {b.upper}")
        bounds[et] = b
    if iters > 0:
        for et in ("X", "Z"):
            if bounds[et].upper is None:
                r = cp.distance_randomized(
                    code, et, iters, config.seed, config.workers
                )
                if r.upper is not None:
                    if r.upper < config.require_d_min:
                        return reject(4, f"d_{et.lower()} <= {r.upper}")
                    bounds[et] = cp.DistanceBound(
                        lower=bounds[et].lower, upper=r.upper, witness=r.witness
                    )
    cx = cz = None
    if config.confinement_w_max is not None:
        cx = cp.confinement_profile(
            code, "X", config.confinement_w_max, seed=config.seed
        )
        cz = cp.confinement_profile(
            code, "Z", config.confinement_w_max, seed=config.seed
        )
    return cp.CodeReport(
        name="search",
        n=code.n,
        k=k,
        d_x=bounds["X"],
        d_z=bounds["Z"],
        d_ss_x=None,
        d_ss_z=None,
        confinement_x=cx,
        confinement_z=cz,
        d_s=cp.profile_min(cx, cz),
        weights=cp.check_weight_stats(code),
        seed=config.seed,
        workers=config.workers,
        params={
            "orders": list(spec.orders),
            "generators": list(rendered),
            "w_exhaustive": w_exh,
            "iterations": iters,
        },
    )


def run_search(config: SearchConfig, sink=None) -> list[cp.CodeReport]:
    """Evaluate max_candidates random candidates; write each accepted report
    (and a final telemetry record) to sink as JSONL; return the accepts.

    Candidate i draws its rng stream from (seed, i mod workers,
    i div workers), so results are reproducible for a fixed worker count
    and a worker pool evaluating disjoint index slices sees the same
    streams.
    """
    accepted: list[cp.CodeReport] = []
    seen: set[tuple] = set()
    rejected_by_stage: dict[int, int] = {}
    duplicates = 0
    for i in range(config.max_candidates):
        rng = np.random.default_rng(
            [config.seed, i % config.workers, i // config.workers]
        )
        spec = GroupSpec(config.orders[int(rng.integers(len(config.orders)))])
        gens = sample_generators(config, spec, rng)
        key = canonical_key(spec, gens)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)
        result = evaluate_candidate(gens, spec, config)
        if isinstance(result, Rejection):
            rejected_by_stage[result.stage] = (
                rejected_by_stage.get(result.stage, 0) + 1
            )
            continue
        accepted.append(result)
        if sink is not None:
            rec = {"record": "report", **result.to_dict()}
            sink.write(json.dumps(rec, sort_keys=True) + "\n")
    if sink is not None:
        footer = {
            "record": "telemetry",
            "evaluated": config.max_candidates,
            "accepted": len(accepted),
            "duplicates": duplicates,
            "rejected_by_stage": {
                str(s): c for s, c in sorted(rejected_by_stage.items())
            },
            "seed": config.seed,
            "workers": config.workers,
        }
        sink.write(json.dumps(footer, sort_keys=True) + "\n")
    return accepted
