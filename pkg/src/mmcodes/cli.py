"""Command-line surface: build, verify, analyze, search, and export codes,
plus regression comparison of the bundled instance table.

Exit codes: 0 success, 1 verification failure or mismatch, 2 usage/parse
error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from importlib import resources
from math import comb
from pathlib import Path

from . import codeparams as cp
from . import formats
from .circulant import DEFAULT_SIZE_BUDGET, SizeBudgetExceeded
from .gf2 import GF2Error
from .koszul import KoszulError, MCssCode, build_code, chain_dims
from .ring import GroupSpec, ParseError, RingError, parse_poly
from .search import SearchConfig, SearchError, run_search

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

SCHEMA_VERSION = 1


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class BuildConfig:
    name: str
    t: int
    orders: tuple[int, ...]
    generators: tuple[str, ...]
    variables: tuple[str, ...] | None = None
    q_override: int | None = None
    published: dict | None = None


def load_config(path: str) -> BuildConfig:
    try:
        with open(path) as f:
            doc = json.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(doc, default_name=Path(path).stem)


def config_from_dict(doc: dict, default_name: str = "") -> BuildConfig:
    try:
        t = int(doc["t"])
        orders = tuple(int(o) for o in doc["orders"])
        gens = tuple(str(g) for g in doc["generators"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"config missing/invalid field: {exc}") from exc
    if len(gens) != t:
        raise ConfigError(f"config has {len(gens)} generators but t={t}")
    variables = doc.get("variables")
    return BuildConfig(
        name=str(doc.get("name", default_name)),
        t=t,
        orders=orders,
        generators=gens,
        variables=tuple(variables) if variables else None,
        q_override=doc.get("q_override"),
        published=doc.get("published"),
    )


def build_from_config(
    cfg: BuildConfig, size_budget: int = DEFAULT_SIZE_BUDGET
) -> MCssCode:
    spec = GroupSpec(cfg.orders)
    gens = [parse_poly(g, spec, cfg.variables) for g in cfg.generators]
    code, _ = build_code(
        gens,
        spec,
        q_override=cfg.q_override,
        size_budget=size_budget,
        provenance={"name": cfg.name},
    )
    return code


def enum_budget() -> int:
    env = os.environ.get("MMCODES_BUDGET")
    return int(env) if env else cp.DEFAULT_ENUM_BUDGET


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _matrices(code: MCssCode) -> dict:
    out = {"p_x": code.p_x, "p_z": code.p_z}
    if code.m_x is not None:
        out["m_x"] = code.m_x
    if code.m_z is not None:
        out["m_z"] = code.m_z
    return out


def manifest(code: MCssCode, cfg: BuildConfig) -> dict:
    mats = _matrices(code)
    return {
        "schema_version": SCHEMA_VERSION,
        "name": cfg.name,
        "n": code.n,
        "t": code.t,
        "q": code.q,
        "orders": list(cfg.orders),
        "generators": list(cfg.generators),
        "chain_dims": chain_dims(code.t, code.spec.size),
        "shapes": {k: list(m.shape) for k, m in mats.items()},
        "metachecks": {"m_x": code.m_x is not None, "m_z": code.m_z is not None},
        "orthogonality": {
            "px_pzT_zero": True,
            "mx_px_zero": code.m_x is not None or None,
            "mz_pz_zero": code.m_z is not None or None,
        },
        "hashes": {k: _sha256(m.tobytes()) for k, m in mats.items()},
    }


def _emit(doc: dict, out):
    out.write(json.dumps(doc, sort_keys=True) + "\n")


# ---- subcommands ------------------------------------------------------


def cmd_build(args, out) -> int:
    cfg = load_config(args.config)
    code = build_from_config(cfg)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    writer = formats.write_alist if args.format == "alist" else formats.write_mtx
    ext = args.format
    for key, m in _matrices(code).items():
        (outdir / f"{key}.{ext}").write_text(writer(m))
    man = manifest(code, cfg)
    (outdir / "manifest.json").write_text(
        json.dumps(man, sort_keys=True, indent=2) + "\n"
    )
    _emit(man, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    cfg = load_config(args.config)
    # build_code asserts the chain condition and all orthogonality
    # conditions; reaching this point means they hold.
    code = build_from_config(cfg)
    _emit(
        {
            "name": cfg.name,
            "n": code.n,
            "chain_condition": True,
            "orthogonality": True,
            "metachecks": {
                "m_x": code.m_x is not None,
                "m_z": code.m_z is not None,
            },
        },
        out,
    )
    return EXIT_OK


def cmd_params(args, out) -> int:
    cfg = load_config(args.config)
    code = build_from_config(cfg)
    report = cp.analyze(
        code,
        name=cfg.name,
        w_exhaustive=args.w_exhaustive,
        iterations=args.iterations,
        confinement_w=args.confinement_w,
        ss_w=args.ss_w,
        seed=args.seed,
        workers=args.workers,
        budget=enum_budget(),
    )
    _emit(report.to_dict(), out)
    return EXIT_OK


def cmd_distance(args, out) -> int:
    cfg = load_config(args.config)
    code = build_from_config(cfg)
    bound = cp.distance_exhaustive(
        code, args.type, args.w_exhaustive, enum_budget()
    )
    if bound.upper is None and args.iterations > 0:
        r = cp.distance_randomized(
            code, args.type, args.iterations, args.seed, args.workers
        )
        if r.upper is not None:
            bound = cp.DistanceBound(bound.lower, r.upper, r.witness)
    _emit({"name": cfg.name, "type": args.type, **bound.to_dict()}, out)
    return EXIT_OK


def cmd_ssdist(args, out) -> int:
    cfg = load_config(args.config)
    code = build_from_config(cfg)
    try:
        bound = cp.single_shot_distance(
            code, args.type, args.w_max, args.iterations, args.seed, enum_budget()
        )
    except cp.MetacheckAbsent as exc:
        _emit({"name": cfg.name, "error": str(exc)}, out)
        return EXIT_VERIFY
    _emit({"name": cfg.name, "type": args.type, **bound.to_dict()}, out)
    return EXIT_OK


def cmd_confine(args, out) -> int:
    cfg = load_config(args.config)
    code = build_from_config(cfg)
    prof = cp.confinement_profile(
        code, args.type, args.w_max, mode=args.mode, seed=args.seed
    )
    _emit({"name": cfg.name, "type": args.type, **prof.to_dict()}, out)
    return EXIT_OK


def cmd_search(args, out) -> int:
    try:
        with open(args.config) as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read search config: {exc}") from exc
    try:
        config = SearchConfig(
            t=int(doc["t"]),
            orders=tuple(tuple(int(o) for o in row) for row in doc["orders"]),
            term_range=tuple(doc.get("term_range", (2, 6))),
            require_k_min=int(doc.get("require_k_min", 1)),
            require_d_min=int(doc.get("require_d_min", 2)),
            distance_budget=tuple(doc.get("distance_budget", (4, 100))),
            confinement_w_max=doc.get("confinement_w_max"),
            max_candidates=int(doc.get("max_candidates", 100)),
            seed=args.seed if args.seed is not None else int(doc.get("seed", 0)),
            workers=args.workers or int(doc.get("workers", 1)),
            structured_families=(
                tuple(doc["structured_families"])
                if doc.get("structured_families")
                else None
            ),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad search config: {exc}") from exc
    if args.out:
        with open(args.out, "w") as sink:
            accepted = run_search(config, sink)
    else:
        accepted = run_search(config, out)
    sys.stderr.write(f"accepted {len(accepted)} candidates\n")
    return EXIT_OK


def cmd_export(args, out) -> int:
    cfg = load_config(args.config)
    code = build_from_config(cfg)
    mats = _matrices(code)
    if args.matrix not in mats:
        raise ConfigError(
            f"matrix {args.matrix} not present (have {sorted(mats)})"
        )
    m = mats[args.matrix]
    if args.format == "alist":
        text = formats.write_alist(m)
    elif args.format == "mtx":
        text = formats.write_mtx(m)
    else:
        text = json.dumps(manifest(code, cfg), sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def fixture_names() -> list[str]:
    root = resources.files("mmcodes") / "fixtures"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> BuildConfig:
    path = resources.files("mmcodes") / "fixtures" / name
    return config_from_dict(json.loads(path.read_text()), Path(name).stem)


def _certifiable_w(n: int, cap: int, budget: int) -> int:
    w = 0
    while w < cap and sum(comb(n, j) for j in range(1, w + 2)) <= budget:
        w += 1
    return w


def _medians(ws: list[int]) -> tuple[int, float]:
    """(lower median, arithmetic median); published tables round with the
    arithmetic convention for even counts."""
    s = sorted(ws)
    m = len(s)
    lower = s[(m - 1) // 2]
    arith = (s[(m - 1) // 2] + s[m // 2]) / 2
    return lower, arith


def cmd_table2(args, out) -> int:
    names = [n for n in fixture_names() if n.startswith("table2_row")]
    if args.rows:
        wanted = {f"table2_row{int(r):02d}.json" for r in args.rows}
        missing = wanted - set(names)
        if missing:
            raise ConfigError(f"unknown rows: {sorted(missing)}")
        names = [n for n in names if n in wanted]
    budget = enum_budget()
    any_mismatch = False
    for name in names:
        cfg = load_fixture(name)
        pub = cfg.published or {}
        code = build_from_config(cfg)
        k = cp.logical_count(code)
        stats = cp.check_weight_stats(code)
        d_pub = pub.get("d")
        w_cert = _certifiable_w(code.n, d_pub or args.w_exhaustive, budget)
        bound = cp.distance_exhaustive(code, "Z", w_cert, budget)
        bx = cp.distance_exhaustive(code, "X", w_cert, budget)
        if bound.upper is None or (bx.upper is not None and bx.upper < bound.upper):
            if bx.upper is not None:
                bound = bx
        if bound.upper is None and args.iterations > 0 and d_pub:
            for et in ("Z", "X"):
                r = cp.distance_randomized(
                    code, et, args.iterations, args.seed, args.workers,
                    stop_at=d_pub,
                )
                if r.upper is not None and (
                    bound.upper is None or r.upper < bound.upper
                ):
                    bound = cp.DistanceBound(bound.lower, r.upper, r.witness)
                    if bound.upper is not None and bound.upper <= d_pub:
                        break
        checks = {
            "n": code.n == pub.get("n"),
            "k": k == pub.get("k"),
        }
        lower_med, arith_med = _medians(
            [int(w) for w in code.p_x.row_weights()]
            + [int(w) for w in code.p_z.row_weights()]
        )
        checks["w_med"] = pub.get("w_med") in (lower_med, arith_med)
        checks["w_max"] = max(stats.w_max_x, stats.w_max_z) == pub.get("w_max")
        d_status = "unknown"
        if d_pub is not None:
            if bound.upper is not None and bound.upper < d_pub:
                checks["d"] = False
                d_status = f"counterexample at weight {bound.upper}"
            elif bound.upper == d_pub:
                d_status = (
                    "exact" if bound.lower == bound.upper else "upper bound met"
                )
            elif bound.lower > d_pub:
                checks["d"] = False
                d_status = f"certified no logical below {bound.lower}"
            else:
                d_status = f"upper-bound only (certified > {bound.lower - 1})"
        row_ok = all(v for v in checks.values())
        any_mismatch = any_mismatch or not row_ok
        _emit(
            {
                "row": name.removesuffix(".json"),
                "n": code.n,
                "k": k,
                "d_lower": bound.lower,
                "d_upper": bound.upper,
                "d_status": d_status,
                "w_med": lower_med,
                "w_max": max(stats.w_max_x, stats.w_max_z),
                "published": pub,
                "match": row_ok,
            },
            out,
        )
    return EXIT_VERIFY if any_mismatch else EXIT_OK


# ---- argument parsing -------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mmcodes",
        description="Build and analyze multivariate multicycle CSS codes",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--workers", type=int, default=1)

    b = sub.add_parser("build", help="write check matrices and a manifest")
    b.add_argument("config")
    b.add_argument("--out", required=True)
    b.add_argument("--format", choices=["alist", "mtx"], default="alist")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check chain and orthogonality conditions")
    v.add_argument("config")
    v.set_defaults(func=cmd_verify)

    pa = sub.add_parser("params", help="full parameter report as JSON")
    pa.add_argument("config")
    pa.add_argument("--w-exhaustive", type=int, default=4, dest="w_exhaustive")
    pa.add_argument("--iterations", type=int, default=0)
    pa.add_argument("--confinement-w", type=int, default=None, dest="confinement_w")
    pa.add_argument("--ss-w", type=int, default=None, dest="ss_w")
    common(pa)
    pa.set_defaults(func=cmd_params)

    d = sub.add_parser("distance", help="distance bounds for one error type")
    d.add_argument("config")
    d.add_argument("--type", choices=["X", "Z"], required=True)
    d.add_argument("--w-exhaustive", type=int, default=4, dest="w_exhaustive")
    d.add_argument("--iterations", type=int, default=0)
    common(d)
    d.set_defaults(func=cmd_distance)

    s = sub.add_parser("ssdist", help="single-shot distance bounds")
    s.add_argument("config")
    s.add_argument("--type", choices=["X", "Z"], required=True)
    s.add_argument("--w-max", type=int, default=4, dest="w_max")
    s.add_argument("--iterations", type=int, default=0)
    common(s)
    s.set_defaults(func=cmd_ssdist)

    c = sub.add_parser("confine", help="confinement profile")
    c.add_argument("config")
    c.add_argument("--type", choices=["X", "Z"], required=True)
    c.add_argument("--w-max", type=int, default=4, dest="w_max")
    c.add_argument("--mode", choices=["exact", "cluster"], default="exact")
    common(c)
    c.set_defaults(func=cmd_confine)

    se = sub.add_parser("search", help="randomized generator search")
    se.add_argument("config")
    se.add_argument("--out", default=None)
    se.add_argument("--seed", type=int, default=None)
    se.add_argument("--workers", type=int, default=0)
    se.set_defaults(func=cmd_search)

    e = sub.add_parser("export", help="export one matrix")
    e.add_argument("config")
    e.add_argument("--matrix", choices=["p_x", "p_z", "m_x", "m_z"], required=True)
    e.add_argument("--format", choices=["alist", "mtx", "json"], default="alist")
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_export)

    t = sub.add_parser("table2", help="recompute bundled instance rows")
    t.add_argument("rows", nargs="*", help="1-based row numbers; empty = all")
    t.add_argument("--w-exhaustive", type=int, default=4, dest="w_exhaustive")
    t.add_argument("--iterations", type=int, default=50)
    common(t)
    t.set_defaults(func=cmd_table2)

    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args, out)
    except (ConfigError, ParseError, RingError, SearchError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (cp.BudgetExceeded, SizeBudgetExceeded) as exc:
        sys.stderr.write(
            f"error: {exc}\nhint: lower --w-exhaustive / --w-max or raise "
            "MMCODES_BUDGET\n"
        )
        return EXIT_BUDGET
    except (KoszulError, GF2Error, formats.FormatError, cp.MetacheckAbsent) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
