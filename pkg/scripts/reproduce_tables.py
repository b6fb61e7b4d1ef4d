#!/usr/bin/env python3
"""Recompute the bundled instance table and the confinement profiles of the
small reference codes, printing results side by side with the published
values.

Example:
    python scripts/reproduce_tables.py --iterations 100
"""

import argparse
import sys
import time

from mmcodes import codeparams as cp
from mmcodes.cli import build_from_config, load_fixture, main as cli_main


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--iterations", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--confinement-w", type=int, default=4)
    ap.add_argument("--skip-confinement", action="store_true")
    args = ap.parse_args()

    rc = cli_main(
        ["table2", "--iterations", str(args.iterations), "--seed", str(args.seed)]
    )
    if args.skip_confinement:
        return rc

    for fixture, w_max in (
        ("table2_row01.json", args.confinement_w),
        ("table2_row02.json", args.confinement_w),
        ("toric4d.json", 3),
    ):
        cfg = load_fixture(fixture)
        code = build_from_config(cfg)
        t0 = time.time()
        for et in ("X", "Z"):
            prof = cp.confinement_profile(code, et, w_max)
            print(
                f"{cfg.name} {et}-confinement w=1..{w_max}: "
                f"{list(prof.entries)}  ({time.time() - t0:.1f}s)"
            )
    return rc


if __name__ == "__main__":
    sys.exit(main())
