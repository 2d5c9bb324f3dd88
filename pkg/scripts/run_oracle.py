#!/usr/bin/env python3
"""Run the theorem verification matrix on the built-in fixtures.

    python3 scripts/run_oracle.py [--fixture luk2x2] [--trials 100000] [--seed 42] [--jobs 2]

Prints a one-line summary per fixture; ``--out DIR`` also writes the JSON
matrices.  Exits 1 if any row is refuted.
"""
import argparse
import pathlib
import sys
import time
from dataclasses import replace

from lvrough.oracle import FIXTURES, fixture, run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fixture", action="append", choices=sorted(FIXTURES))
    ap.add_argument("--trials", type=int, default=0, help="sampled completeness operators")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", type=pathlib.Path)
    args = ap.parse_args()

    ok = True
    for name in args.fixture or list(FIXTURES):
        inst = fixture(name)
        inst = replace(inst, budget=replace(inst.budget, sample_trials=args.trials,
                                            sample_seed=args.seed))
        t = time.perf_counter()
        M = run(inst, jobs=args.jobs)
        s = M.summary()
        print(f"{name:10s} confirmed={s['confirmed']:3d} refuted={s['refuted']} "
              f"skipped={s['skipped']:3d}  {time.perf_counter() - t:.1f}s")
        for r in M.refuted:
            print(f"  refuted {r.direction} {r.row}: {r.witness}")
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{name}.json").write_text(M.to_json() + "\n")
        ok = ok and M.ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
