"""Clustered inputs with degree truncation on and off."""

import argparse
import time

from realroots.bench import verify_result
from realroots.families import clustered
from realroots.poly import ExactOracle
from realroots.solver import SolveConfig, isolate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="32,64,128")
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--scale", type=int, default=256)
    args = ap.parse_args()

    print(f"{'n':>5}{'seed':>6}{'#sol':>6}{'hits':>7}{'t_on':>9}{'t_off':>9}{'ratio':>7}  verified")
    for n in map(int, args.sizes.split(",")):
        for seed in range(args.seeds):
            cs = clustered(n, seed, args.scale)
            out = {}
            for on in (True, False):
                t0 = time.perf_counter()
                res = isolate(ExactOracle(cs), None, SolveConfig(truncation=on, seed=seed))
                out[on] = (res, time.perf_counter() - t0)
            (r1, t1), (r0, t0_) = out[True], out[False]
            ok = verify_result(cs, r1)[1] and verify_result(cs, r0)[1]
            print(f"{n:>5}{seed:>6}{r1.root_count:>6}{r1.stats.truncation_hits:>7}{t1:>8.2f}s{t0_:>8.2f}s"
                  f"{t1 / t0_:>7.2f}  {ok}")


if __name__ == "__main__":
    main()
