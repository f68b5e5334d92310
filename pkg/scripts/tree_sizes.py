"""Tree size and longest sign-variation chain, with and without Newton steps, as tau grows.

The adsc runs are cut off at --max-nodes, so their node counts are lower bounds.
"""

import argparse

from realroots.errors import SolveAborted
from realroots.families import mignotte
from realroots.poly import ExactOracle
from realroots.solver import SolveConfig, isolate


def run(coeffs, mode, max_nodes):
    try:
        st = isolate(ExactOracle(coeffs), None, SolveConfig(mode=mode, max_nodes=max_nodes)).stats
        return st.tree_nodes, st.max_var_chain, ""
    except SolveAborted as exc:
        return exc.stats.tree_nodes, exc.stats.max_var_chain, ">="


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=64)
    ap.add_argument("--taus", default="16,32,64,128,256")
    ap.add_argument("--max-nodes", type=int, default=5000)
    args = ap.parse_args()

    print(f"{'tau':>5}{'adsc nodes':>14}{'chain':>8}{'anewdsc nodes':>16}{'chain':>8}")
    for tau in map(int, args.taus.split(",")):
        P = mignotte(args.n, tau)
        an, ac, mark = run(P, "adsc", args.max_nodes)
        nn, nc, _ = run(P, "anewdsc", None)
        print(f"{tau:>5}{mark + str(an):>14}{ac:>8}{nn:>16}{nc:>8}")


if __name__ == "__main__":
    main()
