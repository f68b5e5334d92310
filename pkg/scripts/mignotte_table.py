"""Root counts, tree sizes and timings on Mignotte and nested Mignotte instances.

    python scripts/mignotte_table.py --modes adsc,anewdsc --timeout 120
"""

import argparse

from realroots.bench import BenchConfig, run_bench

MIGNOTTE = [(257, 14), (513, 14), (129, 128), (129, 512), (64, 64)]
NESTED = [(260, 140)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--modes", default="anewdsc")
    ap.add_argument("--timeout", type=float, default=120.0)
    ap.add_argument("--max-nodes", type=int, default=None)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    rows = []
    for family, sizes in (("mignotte", MIGNOTTE), ("nested-mignotte", NESTED)):
        cfg = BenchConfig(families=[family], sizes=sizes, modes=args.modes.split(","), timeout=args.timeout,
                          max_nodes=args.max_nodes, workers=args.workers)
        rows.extend(run_bench(cfg))

    print(f"{'family':<16}{'n':>5}{'tau':>6}  {'mode':<8}{'#sol':>5}{'nodes':>8}{'chain':>7}{'newton':>8}{'time':>8}")
    for r in rows:
        s = r.stats or {}
        sol = "-" if r.root_count is None else r.root_count
        flag = " timeout" if r.timed_out else (f" {r.error}" if r.error else "")
        print(f"{r.family:<16}{r.n:>5}{r.tau:>6}  {r.mode:<8}{sol:>5}{s.get('tree_nodes', '-'):>8}"
              f"{s.get('max_var_chain', '-'):>7}{s.get('newton_successes', '-'):>8}{r.wall_time_s:>7.1f}s{flag}")


if __name__ == "__main__":
    main()
