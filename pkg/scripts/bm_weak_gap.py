"""Gap between c * int n^{y,c} g dy and int_0^t g(B_s) ds on a dyadic sweep of c."""
import argparse

import numpy as np

from _common import write_rows
from pathcross import ProcessSpec
from pathcross.convergence import dyadic_grid, resolution_floor, weak_convergence_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2 ** 18)
    ap.add_argument("--paths", type=int, default=20)
    ap.add_argument("--g", default="poly:1;poly:0,1;gauss:0,0.5", help="semicolon separated")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/bm_weak_gap.csv")
    args = ap.parse_args()

    spec = ProcessSpec("bm", args.n, 1.0, args.seed)
    grid = [c for c in dyadic_grid(0, 20) if c >= resolution_floor(spec)]
    rows = weak_convergence_experiment(spec, args.g.split(";"), grid, np.linspace(0.25, 1, 4),
                                       n_paths=args.paths)
    write_rows(args.out, rows, vars(args))


if __name__ == "__main__":
    main()
