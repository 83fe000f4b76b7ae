"""TV^c scaling curves c^{1/beta - 1} TV^c for the simulated processes.

Rosenblatt runs are qualitative: the simulator is an approximation with an
unquantified bias.
"""
import argparse

from _common import write_rows
from pathcross import ProcessSpec
from pathcross.convergence import dyadic_grid, resolution_floor, tv_scaling_curve

PROCESSES = {
    "bm": dict(kind="bm"),
    "fbm0.3": dict(kind="fbm", hurst=0.3),
    "fbm0.7": dict(kind="fbm", hurst=0.7),
    "stable1.5": dict(kind="stable", alpha=1.5),
    "rosenblatt0.75": dict(kind="rosenblatt", hurst=0.75, approx_grid=128),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--which", default=",".join(PROCESSES))
    ap.add_argument("--n", type=int, default=2 ** 16)
    ap.add_argument("--paths", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/scaling_curves.csv")
    args = ap.parse_args()

    rows = []
    for name in args.which.split(","):
        n = args.n if not name.startswith("rosenblatt") else min(args.n, 4096)
        spec = ProcessSpec(n_samples=n, seed=args.seed, **PROCESSES[name])
        floor = resolution_floor(spec)
        grid = [c for c in dyadic_grid(0, 30) if c >= floor]
        curve = tv_scaling_curve(spec, grid, 1.0, args.paths)
        for r in curve.rows():
            rows.append({"process": name, **r})
        print(f"{name}: floor {floor:.4g}, flatness {curve.flatness():.3f}")
    write_rows(args.out, rows, vars(args))


if __name__ == "__main__":
    main()
