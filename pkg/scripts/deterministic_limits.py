"""Normalised crossing integrals of the deterministic example paths against their limits,
plus the tent-path quadratic variations along b_N grids."""
import argparse

import numpy as np

from _common import write_rows
from pathcross.cli import example4_depth
from pathcross.convergence import l1_counterexample, weak_convergence_experiment
from pathcross.lebesgue import pvar_along_lebesgue
from pathcross.simulators import ExampleSpec, example_path


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=20)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()

    rows = []
    cases = [
        (ExampleSpec("1", "invsqrt", 10 ** 4), "poly:1", [0.5, 1.0], [0.1, 0.03, 0.01]),
        (ExampleSpec("2", "pow2floor/2", 20), "poly:0,0,1", [0.5, 1.0], 2.0 ** -np.arange(4, 11)),
        (ExampleSpec("3", "harmonic", 6, c_min=1e-4), "poly:0,1", [0.5, 1.0], [1e-2, 1e-3, 1e-4]),
    ]
    for spec, g, ts, cs in cases:
        for r in weak_convergence_experiment(spec, [g], cs, ts):
            rows.append({"example": spec.which.value, "rule": spec.rule, **r})
    write_rows(f"{args.outdir}/weak_limits.csv", rows)

    spec = ExampleSpec("3", "harmonic", 6, c_min=1e-4)
    write_rows(f"{args.outdir}/l1_counterexample.csv", l1_counterexample(spec, [1e-2, 1e-3, 1e-4]))

    rows = []
    path = example_path(ExampleSpec("2", "pow2floor/2", example4_depth(2, args.nmax)))
    ns = np.arange(4, args.nmax + 1)
    b = 2.0 ** -np.floor(ns / 2)
    for gamma, target in ((0.5, 4.0), (0.0, 12.0)):
        for n, bb, v in zip(ns, b, pvar_along_lebesgue(path, 2, gamma, b, 1.0)):
            rows.append({"gamma": gamma, "N": int(n), "b": float(bb), "V": float(v), "limit": target})
    write_rows(f"{args.outdir}/tent_pvar.csv", rows)


if __name__ == "__main__":
    main()
