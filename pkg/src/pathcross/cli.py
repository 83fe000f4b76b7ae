"""``pathcross`` command line.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input or I/O
error, 3 capacity or resolution refusal.  Commands that write ``--out`` also
write ``<out>.manifest.json`` recording argv, parameters, seeds and digests;
``pathcross --replay MANIFEST`` re-runs it.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .convergence import (estimate_C, l1_counterexample, parse_c_grid, tv_scaling_curve)
from .crossings import crossings, indicatrix
from .lebesgue import PsiSpec, build_partition, psi_variation, pvar_along_lebesgue
from .occupation import occupation_density, occupation_integral, weak_gap
from .paths import CapacityError, DomainError, SampledPath
from .simulators import ExampleSpec, ProcessSpec, example_path, simulate
from .skorohod import regularize_solution
from .testfunctions import parse_g
from .variation import normalization_phi, tv, tv_profile
from .verify import SUITES, run_suite

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(DomainError):
    pass


# --------------------------------------------------------------------------
# helpers

def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _threads(args) -> int:
    if args.threads is not None:
        n = args.threads
    else:
        env = os.environ.get("PATHCROSS_THREADS")
        n = int(env) if env else (os.cpu_count() or 1)
    if n < 1:
        raise UsageError("--threads must be >= 1")
    return n


def _load(args) -> SampledPath:
    return SampledPath.from_csv(args.inp, args.mode or args.global_mode)


def _interval(args):
    if args.t_from is None and args.t_to is None:
        return None
    return (args.t_from or 0.0, args.t_to)


def _write_rows(path: str, rows: List[Dict]) -> None:
    if not rows:
        Path(path).write_text("")
        return
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _float_list(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",") if v.strip()])
    except ValueError:
        raise UsageError(f"expected a comma separated list of numbers, got {text!r}") from None


def _process_spec(args) -> ProcessSpec:
    return ProcessSpec(args.process, n_samples=args.n, horizon=args.t, seed=args.seed,
                       hurst=args.hurst, alpha=args.alpha, approx_grid=args.approx_grid)


# --------------------------------------------------------------------------
# subcommands; each returns (result json or None, list of output files)

def cmd_simulate(args):
    spec = _process_spec(args)
    path = simulate(spec, args.path_index)
    path.to_csv(args.out)
    return {"spec": spec.as_dict(), "samples": len(path), "mode": path.mode.value}, [args.out]


def cmd_example(args):
    spec = ExampleSpec(args.which, args.rule, args.depth, args.m_base, args.c_min)
    path = example_path(spec)
    path.to_csv(args.out)
    return {"spec": spec.as_dict(), "samples": len(path)}, [args.out]


def cmd_tv(args):
    return tv(_load(args), args.c, _interval(args)).as_dict(), []


def cmd_tv_profile(args):
    path = _load(args)
    cs = parse_c_grid(args.c_grid)
    ts = _float_list(args.t_grid)
    mat = tv_profile(path, cs, ts)
    rows = [{"c": r.c, "t": r.interval[1], "utv": r.utv, "dtv": r.dtv, "tv": r.tv}
            for r in mat.ravel()]
    _write_rows(args.out, rows)
    return {"rows": len(rows)}, [args.out]


def cmd_regularize(args):
    sol = regularize_solution(_load(args), args.c)
    sol.regularization.to_csv(args.out)
    return {"c": args.c, "phi0": sol.phi0, "eta_u_total": sol.eta_u_total,
            "eta_d_total": sol.eta_d_total}, [args.out]


def cmd_crossings(args):
    return crossings(_load(args), args.y, args.c, _interval(args)).as_dict(), []


def cmd_indicatrix(args):
    path = _load(args)
    g = parse_g(args.g)
    prof = indicatrix(path, args.c, _interval(args), args.method)
    result = {"c": args.c, "g": args.g, "integral": prof.integral(g), "pieces": int(prof.counts.size)}
    outs = []
    if args.out:
        rows = [{"lo": float(a), "hi": float(b), "count": int(k)}
                for a, b, k in zip(prof.breakpoints[:-1], prof.breakpoints[1:], prof.counts)]
        _write_rows(args.out, rows)
        outs.append(args.out)
    return result, outs


def cmd_lebesgue(args):
    path = _load(args)
    t = path.horizon if args.t is None else args.t
    psi = PsiSpec.parse(args.psi)
    part = build_partition(path, args.c, args.r)
    return {"c": args.c, "r": args.r, "t": t, "k": part.k_count(t),
            "psi": args.psi, "psi_variation": psi_variation(path, part, psi, t)}, []


def example4_depth(p: int, n_max: int) -> int:
    """Cantor levels whose tents are tall enough to reach a new grid value at ``n_max``."""
    return p * (n_max // p) + p


def cmd_pvar(args):
    if args.example != 2:
        raise UsageError("pvar is defined on example 2 paths only (--example 2)")
    n_max = args.depth
    spec = ExampleSpec("2", f"pow2floor/{args.p}", example4_depth(args.p, n_max))
    path = example_path(spec)
    ns = np.arange(args.n_from, n_max + 1)
    b = spec.seq(ns)
    vals = pvar_along_lebesgue(path, args.p, args.gamma, b, args.t)
    rows = [{"N": int(n), "b": float(bb), "V": float(v)} for n, bb, v in zip(ns, b, vals)]
    outs = []
    if args.out:
        _write_rows(args.out, rows)
        outs.append(args.out)
    return {"p": args.p, "gamma": args.gamma, "t": args.t, "rows": rows}, outs


def cmd_localtime(args):
    path = _load(args)
    t = path.horizon if args.t is None else args.t
    sub = path if t >= path.horizon else path.restrict(0.0, t)
    lo, hi = float(sub.values.min()), float(sub.values.max())
    if hi == lo:
        lo, hi = lo - 0.5, hi + 0.5
    est = occupation_density(path, t, np.linspace(lo, hi, args.bins + 1))
    rows = [{"lo": float(a), "hi": float(b), "density": float(d)}
            for a, b, d in zip(est.bin_edges[:-1], est.bin_edges[1:], est.density)]
    _write_rows(args.out, rows)
    return {"t": t, "bins": args.bins, "total_time": est.total_time}, [args.out]


def _phi_rule(text: str, path: SampledPath):
    if text == "auto":
        return lambda c: normalization_phi(path, c)
    if text.startswith("c^"):
        try:
            a = float(text[2:])
        except ValueError:
            raise UsageError(f"bad --phi {text!r}; expected auto or c^a") from None
        return lambda c: c ** a
    raise UsageError(f"bad --phi {text!r}; expected auto or c^a")


def cmd_weakgap(args):
    path = _load(args)
    g = parse_g(args.g)
    cs = parse_c_grid(args.c_grid)
    ts = _float_list(args.t_grid) if args.t_grid else np.array([path.horizon])
    phi = _phi_rule(args.phi, path)
    if args.reference == "occupation":
        ref = lambda t: args.C * occupation_integral(path, t, g)  # noqa: E731
    elif args.reference == "zero":
        ref = lambda t: 0.0  # noqa: E731
    else:
        try:
            value = float(args.reference.split(":", 1)[1])
        except (IndexError, ValueError):
            raise UsageError(f"bad --reference {args.reference!r}") from None
        ref = lambda t: value  # noqa: E731
    rows = [{"c": float(c), "phi": float(phi(c)), "gap": weak_gap(path, ts, c, phi(c), g, ref)}
            for c in cs]
    _write_rows(args.out, rows)
    return {"rows": len(rows)}, [args.out]


def cmd_converge(args):
    spec = _process_spec(args)
    curve = tv_scaling_curve(spec, parse_c_grid(args.c_grid), args.t, args.paths)
    _write_rows(args.out, curve.rows())
    raw = args.raw or f"{args.out}.raw.csv"
    np.savetxt(raw, curve.raw, delimiter=",", fmt="%.17g",
               header=",".join(f"c={c!r}" for c in curve.c_grid), comments="")
    outs = [args.out, raw]
    return {"spec": spec.as_dict(), "flatness": curve.flatness()}, outs


def cmd_estimate_c(args):
    n = args.n if args.n else 2 ** 14 * args.nmax
    spec = ProcessSpec(args.process, n_samples=n, horizon=float(args.nmax), seed=args.seed,
                       hurst=args.hurst, alpha=args.alpha)
    brackets = estimate_C(spec, args.nmax, args.paths)
    rows = [b.as_dict() for b in brackets]
    outs = []
    if args.out:
        _write_rows(args.out, rows)
        outs.append(args.out)
    last = brackets[-1]
    return {"C_lower": last.lower, "C_upper": last.upper, "stderr": last.stderr,
            "half_width": 1.0 / last.n + 2 * last.stderr}, outs


def cmd_counterexample(args):
    spec = ExampleSpec("3", args.rule, args.depth, args.m_base, args.c_min)
    rows = l1_counterexample(spec, parse_c_grid(args.c_grid))
    _write_rows(args.out, rows)
    return {"rows": len(rows)}, [args.out]


def cmd_verify(args):
    results = run_suite(args.suite, args.trials, args.seed)
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return {"suite": args.suite, "passed": ok,
            "checks": [r.__dict__ for r in results]}, []


# --------------------------------------------------------------------------
# parser

def _add_path_input(p, interval=True):
    p.add_argument("--in", dest="inp", required=True, help="CSV path file with header t,x")
    p.add_argument("--mode", choices=["step", "linear"], default=None,
                   help="interpolation mode (default: JSON sidecar, else linear)")
    if interval:
        p.add_argument("--from", dest="t_from", type=float, default=None)
        p.add_argument("--to", dest="t_to", type=float, default=None)


def _add_process(p, n_default=65536, default=None):
    p.add_argument("--process", choices=["bm", "fbm", "stable", "rosenblatt"],
                   required=default is None, default=default)
    p.add_argument("--hurst", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--n", type=int, default=n_default, help="number of steps")
    p.add_argument("--t", type=float, default=1.0, help="horizon")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--approx-grid", type=int, default=256)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pathcross", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"pathcross {__version__}")
    ap.add_argument("--threads", type=int, default=None,
                    help="worker cap (default: $PATHCROSS_THREADS or all cores)")
    ap.add_argument("--mode", dest="global_mode", choices=["step", "linear"], default=None,
                    help="interpolation mode for path inputs")
    ap.add_argument("--manifest", default=None, help="manifest path (default: <out>.manifest.json)")
    ap.add_argument("--replay", default=None, metavar="MANIFEST", help="re-run a recorded manifest")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("simulate", help="simulate a process path")
    _add_process(p)
    p.add_argument("--path-index", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("example", help="build a deterministic example path")
    p.add_argument("--which", choices=["1", "2", "3", "cantor"], required=True)
    p.add_argument("--rule", default="harmonic",
                   help="sequence rule: harmonic, invsqrt, pow2, pow2floor/p (optional a:/b: prefix)")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--m-base", type=int, default=4)
    p.add_argument("--c-min", type=float, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("tv", help="truncated variation")
    _add_path_input(p)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(func=cmd_tv)

    p = sub.add_parser("tv-profile", help="TV^c over c and t grids")
    _add_path_input(p, interval=False)
    p.add_argument("--c-grid", required=True)
    p.add_argument("--t-grid", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tv_profile)

    p = sub.add_parser("regularize", help="reflection-based regularization x^c")
    _add_path_input(p, interval=False)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_regularize)

    p = sub.add_parser("crossings", help="band crossings at one level")
    _add_path_input(p)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.set_defaults(func=cmd_crossings)

    p = sub.add_parser("indicatrix", help="crossing-count profile over levels")
    _add_path_input(p)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--g", default="poly:1")
    p.add_argument("--method", choices=["auto", "direct", "legs"], default="auto")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_indicatrix)

    p = sub.add_parser("lebesgue", help="Lebesgue partition and psi-variation")
    _add_path_input(p, interval=False)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--r", type=float, default=0.0)
    p.add_argument("--psi", default="pow:2")
    p.add_argument("--t", type=float, default=None)
    p.set_defaults(func=cmd_lebesgue)

    p = sub.add_parser("pvar", help="p-variation of the Cantor tent path along b_N grids")
    p.add_argument("--example", type=int, default=2)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--depth", type=int, default=20, help="largest partition index N")
    p.add_argument("--n-from", type=int, default=8)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_pvar)

    p = sub.add_parser("localtime", help="binned occupation density")
    _add_path_input(p, interval=False)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--bins", type=int, default=200)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_localtime)

    p = sub.add_parser("weakgap", help="normalised crossing integral vs a reference")
    _add_path_input(p, interval=False)
    p.add_argument("--c-grid", required=True)
    p.add_argument("--g", default="poly:1")
    p.add_argument("--phi", default="auto", help="auto or c^a")
    p.add_argument("--t-grid", default=None)
    p.add_argument("--reference", default="occupation", help="occupation, zero or value:<v>")
    p.add_argument("--C", type=float, default=1.0, help="scale of the occupation reference")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_weakgap)

    p = sub.add_parser("converge", help="Monte Carlo TV scaling curve")
    _add_process(p, default="bm")
    p.add_argument("--paths", type=int, default=100)
    p.add_argument("--c-grid", required=True)
    p.add_argument("--raw", default=None, help="CSV of per-path values (default: <out>.raw.csv)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("estimate-c", help="bracket the scaling constant")
    p.add_argument("--process", choices=["bm", "fbm", "stable"], required=True)
    p.add_argument("--hurst", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--nmax", type=int, default=16)
    p.add_argument("--paths", type=int, default=200)
    p.add_argument("--n", type=int, default=None, help="steps on [0, nmax] (default 2^14 * nmax)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_estimate_c)

    p = sub.add_parser("counterexample", help="crossing densities vs level sets missed by L1 convergence")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--rule", default="harmonic")
    p.add_argument("--m-base", type=int, default=4)
    p.add_argument("--c-min", type=float, default=1e-4)
    p.add_argument("--c-grid", default="1e-2,1e-3,1e-4")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("verify", help="randomised property suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def _write_manifest(target: Path, argv: Sequence[str], args, outs: List[str], result) -> None:
    params = {k: v for k, v in vars(args).items() if k not in ("func",)}
    inputs = {}
    if getattr(args, "inp", None) and Path(args.inp).is_file():
        inputs[args.inp] = _sha256(Path(args.inp))
    manifest = {
        "tool": "pathcross",
        "version": __version__,
        "subcommand": args.command,
        "argv": list(argv),
        "params": params,
        "seed": params.get("seed"),
        "inputs": inputs,
        "outputs": {o: _sha256(Path(o)) for o in outs},
    }
    target.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n")


def _unknown_flags(parser: argparse.ArgumentParser, argv: Sequence[str]) -> List[str]:
    """Option tokens not recognised by the top-level parser or the chosen subcommand."""
    known = set(parser._option_string_actions)
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    bad = []
    for tok in argv:
        if tok in sub.choices:
            known |= set(sub.choices[tok]._option_string_actions)
            continue
        if not tok.startswith("-") or tok == "-":
            continue
        try:
            float(tok)
            continue
        except ValueError:
            pass
        if tok.split("=", 1)[0] not in known:
            bad.append(tok)
    return bad


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    bad = _unknown_flags(parser, argv)
    if bad:
        parser.print_usage(sys.stderr)
        print(f"pathcross: error: unrecognized arguments: {' '.join(bad)}", file=sys.stderr)
        return EXIT_INPUT
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_INPUT
    if args.replay:
        try:
            recorded = json.loads(Path(args.replay).read_text())["argv"]
        except (OSError, ValueError, KeyError) as e:
            print(f"error: cannot read manifest {args.replay}: {e}", file=sys.stderr)
            return EXIT_INPUT
        return run(recorded)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    try:
        _threads(args)
        result, outs = args.func(args)
        target = args.manifest or (f"{outs[0]}.manifest.json" if outs else None)
        if target:
            _write_manifest(Path(target), argv, args, outs, result)
    except CapacityError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.command != "verify":
        _emit(result)
        return EXIT_OK
    return EXIT_OK if result["passed"] else EXIT_CHECK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
