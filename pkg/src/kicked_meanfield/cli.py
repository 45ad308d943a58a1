"""Command-line front end.

Exit codes: 0 success or comparison pass, 1 comparison fail, 2 usage error,
3 resource error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys

from . import sweep
from .exact_oracle import DEFAULT_QUBIT_CAP, ResourceError
from .topology import GraphError, from_descriptor

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("kicked_meanfield")


def _angle(text: str) -> float:
    try:
        return sweep.parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(text: str) -> list[float]:
    try:
        return sweep.parse_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _add_sweep_options(p: argparse.ArgumentParser, default_steps: int) -> None:
    p.add_argument("--theta-h", type=_grid, default=[0.0], help="start:stop:count or a single angle; 'pi' allowed")
    p.add_argument("--theta-j", type=_angle, default=math.pi / 2, help="Ising angle (default pi/2)")
    p.add_argument("--steps", type=int, default=default_steps)
    p.add_argument("--topology", default="heavy-hex", help="heavy-hex[:R,C], ring:N, chain:N, complete:N, empty:N or an edge-list path")
    p.add_argument("--observable", default="mean-z", help="mean-z, site-z:<j> or coherence")
    p.add_argument("--seed", type=_seed, default=None)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--qubit-cap", type=int, default=DEFAULT_QUBIT_CAP)
    p.add_argument("--out", default="-", help="CSV destination ('-' for stdout)")
    p.add_argument("--plot", default=None, help="also write a static plot (SVG by default suffix)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kicked-mf", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="sweep theta_h with one engine and write CSV")
    p.add_argument("--mode", required=True, choices=sweep.MODES)
    _add_sweep_options(p, default_steps=5)

    p = sub.add_parser("validate-channel", help="Monte Carlo check of the dephasing channel along a dissipative run")
    _add_sweep_options(p, default_steps=5)

    p = sub.add_parser("compare", help="compare two sweep CSVs key by key")
    p.add_argument("run_a")
    p.add_argument("run_b")
    p.add_argument("--tolerance", type=float, default=1e-9)

    p = sub.add_parser("topology", help="inspect or export a connectivity graph")
    p.add_argument("action", choices=["inspect", "export"])
    p.add_argument("source", nargs="?", default="heavy-hex")
    p.add_argument("--out", default="-")
    return parser


def _run_sweep(args, mode: str) -> int:
    spec = sweep.SweepSpec(
        mode=mode,
        theta_h=args.theta_h,
        steps=args.steps,
        theta_j=args.theta_j,
        topology=args.topology,
        observable=args.observable,
        seed=args.seed,
        samples=args.samples,
        workers=args.workers,
        qubit_cap=args.qubit_cap,
    )
    log.info("running %s over %d grid points, %d steps", mode, len(spec.theta_h), spec.steps)
    result = sweep.run_sweep(spec)
    sweep.emit_csv(result, args.out)
    if args.plot:
        sweep.emit_plot(result, args.plot)
    return EXIT_OK


def _run_topology(args) -> int:
    g = from_descriptor(args.source)
    if args.action == "export":
        text = g.to_edge_list()
        if args.out == "-":
            print(text, end="")
        else:
            with open(args.out, "w") as fh:
                fh.write(text)
        return EXIT_OK
    deg = g.degrees()
    print(f"qubits     {g.n_qubits}")
    print(f"edges      {g.n_edges}")
    print(f"xi         {g.mean_degree():.10g}")
    print(f"degrees    min {min(deg)} max {max(deg)}")
    print(f"connected  {g.is_connected()}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if args.command == "sweep":
            return _run_sweep(args, args.mode)
        if args.command == "validate-channel":
            return _run_sweep(args, "validate-channel")
        if args.command == "topology":
            return _run_topology(args)
        try:
            report = sweep.compare(args.run_a, args.run_b, args.tolerance)
        except sweep.KeyMismatchError as exc:
            print(exc.describe(), file=sys.stderr)
            return EXIT_USAGE
        print(report.describe())
        return EXIT_OK if report.passed else EXIT_FAIL
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
