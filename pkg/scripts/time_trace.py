"""<Z>(t) at fixed theta_h, mean field against the exact oracle on a small ring."""

import argparse
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from kicked_meanfield import meanfield
from kicked_meanfield.exact_oracle import evolve
from kicked_meanfield.qubit_state import DriveParams
from kicked_meanfield.topology import ring


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta-h", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=20)
    ap.add_argument("--ring", type=int, default=12)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    g = ring(args.ring)
    params = DriveParams.from_thetas(math.pi / 2, args.theta_h, args.steps)
    ts = range(args.steps + 1)
    plt.figure(figsize=(5, 3.5))
    for mode in ("unitary", "dissipative"):
        plt.plot(ts, meanfield.run(params, g.mean_degree(), mode).z, "o-", ms=3, label=f"mf-{mode}")
    plt.plot(ts, [r.mean_z for r in evolve(g, params)], "k.-", label=f"exact ring({args.ring})")
    plt.xlabel("step")
    plt.ylabel("<Z>")
    plt.title(f"theta_h = {args.theta_h:g}")
    plt.legend()
    plt.tight_layout()
    plt.savefig(args.out / "time_trace.svg")
    print(f"wrote {args.out}/time_trace.svg")


if __name__ == "__main__":
    main()
