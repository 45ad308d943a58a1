"""Magnetization vs theta_h at t = 5 and t = 20 for the homogeneous engines and the lattice."""

import argparse
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from kicked_meanfield.sweep import SweepSpec, emit_csv, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--points", type=int, default=49)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    grid = [i * (math.pi / 2) / (args.points - 1) for i in range(args.points)]

    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5), sharey=True)
    for ax, steps in zip(axes, (5, 20)):
        for mode in ("mf-unitary", "mf-dissipative", "mf-lattice"):
            res = run_sweep(SweepSpec(mode, grid, steps))
            emit_csv(res, args.out / f"sweep_{mode}_t{steps}.csv")
            xs, ys = zip(*[(r.theta_h, r.value) for r in res.rows if r.step == steps])
            ax.plot(xs, ys, label=mode)
        ax.set_title(f"t = {steps}")
        ax.set_xlabel("theta_h")
    axes[0].set_ylabel("<Z>")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(args.out / "magnetization_sweep.svg")
    print(f"wrote {args.out}/magnetization_sweep.svg")


if __name__ == "__main__":
    main()
