"""Stabilizer expectation vs theta_h at t = 5 and 6, product form, exponential form and flip-chain Monte Carlo."""

import argparse
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from kicked_meanfield.stabilizer import (
    StabilizerParams,
    flip_process_simulate,
    stabilizer_closed_form,
    stabilizer_expectation,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    fine = np.linspace(0, math.pi / 2, 200)
    coarse = np.linspace(0, math.pi / 2, 13)
    plt.figure(figsize=(5, 3.5))
    for t, color in ((5, "C0"), (6, "C1")):
        plt.plot(fine, [stabilizer_expectation(StabilizerParams(th, t)) for th in fine], color=color, label=f"t = {t}")
        plt.plot(fine, [stabilizer_closed_form(StabilizerParams(th, t)) for th in fine], ":", color=color)
        mc = [flip_process_simulate(StabilizerParams(th, t), args.samples, args.seed + i) for i, th in enumerate(coarse)]
        plt.errorbar(coarse, [m for m, _ in mc], yerr=[3 * e for _, e in mc], fmt="o", ms=3, color=color)
    plt.yscale("log")
    plt.ylim(1e-4, 1.5)
    plt.xlabel("theta_h")
    plt.ylabel("stabilizer")
    plt.legend()
    plt.tight_layout()
    plt.savefig(args.out / "stabilizer_decay.svg")
    print(f"wrote {args.out}/stabilizer_decay.svg")


if __name__ == "__main__":
    main()
