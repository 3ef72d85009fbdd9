"""Gaussian vs Mittag-Leffler MSE over many noise seeds for both test signals.

    python scripts/seed_sweep_mse.py --seeds 100 --noise-std 0.1
"""

import argparse

import numpy as np

from mlfilt.testbench import PUBLISHED_PAIRS, seed_sweep


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--noise-std", type=float, default=0.1)
    args = p.parse_args()

    print("signal,label,reported_mse,median_mse,q10,q90,median_over_reported")
    for sid in ("y1", "y2"):
        sw = seed_sweep(sid, range(args.seeds), noise_std=args.noise_std)
        for label, vals in (("gaussian", sw.gaussian_mse), ("ml", sw.ml_mse)):
            ref = PUBLISHED_PAIRS[sid][label][1]
            q10, med, q90 = np.quantile(vals, [0.1, 0.5, 0.9])
            print(f"{sid},{label},{ref},{med:.5g},{q10:.5g},{q90:.5g},{med / ref:.4f}")
        print("# " + sw.summary())


if __name__ == "__main__":
    main()
