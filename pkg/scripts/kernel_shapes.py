"""Dump sampled kernels for a sweep of alpha to one wide CSV (offset, then one column per alpha).

    python scripts/kernel_shapes.py --sigma 0.1 --beta 1.0 --alphas 0.4,0.7,1.0,1.4,1.8 > shapes.csv
"""

import argparse

from mlfilt.csvio import format_table
from mlfilt.kernels import KernelSpec, sample_kernel


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--alphas", default="0.4,0.7,1.0,1.4,1.8")
    p.add_argument("--half-width", type=float, default=None, help="default 6 sigma for every alpha")
    p.add_argument("--dt", type=float, default=0.01)
    args = p.parse_args()

    alphas = [float(a) for a in args.alphas.split(",")]
    hw = 6.0 * args.sigma if args.half_width is None else args.half_width
    kernels = [sample_kernel(KernelSpec(args.sigma, a, args.beta, half_width=hw, dt=args.dt))
               for a in alphas]
    header = ["offset"] + [f"alpha={a:g}" for a in alphas]
    comment = f"sigma={args.sigma!r} beta={args.beta!r} half_width={hw!r} dt={args.dt!r}"
    print(format_table(header, [kernels[0].offsets] + [k.weights for k in kernels], [comment]), end="")


if __name__ == "__main__":
    main()
