#!/usr/bin/env python3
"""Self-convergence tables for the quadrature determinant.

Two sweeps: doubling the node count at fixed window, and widening the
window at fixed node count.  The Gauss-Legendre panels converge fast
enough that the node sweep bottoms out near machine precision; the window
sweep decays like the tail mass of the potential.
"""

import argparse

import numpy as np

import wavedet as wd


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--problem", default="poschl_teller")
    ap.add_argument("--lam", type=complex, default=4.0)
    ap.add_argument("--n-list", type=int, nargs="+",
                    default=[50, 100, 200, 400, 800])
    ap.add_argument("--x-list", type=float, nargs="+",
                    default=[10.0, 15.0, 20.0, 25.0, 30.0])
    args = ap.parse_args()

    problem = wd.builtin_problem(args.problem)
    lam = args.lam

    print(f"# {args.problem}, lambda = {lam}")
    print("\n# node sweep at X = 20")
    prev = None
    for n in args.n_list:
        val = wd.det1(problem, lam, wd.build_grid(20.0, n)).value
        gap = "" if prev is None else f"{abs(val - prev):.3e}"
        print(f"  N={n:5d}  det1 = {val.real:+.15f}{val.imag:+.3e}j  "
              f"step {gap}")
        prev = val

    print(f"\n# window sweep at N = 400")
    prev = None
    for x in args.x_list:
        val = wd.det1(problem, lam, wd.build_grid(x, 400)).value
        gap = "" if prev is None else f"{abs(val - prev):.3e}"
        print(f"  X={x:5.1f}  det1 = {val.real:+.15f}{val.imag:+.3e}j  "
              f"step {gap}")
        prev = val


if __name__ == "__main__":
    main()
