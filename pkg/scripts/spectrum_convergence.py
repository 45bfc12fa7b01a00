#!/usr/bin/env python3
"""Circle spectrum vs grid size: discrete dispersion against the continuum.

Prints, per N, the deviation of the assembled eigenvalues from the exact
discrete dispersion (2/h^2)(1 - cos kh) + 2 (machine precision) and from the
continuum k^2 + 2 (second-order deficit ~ k^4 h^2 / 12, i.e. about 4.9
percent at k = N/8 regardless of N).
"""
import numpy as np

from energyrep.grid import WeightField, build_grid
from energyrep.operators import assemble_h


def dispersion(n: int):
    h = 2.0 * np.pi / n
    ks = np.concatenate([[0], np.repeat(np.arange(1, n // 2), 2), [n // 2]])
    return np.sort((2.0 / h ** 2) * (1.0 - np.cos(ks * h)) + 2.0)


def main():
    print(f"{'N':>5} {'formula dev':>12} {'k=1 rel':>10} {'k=N/18 rel':>11} "
          f"{'k=N/8 rel':>10}")
    for n in (32, 64, 128, 256):
        grid = build_grid("circle", n, radius=1.0)
        op = assemble_h(grid, WeightField.constant(grid, 2.0))
        lam = np.sort(op.eigendecomposition().eigenvalues)
        dev = np.max(np.abs(lam - dispersion(n)))

        def rel(k):
            idx = 0 if k == 0 else 2 * k - 1
            return abs(lam[idx] - (k ** 2 + 2.0)) / (k ** 2 + 2.0)

        print(f"{n:>5} {dev:>12.3e} {rel(1):>10.2e} {rel(max(1, n // 18)):>11.2e} "
              f"{rel(n // 8):>10.2e}")
    print("\nThe k = N/8 column sits at the second-order dispersion floor "
          "(kh)^2/12 ~ 4.9e-2; refining N does not move it.")


if __name__ == "__main__":
    main()
