"""Laplace spectra and second-variation counts for minimal surfaces.

Counting how many directions lower the area of a minimal surface reduces
to the spectrum of the stability operator, a Laplacian shifted by the
squared principal curvatures plus two.
"""

import numpy as np

from cel import (jacobi_index_analytic, jacobi_index_numeric, laplace_minmax,
                 make_shape)


def main():
    print("first Laplace eigenvalues:")
    sphere = make_shape("sphere", resolution=16)
    torus = make_shape("clifford_torus", resolution=32)
    print("  round sphere:", np.round(laplace_minmax(sphere, 9), 4))
    print("  exact:        l(l+1) with multiplicity 2l+1")
    print("  square torus:", np.round(laplace_minmax(torus, 9), 4))
    print("  exact:        2(m^2+n^2), so 0, then 2 x4, then 4 x4")

    print("\nstability counts (negative directions / almost-flat ones):")
    for label, kind, mesh in (
            ("great sphere", "great_sphere",
             make_shape("geodesic_sphere", resolution=48,
                        center=(1, 0, 0, 0), radius=np.pi / 2)),
            ("square torus", "clifford_torus",
             make_shape("clifford_torus", resolution=48))):
        want = jacobi_index_analytic(kind)
        got = jacobi_index_numeric(mesh)
        print(f"  {label:>13}: index {got.index} (exact {want.index}), "
              f"nullity {got.near_zero} (exact {want.near_zero})")
        neg = sorted(float(v) for v in got.eigenvalues if v < -0.1)
        print(f"{'':>16}negative eigenvalues {np.round(neg, 3)}")


if __name__ == "__main__":
    main()
