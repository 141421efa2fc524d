"""Energy across the family of unit tubes around planar circles.

Wider circles flatten the tube, tighter ones pinch it; the bending energy
is convex across the family and bottoms out at circle radius sqrt(2),
where the tube becomes the stereographic image of the square torus.
"""

import numpy as np

from cel import tube_family_sweep


def main():
    radii = np.linspace(1.1, 2.2, 23)
    sweep = tube_family_sweep(radii=radii, resolution=40)
    lo = sweep.energies.min()
    for r, e in zip(sweep.radii, sweep.energies):
        bar = "#" * int(60 * (e - lo) / (sweep.energies.max() - lo))
        marker = " <- minimum" if r == sweep.min_radius else ""
        print(f"R={r:5.3f}  E={e:9.4f}  {bar}{marker}")
    print(f"\nminimum {sweep.min_energy:.4f} at R={sweep.min_radius:.4f}; "
          f"exact optimum 2 pi^2 = {2 * np.pi ** 2:.4f} at sqrt(2) = "
          f"{np.sqrt(2):.4f}")


if __name__ == "__main__":
    main()
