"""Semiclassicality of an electron packet, v = 10^3 m/s, 2 sigma_x = 10^-7 m.

Also scans the velocity to show where the verdict changes.
"""

import numpy as np

from freecs.semiclassical import DimensionalPacket, classify, sigma_x_of_t
from freecs.units import UnitSystem


def main():
    units = UnitSystem(1e-7)
    packet = DimensionalPacket.from_velocity(1e3, 0.5e-7, units)
    rep = classify(packet)
    print(f"de Broglie wavelength 2 pi hbar/p = {rep.wavelength:.4e} m")
    print(f"bound 4 pi sigma_x             = {rep.bound:.4e} m")
    print(f"ratio                          = {rep.ratio:.4f} -> {rep.verdict.value}")
    t = 1e-9
    print(f"after {t:g} s the packet moved {packet.velocity * t:.3e} m, sigma_x = {sigma_x_of_t(packet, t):.3e} m")

    print("\nvelocity scan:")
    for v in np.logspace(2, 6, 9):
        r = classify(DimensionalPacket.from_velocity(v, 0.5e-7, units))
        print(f"  v = {v:9.3g} m/s  ratio = {r.ratio:9.3e}  {r.verdict.value}")


if __name__ == "__main__":
    main()
