"""Blockade of a weakly anharmonic mode and its interference zeros.

A Kerr mode blocks photons only as strongly as its nonlinearity allows:
g2 = (gamma^2 + 4 delta^2)/(gamma^2 + (u + 2 delta)^2) has one antibunching
and one bunching extremum pinned to the one- and two-photon resonances.
An external laser then does what the nonlinearity alone cannot: it drives
the two-photon correlation exactly to zero at two (F, phi) points.
"""

import numpy as np

from photonstats import analytic as an
from photonstats import fockspace as fs
from photonstats import steady as sd

print(__doc__)

gamma = 1.0
for u in (0.01, 0.1, 1.0, 2.0):
    ext = an.ao_extrema(u, gamma)
    print(f"u = {u:5.2f} gamma: antibunching g2({ext.delta_minus:+.3f}) = "
          f"{ext.g2_minus:.4f}, bunching g2({ext.delta_plus:+.3f}) = "
          f"{ext.g2_plus:.3f}")
print("-> stronger interactions deepen the blockade "
      "(g2 -> (gamma/u)^2 as u grows).")

u = 1.0
ext = an.ao_extrema(u, gamma)
de = ext.delta_minus

dec = an.ao_decompose(u, gamma, de)
print(f"\nself-homodyne split at the optimum: I0 = {dec.i0:.3f} "
      f"(super-Poissonian fluctuations), I2 = {dec.i2:.3f}, "
      f"sum = {dec.total:.3f}")

zeros = an.ao_g2_zeros(u, gamma, de)
print("\nexternal-laser zeros of g2 (u = gamma, optimal detuning):")
for f, phi in zeros:
    _, g2s = an.ao_homodyne(u, 1e-3, gamma, de, f, phi)
    print(f"  F = {f:.4f}, phi = {phi/np.pi:.4f} pi -> g2_s = {g2s:.1e}")

# the drive series of the bare blockade, recovered from the master equation
p = fs.AOParams(delta_b=de, u=u, drive_b=1e-3, gamma_b=gamma)
fit_n = sd.series_expand(p, "n", (2, 4), n_photons=8)
fit_g2 = sd.series_expand(p, "g2", (0, 2), n_photons=8)
fit_g3 = sd.series_expand(p, "g3", (0, 2), n_photons=8)
print(f"\ndrive series from the master equation: "
      f"n = {fit_n.coefficients[0]:.3f} drive^2 {fit_n.coefficients[1]:+.2f} "
      f"drive^4, g2 = {fit_g2.coefficients[0]:.3f} "
      f"{fit_g2.coefficients[1]:+.2f} drive^2, "
      f"g3 = {fit_g3.coefficients[0]:.4f} {fit_g3.coefficients[1]:+.2f} "
      "drive^2")
