"""Polariton blockade: weak interactions, strong statement.

Replacing the two-level emitter by a weakly interacting mode keeps the
whole feature zoo alive, adds a third two-photon resonance, makes the
exciton statistics independent of how the system is pumped, and recovers
the strong-nonlinearity model as the interaction grows.  At realistic
(weak) interactions the pinned features merge into the well-known
dispersive antibunching/bunching doublet.
"""

import numpy as np

from photonstats import analytic as an
from photonstats import fockspace as fs

print(__doc__)

g, gamma_a, gamma_b = 1.0, 0.1, 0.01


def pol(wa, wl, u, chi=0.0, phi=0.0):
    return fs.PolParams(delta_a=wa - wl, delta_b=-wl, g=g, u=u, drive_a=1e-5,
                        chi=chi, phi=phi, gamma_a=gamma_a, gamma_b=gamma_b)


# exciton statistics do not care how the system is driven
p0 = pol(0.5, 0.2, 0.7, chi=0.0)
p1 = pol(0.5, 0.2, 0.7, chi=1.0, phi=0.9)
print(f"exciton g2, cavity drive only: {an.pol_g2(p0, 'exciton'):.10f}")
print(f"exciton g2, mixed drive:       {an.pol_g2(p1, 'exciton'):.10f}")

# strong interactions approach the two-level-emitter limit
pj = fs.JCParams(delta_a=0.3, delta_sigma=-0.6, g=g, drive_a=1e-5, chi=0.0,
                 phi=0.0, gamma_a=gamma_a, gamma_sigma=gamma_b)
print("\ncavity g2 towards the strong-nonlinearity limit "
      f"(target {an.jc_g2(pj):.5f}):")
for u_over_ga in (1e1, 1e2, 1e3, 1e4, 1e5):
    p = pol(0.3, -0.6, u_over_ga * gamma_a)
    print(f"  u = {u_over_ga:7.0f} gamma_a: g2 = {an.pol_g2(p):.5f}")

# exact interference zeros; at u = 10 gamma_a one sits at omega_a = 8.63 g
pts = an.pol_exact_zero_points(g, 10 * gamma_a, gamma_a, gamma_b)
print("\nexact zeros at u = 10 gamma_a (delta_b, delta_a):")
for db, da in pts:
    print(f"  ({db:+.4f}, {da:+.4f}) -> cavity frequency "
          f"{-db + da:+.3f} g, g2 = {an.pol_g2(pol(-db + da, -db, 1.0)):.1e}")

# second-manifold ladder: exact vs first order in the interaction
lv = an.pol_dressed_energies(0.0, 0.0, g, 0.05, gamma_a, gamma_b)
lv_fo = an.pol_dressed_energies(0.0, 0.0, g, 0.05, gamma_a, gamma_b,
                                first_order=True)
print("\ntwo-excitation levels at resonance, u = 0.05 g:")
print("  exact      ", [f"{e.real:+.4f}" for e in lv.energies])
print("  first order", [f"{e.real:+.4f}" for e in lv_fo.energies])

# weak interactions: the doublet. Scan the laser through the lower branch.
u_weak = 0.1 * gamma_a
wa = 1.0
e_lower = min(e.real for e in an.pol_first_rung(wa, 0.0, g, gamma_a,
                                                gamma_b).energies)
print(f"\nweak interactions (u = 0.1 gamma_a), cavity at {wa} g: "
      "dispersive doublet around the lower branch")
for wl in np.linspace(e_lower - 0.02, e_lower + 0.02, 9):
    print(f"  omega_L = {wl:+.4f}: g2 = {an.pol_g2(pol(wa, wl, u_weak)):.4f}")
