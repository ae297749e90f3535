"""Resonance fluorescence at weak drive and its laser-corrected statistics.

The weakly driven two-level emitter is perfectly antibunched at every
order, yet its emission decomposes into a coherent part and squeezed,
super-chaotic fluctuations whose two-photon interference produces the
cancellation.  Admixing a fraction F of the drive laser (phase phi) takes
the cancellation apart: F = 2 extinguishes the signal, F = 2N at phi = pi
re-cancels exactly the N-photon correlation, nothing else.
"""

import numpy as np

from photonstats import analytic as an
from photonstats import fockspace as fs
from photonstats import mixer as mx
from photonstats import steady as sd

print(__doc__)

gamma = 1.0
drive = 1e-3

st = an.rf_steady(drive, gamma, 0.0)
print(f"drive = {drive} gamma: population {st.n_sigma:.3e}, coherent part "
      f"{abs(st.alpha)**2:.3e}, fluctuations {st.n_fluct:.3e}")

# self-homodyne decomposition of the bare emission: 1 + I0 = 2 against
# I2 = -2 in the weak-drive regime
table = sd.CorrelatorTable(system="rf", entries={
    (0, 1, 0, 0): st.alpha, (1, 0, 0, 0): np.conj(st.alpha),
    (1, 1, 0, 0): st.n_sigma + 0j})
dec = mx.decompose_g2(st.alpha, table, photon_mode=False)
print(f"decomposition: 1 + I0 = {1 + dec.i0:.4f}, I1 = {dec.i1:.2e}, "
      f"I2 = {dec.i2:.4f}, total g2 = {dec.total:.2e}")

# the fluctuations alone are squeezed and super-chaotic
stats = mx.rf_effective_squeezing(drive, gamma, 0.0)
print(f"fluctuations: var_min = {stats.var_min:.2e} (squeezed), "
      f"g2_eff = {stats.g2_eff:.3e} = Gamma^4/(64 drive^4)")

# external-laser map: populations and correlations along F at phi = pi
print("\nF scan at phi = pi:")
print("   F     n_s          g2          g3          g4")
for f in (0.0, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0):
    row = [f]
    n_s, _ = an.rf_homodyne_gN(1, f, np.pi, drive, gamma, 0.0)
    row.append(n_s)
    for n in (2, 3, 4):
        try:
            _, g = an.rf_homodyne_gN(n, f, np.pi, drive, gamma, 0.0)
        except sd.UndefinedCorrelationError:
            g = float("nan")
        row.append(g)
    print("  {:4.1f}  {:.3e}  {:10.3e}  {:10.3e}  {:10.3e}".format(*row))
print("-> n_s = 0 at F = 2 (classical destructive interference),")
print("   g^(N) = 0 at F = 2N: each order is cancelled by its own laser.")

# cross-check one zero against the full master equation
f2, phi2 = 4.0, np.pi
p = fs.RFParams(delta_sigma=0.0, drive_sigma=drive, gamma_sigma=gamma)
rho = sd.steady_state(fs.build_liouvillian(p))
mixed = mx.mixed_table(mx.admixed_amplitude(f2, phi2, drive, gamma),
                       sd.moment_table(rho, p, max_order=2),
                       max_order=2, photon_mode=False)
print(f"\nmaster-equation check at (F, phi) = (4, pi): "
      f"g2 = {mx.gN_from_table(mixed, 2, photon_mode=False):.3e} "
      f"(finite-drive tail 128 drive^2/gamma^2 = {128*drive**2:.3e})")
