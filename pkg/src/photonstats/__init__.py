"""photonstats: photon statistics of weakly driven dissipative systems.

Closed-form populations and correlation functions, blockade-feature
finders, steady-state solvers, homodyne interference calculus, and a sweep
engine for four workhorse systems of cavity quantum optics: the driven
two-level emitter, the Kerr-anharmonic mode, the Jaynes-Cummings model,
and a cavity coupled to a weakly interacting (polariton) mode.
"""

__version__ = "0.1.0"

from . import analytic, atlas, fockspace, mixer, steady  # noqa: E402,F401
from .fockspace import (AOParams, JCParams, PolParams, RFParams,  # noqa: F401
                        SystemParams, build_hamiltonian, build_liouvillian,
                        build_mode)
from .mixer import (DecompositionG2, DecompositionG3,  # noqa: F401
                    GaussianState, admixed_amplitude, decompose_g2,
                    decompose_g3, dst_observables, mixed_correlator, n_norm)
from .steady import (CorrelatorTable, HomodyneMix,  # noqa: F401
                     gN, gN_limit, low_drive_correlators, moment_table,
                     series_expand, steady_state, wavefunction_coefficients)
