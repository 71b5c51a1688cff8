"""Periodic travelling waves of nonlinear chains.

Cnoidal profiles of the integrated KdV equation, a renormalized fixed-point
solver for the chain's travelling waves, finite-band (Lame) spectra, and a
symplectic chain integrator. The heavy lifting happens in the C++ extension
module ``_cnoidal``.
"""

from _cnoidal import *  # noqa: F401,F403
from _cnoidal import __version__  # noqa: F401
