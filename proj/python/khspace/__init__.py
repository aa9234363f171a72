"""Discretized weighted Fourier-Lebesgue / Wiener-amalgam space toolbox.

The compiled core exposes grids, sampled fields, weight expression trees,
B_{p,k} and amalgam norms, the contour-integral functional calculus, and
tau-quantized pseudo-differential operators.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
