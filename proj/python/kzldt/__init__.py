"""Quench dynamics of the transverse-field Ising chain: kink counting
statistics and large-deviations rate functions.

Thin wrapper around the C++ core; see the individual functions' docstrings.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
