"""Simulation toolkit for redundant information storage in decoherence.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from qdarwin._core import *  # noqa: F401,F403
from qdarwin._core import __doc__  # noqa: F401
