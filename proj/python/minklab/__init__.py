"""Minkowski content estimation."""

from ._minklab import *  # noqa: F401,F403
from ._minklab import Error, __doc__  # noqa: F401
