"""Quadratic programming over finite integer level sets."""

from ._nqp import *  # noqa: F401,F403
from ._nqp import reservoir  # noqa: F401

__version__ = "0.1.0"
