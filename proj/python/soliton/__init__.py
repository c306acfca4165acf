"""N-soliton potentials, Darboux chains and their coherent states."""

from ._core import *  # noqa: F401,F403
from ._core import SolitonError, Params

__all__ = [name for name in dir() if not name.startswith("_")]
