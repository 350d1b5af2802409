"""Python access to the pcity core library."""

from ._pcity import *  # noqa: F401,F403
from ._pcity import CRITERION_COUNT, Error

__all__ = [name for name in dir() if not name.startswith("_")]
