"""Strong marker sets on Z^n: constructions, checks, colourings and tree sections."""

from ._strongmark import *  # noqa: F401,F403
from ._strongmark import __version__, Error  # noqa: F401
