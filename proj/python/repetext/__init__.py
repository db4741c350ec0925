"""Repetition structure of paragraph-segmented text."""

from ._repetext import *  # noqa: F401,F403
from ._repetext import __version__, Error, UsageError, InputError  # noqa: F401
