"""tacit-audit: static review of statechart/rule models for hidden assumptions."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
