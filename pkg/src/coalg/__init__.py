"""Exact finite-dimensional coalgebras, comodules, traces and characters."""

from .comodmod import *  # noqa: F401,F403
from .constructions import *  # noqa: F401,F403
from .exactla import *  # noqa: F401,F403
from .reports import AxiomCheck, DiagramReport, ValidationReport  # noqa: F401
from .structures import *  # noqa: F401,F403
from .traces import *  # noqa: F401,F403

__version__ = "0.1.0"
