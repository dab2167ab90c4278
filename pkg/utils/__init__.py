"""
Utility modules for the PPM link analysis package.
"""

from .config import load_config
from .enums import FigureId, Method, OrderMode, Scheme, SweepMethod, Verdict
from .errors import ConfigurationError, DomainError, LinkError, SimulationError
from .numeric import format_float, log_grid, resolve_threads

__all__ = [
    'load_config',
    'Scheme',
    'Method',
    'SweepMethod',
    'OrderMode',
    'FigureId',
    'Verdict',
    'LinkError',
    'DomainError',
    'ConfigurationError',
    'SimulationError',
    'log_grid',
    'format_float',
    'resolve_threads'
]
