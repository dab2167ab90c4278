"""
Sweep, figure and validation layers built on the core channel models.
"""

from .figures import FIGURE_HEADERS, FigureSettings, figure_table
from .sweep import SWEEP_HEADER, SweepContext, SweepRow, SweepSpec, render_csv, run_sweep, sweep_csv, write_output
from .validation import ValidationReport, validate_point

__all__ = [
    'SweepSpec',
    'SweepRow',
    'SweepContext',
    'SWEEP_HEADER',
    'run_sweep',
    'sweep_csv',
    'render_csv',
    'write_output',
    'FigureSettings',
    'FIGURE_HEADERS',
    'figure_table',
    'ValidationReport',
    'validate_point'
]
