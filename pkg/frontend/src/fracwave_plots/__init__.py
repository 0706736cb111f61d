"""Publication-style figures from fracwave CSV output.

This package talks to the simulation library only through its public file
contracts: the trajectory/verdict CSV layout and the flat key-value config
format.  It never imports simulator internals.
"""

__version__ = "0.1.0"

from .reader import TrajectoryTable, read_config, read_fit_file, read_trajectory_csv
from .spec import FigureSpec
from .render import render

__all__ = [
    "FigureSpec",
    "TrajectoryTable",
    "read_config",
    "read_fit_file",
    "read_trajectory_csv",
    "render",
]
