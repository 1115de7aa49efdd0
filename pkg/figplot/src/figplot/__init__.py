"""Figure rendering for episwitch experiment CSVs."""

from .render import KINDS, MissingColumnError, PlotSpec, read_columns, render

__version__ = "0.1.0"
