"""Figure rendering for circle-trace and moduli-histogram CSVs."""

__version__ = "0.1.0"

from .render import HIST_HEADER, TRACE_HEADER, PlotJob, SchemaError, build_figure, render

__all__ = [
    "__version__",
    "HIST_HEADER",
    "TRACE_HEADER",
    "PlotJob",
    "SchemaError",
    "build_figure",
    "render",
]
