"""Rational points near a point of a quintic del Pezzo surface: zoom counts,
Pell-family parametrizations, quadratic congruences and toric bookkeeping."""

__version__ = "0.1.0"

from .errors import ZoomscopeError
from .surface import ChartPoint, ProjPointPair, Region, chart, height, region_of
from .zoom import ZoomQuery, brute_enumerate, param_enumerate, survey

__all__ = [
    "ZoomscopeError", "ChartPoint", "ProjPointPair", "Region", "chart", "height",
    "region_of", "ZoomQuery", "brute_enumerate", "param_enumerate", "survey",
]
