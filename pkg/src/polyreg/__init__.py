"""Iterative regularization of polygons in euclidean, spherical and
hyperbolic geometry, driven by circulant gap transforms."""

from . import analyzer, circulant, emit, euclid, experiment, hyperbolic, spherical

__version__ = "0.1.0"

__all__ = [
    "analyzer",
    "circulant",
    "emit",
    "euclid",
    "experiment",
    "hyperbolic",
    "spherical",
    "__version__",
]
