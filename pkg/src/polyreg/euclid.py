"""Euclidean baseline: the equilateral identity, the classical
three-centers construction, circumcircles, and the half-angle rotation
step about the circumcenter.

Points live in the complex plane; a triangle is an ordered triple.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

_SQRT3 = math.sqrt(3.0)
_TWO_PI = 2.0 * math.pi


class DegenerateTriangleError(ValueError):
    """Vertices too close to coincident or collinear for the operation."""


@dataclass(frozen=True)
class PlaneTriangle:
    vertices: tuple[complex, complex, complex]

    def __post_init__(self) -> None:
        vs = tuple(complex(z) for z in self.vertices)
        if len(vs) != 3:
            raise ValueError("a triangle has exactly three vertices")
        if not all(math.isfinite(z.real) and math.isfinite(z.imag) for z in vs):
            raise ValueError("vertices must be finite")
        object.__setattr__(self, "vertices", vs)


def _require_distinct(t: PlaneTriangle) -> None:
    z0, z1, z2 = t.vertices
    dists = (abs(z0 - z1), abs(z1 - z2), abs(z2 - z0))
    if min(dists) <= 1e-12 * max(max(dists), 1e-30):
        raise DegenerateTriangleError("triangle has (nearly) coincident vertices")


def equilateral_defect(t: PlaneTriangle) -> complex:
    """z0*z1 + z0*z2 + z1*z2 - (z0 + z1 + z2)**2 / 3.

    Vanishes exactly when the triangle is equilateral; translation
    invariant, scales with the squared diameter.
    """
    z0, z1, z2 = t.vertices
    return z0 * z1 + z0 * z2 + z1 * z2 - (z0 + z1 + z2) ** 2 / 3


def _apex(za: complex, zb: complex) -> complex:
    return (za + zb) / 2 + 1j * _SQRT3 * (za - zb) / 2


def _side_center(za: complex, zb: complex) -> complex:
    return (za + zb) / 2 + 1j / _SQRT3 * (za - zb) / 2


def napoleon(t: PlaneTriangle) -> tuple[tuple[complex, complex, complex], PlaneTriangle]:
    """Erect an equilateral triangle over each side; return (apices, centers).

    The apex over side (za, zb) is (za+zb)/2 + i*sqrt(3)*(za-zb)/2, its
    center replaces sqrt(3) by 1/sqrt(3).  For counter-clockwise input the
    construction points outward; the three centers form an exactly
    equilateral triangle whichever way the input winds.
    """
    _require_distinct(t)
    z = t.vertices
    apices = tuple(_apex(z[j], z[(j + 1) % 3]) for j in range(3))
    centers = PlaneTriangle(tuple(_side_center(z[j], z[(j + 1) % 3]) for j in range(3)))
    return apices, centers


def circumcenter(t: PlaneTriangle) -> tuple[complex, float]:
    """Center and radius of the circle through the three vertices."""
    z0, z1, z2 = t.vertices
    num = (
        abs(z0) ** 2 * (z1 - z2)
        + abs(z1) ** 2 * (z2 - z0)
        + abs(z2) ** 2 * (z0 - z1)
    )
    den = (
        z0.conjugate() * (z1 - z2)
        + z1.conjugate() * (z2 - z0)
        + z2.conjugate() * (z0 - z1)
    )
    scale_sq = max(abs(z0 - z1), abs(z1 - z2), abs(z2 - z0)) ** 2
    if abs(den) <= 1e-12 * max(scale_sq, 1e-30):
        raise DegenerateTriangleError("collinear vertices have no circumcircle")
    center = num / den
    radius = (abs(center - z0) + abs(center - z1) + abs(center - z2)) / 3
    return center, radius


def angle_gaps(t: PlaneTriangle) -> tuple[complex, float, np.ndarray]:
    """Circumcenter, radius, and ccw gaps from z_j to z_{j+1} about the center.

    Each gap is normalized into (0, 2*pi); for a ccw-ordered triangle the
    gaps sum to 2*pi.
    """
    center, radius = circumcenter(t)
    z = t.vertices
    gaps = np.empty(3)
    for j in range(3):
        ratio = (z[(j + 1) % 3] - center) / (z[j] - center)
        gaps[j] = cmath.phase(ratio) % _TWO_PI
    return center, radius, gaps


def rotate_half_step(t: PlaneTriangle) -> PlaneTriangle:
    """Rotate each vertex about the circumcenter by half its ccw gap.

    The circumcircle is untouched while the gap vector transforms by the
    (1/2, 1/2, 0) circulant, so iterating drives the triangle equilateral
    with the gap deviation halving every step.
    """
    _require_distinct(t)
    center, _, gaps = angle_gaps(t)
    z = t.vertices
    rotated = tuple(
        center + (z[j] - center) * cmath.exp(1j * gaps[j] / 2) for j in range(3)
    )
    return PlaneTriangle(rotated)
