"""Closed-form spectral machinery for real circulant matrices.

A circulant matrix is determined by its first row ``c``; row ``i`` is the
cyclic right-shift of ``c`` by ``i`` positions, so applying the matrix is

    (A v)[i] = sum_m c[m] * v[(i + m) % n].

All circulants of one size share the discrete Fourier vectors as
eigenvectors, which makes eigenvalues, iteration limits and contraction
rates available in closed form.  Every polygon transform in this package
is driven by a row-stochastic circulant acting on a gap vector.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

# |lambda - 1| below this counts as a unit eigenvalue; keeps specs with
# several fixed Fourier directions (even-offset averaging) on one code path.
UNIT_EIGENVALUE_TOL = 1e-12


class NonContractingError(ValueError):
    """The spec has a non-unit eigenvalue of modulus >= 1."""


@dataclass(frozen=True)
class CirculantSpec:
    """First row of an n-by-n circulant matrix."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) < 1:
            raise ValueError("a circulant needs at least one coefficient")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def is_row_stochastic(self, tol: float = 1e-9) -> bool:
        return (
            all(c >= -tol for c in self.coeffs)
            and abs(math.fsum(self.coeffs) - 1.0) <= tol
        )

    def as_matrix(self) -> np.ndarray:
        """Dense matrix with entry (i, j) equal to coeffs[(j - i) % n]."""
        n = self.n
        c = np.asarray(self.coeffs)
        return c[(np.arange(n)[None, :] - np.arange(n)[:, None]) % n]


@dataclass(frozen=True)
class SpectrumEntry:
    """Eigenvalue at Fourier index j, with polar decomposition."""

    index: int
    eigenvalue: complex
    modulus: float
    angle: float


@dataclass(frozen=True)
class IterationTrace:
    """Recorded orbit of repeated applications, oldest first."""

    steps: tuple[np.ndarray, ...]
    converged: bool
    iterations: int


def eigenvalues(spec: CirculantSpec) -> list[SpectrumEntry]:
    """All eigenvalues: lambda_j = sum_m c[m] w^(j*m) with w = exp(2*pi*i/n).

    Evaluated on a table of n-th roots of unity with exponents reduced
    mod n, never through a dense eigensolver; index 0 of a row-stochastic
    spec comes out as the plain coefficient sum.
    """
    n = spec.n
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    entries = []
    for j in range(n):
        lam = complex(sum(c * roots[(j * m) % n] for m, c in enumerate(spec.coeffs)))
        entries.append(
            SpectrumEntry(index=j, eigenvalue=lam, modulus=abs(lam), angle=cmath.phase(lam))
        )
    return entries


_SHIFT_INDEX_CACHE: dict[int, np.ndarray] = {}


def _shift_index(n: int) -> np.ndarray:
    idx = _SHIFT_INDEX_CACHE.get(n)
    if idx is None:
        idx = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
        idx.setflags(write=False)
        _SHIFT_INDEX_CACHE[n] = idx
    return idx


def apply(spec: CirculantSpec, v) -> np.ndarray:
    """One application of the matrix: out[i] = sum_m c[m] * v[(i + m) % n]."""
    v = np.asarray(v, dtype=float)
    if v.shape != (spec.n,):
        raise ValueError(f"vector length {v.shape} does not match size {spec.n}")
    return v[_shift_index(spec.n)] @ np.asarray(spec.coeffs)


def _unit_indices(entries: list[SpectrumEntry]) -> set[int]:
    return {e.index for e in entries if abs(e.eigenvalue - 1.0) <= UNIT_EIGENVALUE_TOL}


def fixed_space_limit(spec: CirculantSpec, v) -> np.ndarray:
    """Projection of v onto the eigenvalue-1 eigenspace; equals lim A^m v.

    Built from the discrete Fourier coefficients of v at the
    unit-eigenvalue indices.  Requires every other eigenvalue modulus to
    be strictly below 1, otherwise the power iteration has no limit there.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (spec.n,):
        raise ValueError(f"vector length {v.shape} does not match size {spec.n}")
    entries = eigenvalues(spec)
    unit = _unit_indices(entries)
    worst = max((e.modulus for e in entries if e.index not in unit), default=0.0)
    if worst >= 1.0:
        raise NonContractingError(
            f"non-contracting: eigenvalue modulus {worst} off the fixed space"
        )
    n = spec.n
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    limit = np.zeros(n, dtype=complex)
    for j in sorted(unit):
        fourier = sum(v[i] * roots[(-i * j) % n] for i in range(n)) / n
        limit += fourier * roots[(j * np.arange(n)) % n]
    return limit.real


def contraction_factor(spec: CirculantSpec) -> float:
    """Largest eigenvalue modulus outside the unit-eigenvalue index set.

    Governs the geometric decay rate of deviations from the fixed space;
    0.0 when every eigenvalue equals 1 (nothing left to contract).
    """
    entries = eigenvalues(spec)
    unit = _unit_indices(entries)
    return max((e.modulus for e in entries if e.index not in unit), default=0.0)


def mean_coefficient(v) -> float:
    """Fourier coefficient at index 0, i.e. the entrywise mean of v."""
    v = np.asarray(v, dtype=float)
    return math.fsum(v) / len(v)


def iterate_until(spec: CirculantSpec, v0, target, tol: float, max_iter: int) -> IterationTrace:
    """Apply the circulant until within max-norm `tol` of `target`.

    Convergence is checked before each application, so a vector already at
    the target reports zero iterations.  Every intermediate vector is
    recorded, starting with v0 itself.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    v = np.array(v0, dtype=float)
    target = np.asarray(target, dtype=float)
    if v.shape != (spec.n,) or target.shape != (spec.n,):
        raise ValueError("vector lengths must match the circulant size")
    steps = [v.copy()]
    converged = bool(np.max(np.abs(v - target)) < tol)
    iterations = 0
    while not converged and iterations < max_iter:
        v = apply(spec, v)
        steps.append(v.copy())
        iterations += 1
        converged = bool(np.max(np.abs(v - target)) < tol)
    return IterationTrace(steps=tuple(steps), converged=converged, iterations=iterations)


def predict_iterations(spec: CirculantSpec, initial_deviation_norm: float, tol: float) -> int:
    """Steps needed for factor**m * initial_deviation to fall below tol.

    ceil(log(tol / initial) / log(factor)), clamped at zero; requires a
    genuinely contracting spec (0 < factor < 1).  A 1e-12 slack inside the
    ceil absorbs roundoff when the ratio lands exactly on an integer
    (tolerances that are exact powers of the factor).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    factor = contraction_factor(spec)
    if not 0.0 < factor < 1.0:
        raise NonContractingError(f"contraction factor {factor} is not in (0, 1)")
    if initial_deviation_norm <= tol:
        return 0
    ratio = math.log(tol / initial_deviation_norm) / math.log(factor)
    return max(0, math.ceil(ratio - 1e-12))
