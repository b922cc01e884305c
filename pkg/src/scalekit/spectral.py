"""Fourier analysis on the scale lattice, transfer functions, and the
Hermite transform onto Laurent polynomials.

The forward transform pairs an exponent k with e^{-i k.theta} on a uniform
torus grid; the Hermite transform relabels the same coefficients as powers
z^k with no conjugation.  Evaluating the Hermite transform at e^{i theta}
therefore reproduces the forward transform at -theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .group import ScaleGroup
from .signals import ScaleSignal, ScaleTimeSignal, as_index

__all__ = [
    "SpectrumGrid",
    "LaurentPoly",
    "scale_fourier",
    "scale_fourier_inverse",
    "transfer_grid",
    "hermite_transform",
    "generalized_transfer",
    "haar_moment",
]


@dataclass(frozen=True)
class SpectrumGrid:
    """Complex values sampled on the product grid theta_j = 2 pi j / size."""

    grid_sizes: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.grid_sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError(f"grid sizes must be positive, got {sizes!r}")
        vals = np.asarray(self.values, complex)
        if vals.shape != sizes:
            vals = vals.reshape(sizes)
        object.__setattr__(self, "grid_sizes", sizes)
        object.__setattr__(self, "values", vals)

    @property
    def arity(self) -> int:
        return len(self.grid_sizes)

    def angles(self, axis: int) -> np.ndarray:
        n = self.grid_sizes[axis]
        return 2.0 * math.pi * np.arange(n) / n

    def mean_square(self) -> float:
        return float(np.mean(np.abs(self.values) ** 2))


def _check_alias(x, grid_sizes) -> tuple[int, ...]:
    sizes = tuple(int(s) for s in grid_sizes)
    if len(sizes) != x.arity:
        raise ValueError(
            f"grid rank {len(sizes)} does not match signal arity {x.arity}"
        )
    if any(s < 1 for s in sizes):
        raise ValueError(f"grid sizes must be positive, got {sizes!r}")
    box = x.support_box()
    if box is not None:
        mins, maxs = box
        for a in range(x.arity):
            width = maxs[a] - mins[a] + 1
            if sizes[a] < width:
                raise ValueError(
                    f"aliasing on axis {a}: grid size {sizes[a]} < support "
                    f"width {width}"
                )
    return sizes


def scale_fourier(x: ScaleSignal, grid_sizes) -> SpectrumGrid:
    """Forward transform sum_k x(k) e^{-i k.theta} on the torus grid.

    Grid sizes must cover the support width on every axis (anti-aliasing
    guard); then the grid mean of |values|^2 equals the signal energy.
    """
    sizes = _check_alias(x, grid_sizes)
    angles = [2.0 * math.pi * np.arange(n) / n for n in sizes]
    vals = np.zeros(sizes, complex)
    for idx, v in x.items():
        factors = [np.exp(-1j * idx[a] * angles[a]) for a in range(x.arity)]
        vals += v * reduce(np.multiply.outer, factors)
    return SpectrumGrid(sizes, vals)


def scale_fourier_inverse(grid: SpectrumGrid, window) -> ScaleSignal:
    """Trigonometric quadrature with the normalized grid measure.

    window is a per-axis (kmin, kmax) range (inclusive) of exponents to
    reconstruct; exponents congruent modulo the grid size share values, so
    the window selects the intended representatives.
    """
    window = [(int(lo), int(hi)) for lo, hi in window]
    if len(window) != grid.arity:
        raise ValueError("window rank does not match grid rank")
    for a, (lo, hi) in enumerate(window):
        if lo > hi:
            raise ValueError(f"empty window on axis {a}")
    angles = [grid.angles(a) for a in range(grid.arity)]
    entries = {}
    spans = [range(lo, hi + 1) for lo, hi in window]
    idx_list = [()]
    for span in spans:
        idx_list = [prefix + (k,) for prefix in idx_list for k in span]
    for idx in idx_list:
        factors = [np.exp(1j * idx[a] * angles[a]) for a in range(grid.arity)]
        phase = reduce(np.multiply.outer, factors)
        entries[idx] = complex(np.mean(grid.values * phase))
    return ScaleSignal(entries, arity=grid.arity)


def transfer_grid(h: ScaleTimeSignal, z: complex, grid_sizes) -> SpectrumGrid:
    """H(z, theta) = sum_n z^n hhat_n(theta) sampled on the torus grid."""
    z = complex(z)
    sizes = tuple(int(s) for s in grid_sizes)
    if len(sizes) != h.arity:
        raise ValueError(
            f"grid rank {len(sizes)} does not match signal arity {h.arity}"
        )
    vals = np.zeros(sizes, complex)
    zn = 1.0 + 0.0j
    for s in h.slices:
        if not s.is_zero:
            vals += zn * scale_fourier(s, sizes).values
        else:
            _check_alias(s, sizes)
        zn *= z
    return SpectrumGrid(sizes, vals)


@dataclass(frozen=True)
class LaurentPoly:
    """Finitely supported Laurent polynomial in p variables."""

    terms: dict
    arity: int

    def __post_init__(self):
        arity = int(self.arity)
        clean = {}
        for idx, v in dict(self.terms).items():
            idx = as_index(idx, arity)
            v = complex(v)
            if v != 0:
                clean[idx] = v
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "arity", arity)

    def get(self, idx) -> complex:
        return self.terms.get(as_index(idx, self.arity), 0.0)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        out: dict = {}
        for k, a in sorted(self.terms.items()):
            for j, b in sorted(other.terms.items()):
                key = tuple(x + y for x, y in zip(k, j))
                out[key] = out.get(key, 0.0) + a * b
        return LaurentPoly(out, self.arity)

    def __call__(self, zs) -> complex:
        zs = [complex(z) for z in zs]
        if len(zs) != self.arity:
            raise ValueError(f"expected {self.arity} point coordinates")
        neg_axes = {
            a for idx in self.terms for a in range(self.arity) if idx[a] < 0
        }
        for a in neg_axes:
            if zs[a] == 0:
                raise ZeroDivisionError(
                    f"variable {a} is zero but negative powers are present"
                )
        total = 0.0 + 0.0j
        for idx, v in sorted(self.terms.items()):
            term = v
            for a in range(self.arity):
                if idx[a]:
                    term *= zs[a] ** idx[a]
            total += term
        return total

    def distance(self, other: "LaurentPoly") -> float:
        keys = set(self.terms) | set(other.terms)
        return max(
            (abs(self.terms.get(k, 0.0) - other.terms.get(k, 0.0)) for k in keys),
            default=0.0,
        )


def hermite_transform(x: ScaleSignal) -> LaurentPoly:
    """Relabel group coefficients as Laurent coefficients: delta_k -> z^k."""
    return LaurentPoly(dict(x.items()), x.arity)


def generalized_transfer(h: ScaleTimeSignal, z: complex, zs) -> complex:
    """sum_n z^n sum_k h_n(k) zs^k, the transfer function in p+1 variables.

    When h carries negative scale exponents the scale variables must lie on
    the unit circle; cone-supported h evaluates anywhere in the closed
    polydisc (and beyond, since the sum is finite).
    """
    z = complex(z)
    zs = [complex(w) for w in zs]
    if len(zs) != h.arity:
        raise ValueError(f"expected {h.arity} scale coordinates")
    box = h.support_box()
    if box is not None:
        mins, _ = box
        for a in range(h.arity):
            if mins[a] < 0 and abs(abs(zs[a]) - 1.0) > 1e-9:
                raise ValueError("Laurent evaluation requires torus points")
    total = 0.0 + 0.0j
    zn = 1.0 + 0.0j
    for s in h.slices:
        if not s.is_zero:
            total += zn * hermite_transform(s)(zs)
        zn *= z
    return total


def haar_moment(group: ScaleGroup, idx) -> complex:
    """Moment of a character power under the normalized dual-group measure.

    Character orthogonality makes every moment vanish except at the zero
    exponent, where the total mass is one.
    """
    idx = as_index(idx, group.p)
    return 1.0 + 0.0j if all(k == 0 for k in idx) else 0.0 + 0.0j
