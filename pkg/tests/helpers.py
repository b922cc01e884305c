"""Shared random generators for the test suite.

Everything is seeded through numpy Generators so failures reproduce.
"""

from __future__ import annotations

import numpy as np

from scalekit import CoeffSeq, ScaleSignal, ScaleTimeSignal, SuMatrix, make_scale_shift


def random_hyperbolic(rng, mult_lo=0.1, mult_hi=0.9, theta_max=1.2) -> SuMatrix:
    """Hyperbolic map with multiplier in [mult_lo, mult_hi]."""
    alpha = rng.uniform(mult_lo, mult_hi)
    theta = rng.uniform(-theta_max, theta_max)
    m = make_scale_shift(alpha, theta)
    if rng.random() < 0.5:
        m = m.inverse()
    return m


def random_elliptic(rng) -> SuMatrix:
    psi = rng.uniform(0.2, np.pi - 0.2)
    return SuMatrix(complex(np.cos(psi), np.sin(psi)), 0.0)


def random_unit_coeffs(rng, max_deg=32) -> CoeffSeq:
    deg = int(rng.integers(0, max_deg + 1))
    vals = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    vals /= np.linalg.norm(vals)
    return CoeffSeq(vals)


def random_scale_signal(rng, arity, width=3, terms=4) -> ScaleSignal:
    entries = {}
    for _ in range(terms):
        idx = tuple(int(k) for k in rng.integers(-width, width + 1, arity))
        entries[idx] = complex(rng.standard_normal(), rng.standard_normal())
    return ScaleSignal(entries, arity=arity)


def random_time_signal(rng, arity, time_len, width=3, terms=4) -> ScaleTimeSignal:
    slices = [
        random_scale_signal(rng, arity, width=width, terms=terms)
        for _ in range(time_len)
    ]
    return ScaleTimeSignal(slices, arity=arity)


def disc_point(rng, radius=0.99) -> complex:
    r = radius * np.sqrt(rng.random())
    phi = 2.0 * np.pi * rng.random()
    return complex(r * np.cos(phi), r * np.sin(phi))
