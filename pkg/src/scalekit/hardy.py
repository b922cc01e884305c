"""Action of disc automorphisms on Taylor coefficient sequences.

The map sends the coefficients of f to those of (1/(b* z + a*)) f(phi(z)),
where phi(z) = (a z + b)/(b* z + a*).  The operator is an isometry of the
coefficient l2 norm; outputs carry a certified bound on the discarded tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .group import ScaleGroup
from .moebius import SuMatrix
from .signals import ScaleSignal, ScaleTimeSignal, as_index

__all__ = ["CoeffSeq", "TruncationError", "transform_coeffs", "scale_transform",
           "DEFAULT_MAX_LEN"]

DEFAULT_MAX_LEN = 1 << 16


class TruncationError(RuntimeError):
    """Raised when no output length within budget certifies the tail bound."""

    def __init__(self, message: str, achieved_bound: float):
        super().__init__(message)
        self.achieved_bound = achieved_bound


@dataclass(frozen=True)
class CoeffSeq:
    """Truncated power-series coefficients with a certified l2 tail bound."""

    coeffs: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if arr.size and not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        tail = float(self.tail_bound)
        if not (math.isfinite(tail) and tail >= 0.0):
            raise ValueError(f"tail bound must be a nonnegative real, got {tail!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "tail_bound", tail)

    def __len__(self) -> int:
        return int(self.coeffs.size)

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))


def _as_coeffseq(f) -> CoeffSeq:
    if isinstance(f, CoeffSeq):
        return f
    return CoeffSeq(np.asarray(f, dtype=complex))


def _div_linear(h: np.ndarray, c: complex, d: complex) -> np.ndarray:
    """Coefficients of h(z) / (d + c z); stable since |c/d| < 1."""
    if c == 0:
        return h / d
    return lfilter([1.0], [d, c], h)


def _certified_length(coeffs: np.ndarray, m: SuMatrix, tol: float,
                      max_len: int) -> tuple[int, float]:
    """Smallest output length whose geometric l2 tail bound is <= tol.

    The transformed series is analytic up to the pole -d/c of radius
    R0 = |d|/|c| > 1.  On a circle |z| = R < R0 the modulus is at most
    M(R) = sum_k |f_k| rho(R)^k / (|d| - |c| R) with
    rho(R) = (|a| R + |b|) / (|d| - |c| R), and the coefficient tail beyond
    N is bounded by M(R) R^-N / sqrt(1 - R^-2).  Minimized over a radius
    ladder, in log space to avoid overflow.
    """
    absf = np.abs(coeffs)
    mask = absf > 0.0
    if not np.any(mask):
        return 1, 0.0
    logf = np.log(absf[mask])
    degrees = np.nonzero(mask)[0].astype(float)
    abs_a, abs_b = abs(m.a), abs(m.b)
    abs_c, abs_d = abs_b, abs_a
    r0 = abs_d / abs_c
    best_n = None
    best_n_bound = tol
    bound_at_cap = math.inf
    for s in (0.05, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.97):
        radius = r0 ** s
        if radius <= 1.0 or radius >= r0:
            continue
        den = abs_d - abs_c * radius
        if den <= 0.0:
            continue
        rho = (abs_a * radius + abs_b) / den
        # log of sum_k |f_k| rho^k, then of the full constant
        log_sum = float(np.logaddexp.reduce(logf + degrees * math.log(rho)))
        log_base = log_sum - math.log(den) - 0.5 * math.log1p(-radius ** -2)
        log_r = math.log(radius)
        need = (log_base - math.log(tol)) / log_r
        n_req = max(1, int(math.ceil(need)) if need > 0 else 1)
        bound_at_cap = min(bound_at_cap, math.exp(log_base - max_len * log_r))
        if n_req <= max_len and (best_n is None or n_req < best_n):
            best_n = n_req
            best_n_bound = min(tol, math.exp(log_base - n_req * log_r))
    if best_n is None:
        raise TruncationError(
            f"truncation not converged: certified bound {bound_at_cap:.3e} at "
            f"length {max_len} exceeds tol={tol:.3e}",
            achieved_bound=bound_at_cap,
        )
    return best_n, best_n_bound


def transform_coeffs(m: SuMatrix, f, tol: float,
                     max_len: int = DEFAULT_MAX_LEN) -> CoeffSeq:
    """Coefficients of the transformed series, with certified tail bound.

    Uses Horner composition: g <- f_M, then g <- f_n + w g for n = M-1 .. 0
    with w(z) = (a z + b)/(b* z + a*) kept as a truncated series, then one
    final division by (b* z + a*).  Every step is lower triangular in the
    coefficient index, so the returned head is exact up to roundoff; only
    the certified output length depends on tol.

    Parameters
    ----------
    m : SuMatrix
        The disc automorphism.
    f : CoeffSeq or array_like
        Input coefficients (finite).
    tol : float
        Target l2 bound on the omitted output tail.
    max_len : int
        Refuse to return more than this many coefficients.
    """
    f = _as_coeffseq(f)
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValueError(f"tol must be a positive real, got {tol!r}")
    coeffs = f.coeffs
    if coeffs.size == 0 or not np.any(coeffs):
        return CoeffSeq(np.zeros(1, complex), f.tail_bound)
    a, b = m.a, m.b
    c, d = m.c, m.d
    if abs(b) == 0.0:
        # Rotation-like map: output degree equals input degree, no tail.
        n = np.arange(coeffs.size)
        phase = (a / d) ** n / d
        return CoeffSeq(coeffs * phase, f.tail_bound)
    n_out, bound = _certified_length(coeffs, m, tol, max_len)
    g = np.zeros(n_out, complex)
    g[0] = coeffs[-1]
    for fk in coeffs[-2::-1]:
        h = b * g
        h[1:] += a * g[:-1]
        g = _div_linear(h, c, d)
        g[0] += fk
    out = _div_linear(g, c, d)
    return CoeffSeq(out, bound + f.tail_bound)


def scale_transform(group: ScaleGroup, x, scale_window, time_len: int,
                    tol: float, max_len: int = DEFAULT_MAX_LEN) -> ScaleTimeSignal:
    """Observe a coefficient sequence through a window of group scales.

    Column at index idx is transform_coeffs(group.element(idx), x) truncated
    or zero-padded to time_len rows; row n collects the n-th coefficient of
    every column.
    """
    x = _as_coeffseq(x)
    window = [as_index(idx, group.p) for idx in scale_window]
    if not window:
        raise ValueError("scale window must be nonempty")
    if len(set(window)) != len(window):
        raise ValueError("scale window contains duplicate indices")
    time_len = int(time_len)
    if time_len < 1:
        raise ValueError(f"time_len must be >= 1, got {time_len}")
    columns: dict[tuple, np.ndarray] = {}
    for idx in window:
        mat = group.element(idx)
        try:
            col = transform_coeffs(mat, x, tol, max_len)
        except TruncationError as exc:
            raise TruncationError(
                f"scale index {idx}: {exc}", exc.achieved_bound
            ) from exc
        except ValueError as exc:
            raise ValueError(f"scale index {idx}: {exc}") from exc
        padded = np.zeros(time_len, complex)
        take = min(time_len, len(col))
        padded[:take] = col.coeffs[:take]
        columns[idx] = padded
    slices = []
    for n in range(time_len):
        slices.append(
            ScaleSignal({idx: columns[idx][n] for idx in window}, arity=group.p)
        )
    return ScaleTimeSignal(slices, arity=group.p)
