"""Sampled window functions on the uniform grid t_j = -K + j*h.

The grid step is h = 1/q for an integer q and samples cover [-K, K).  A
window built from a named generator keeps that generator around (analytic
windows) so later operations can evaluate it off the grid; a window is
treated as identically zero outside [-K, K).

Generators:

    gaussian               2**(1/4) * exp(-pi t**2), unit L2 norm
    box                    indicator of [0, 1)
    two-sided-exponential  exp(-|t|)
    hermite-n              n-th L2-normalized Hermite function (hermite-0
                           is the Gaussian above)
    custom                 caller-supplied samples, no generator
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.hermite import hermval

from .errors import BadStep

_STEP_TOL = 1e-12
_HERMITE_RE = re.compile(r"^hermite-(\d+)$")


def _gaussian(t: np.ndarray) -> np.ndarray:
    return (2.0 ** 0.25) * np.exp(-np.pi * t * t) + 0j


def _box(t: np.ndarray) -> np.ndarray:
    return np.where((t >= 0.0) & (t < 1.0), 1.0, 0.0) + 0j


def _two_sided_exponential(t: np.ndarray) -> np.ndarray:
    return np.exp(-np.abs(t)) + 0j


def _hermite(order: int) -> Callable[[np.ndarray], np.ndarray]:
    # 2**(1/4)/sqrt(2^n n!) * H_n(sqrt(2 pi) t) * exp(-pi t^2) has unit
    # L2 norm for the physicists' H_n; order 0 reduces to the Gaussian.
    coeffs = np.zeros(order + 1)
    coeffs[order] = 1.0
    scale = (2.0 ** 0.25) / math.sqrt((2.0 ** order) * math.factorial(order))

    def gen(t: np.ndarray) -> np.ndarray:
        u = math.sqrt(2.0 * math.pi) * t
        return scale * hermval(u, coeffs) * np.exp(-np.pi * t * t) + 0j

    return gen


@dataclass(frozen=True)
class SampledWindow:
    """Complex samples of a window on the grid [-K, K) with step h = 1/q.

    Instances are immutable; the sample array is marked read-only.  The
    optional generator is excluded from equality and only present on
    analytic windows.  truncation_loss records squared-norm mass dropped by
    the operation that produced this window (0 for freshly built ones).
    """

    kind: str
    h: float
    half_support: int
    samples: np.ndarray
    analytic: bool = False
    generator: Optional[Callable[[np.ndarray], np.ndarray]] = field(
        default=None, compare=False, repr=False)
    truncation_loss: float = 0.0

    def __post_init__(self):
        q = _grid_denominator(self.h)
        samples = np.ascontiguousarray(self.samples, dtype=complex)
        expected = 2 * self.half_support * q
        if self.half_support < 1:
            raise ValueError("half_support must be a positive integer")
        if samples.shape != (expected,):
            raise ValueError(
                f"expected {expected} samples, got {samples.shape}")
        if not np.all(np.isfinite(samples.view(float))):
            raise ValueError("samples must be finite")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "h", 1.0 / q)
        if self.analytic and self.generator is None:
            raise ValueError("analytic windows need a generator")

    @property
    def q(self) -> int:
        return round(1.0 / self.h)

    def times(self) -> np.ndarray:
        """Sample grid, exact rationals (j - K q)/q evaluated in floats."""
        q = self.q
        return (np.arange(self.samples.size) - self.half_support * q) / q

    @property
    def norm(self) -> float:
        """Discrete L2 norm sqrt(h * sum |f|^2)."""
        return math.sqrt(self.h * float(np.vdot(self.samples,
                                                self.samples).real))

    def eval_truncated(self, t: np.ndarray) -> np.ndarray:
        """Generator value at t, zero outside [-K, K).  Analytic only."""
        if not self.analytic:
            raise ValueError("window has no generator to evaluate")
        t = np.asarray(t, dtype=float)
        K = self.half_support
        inside = (t >= -K) & (t < K)
        return np.where(inside, self.generator(t), 0.0 + 0j)


def _grid_denominator(h: float) -> int:
    if not (h > 0):
        raise BadStep(f"grid step must be positive, got {h}")
    q = round(1.0 / h)
    if q < 1 or abs(1.0 / h - q) > _STEP_TOL * max(1, q):
        raise BadStep(f"1/h must be an integer within {_STEP_TOL}, got h={h}")
    return q


def _generator_for(kind: str) -> Callable[[np.ndarray], np.ndarray]:
    if kind == "gaussian":
        return _gaussian
    if kind == "box":
        return _box
    if kind == "two-sided-exponential":
        return _two_sided_exponential
    m = _HERMITE_RE.match(kind)
    if m:
        return _hermite(int(m.group(1)))
    raise ValueError(f"unknown window kind {kind!r}")


def make_window(kind: str, h: float, K: int) -> SampledWindow:
    """Sample the named generator on the grid with step h and support [-K, K).

    Raises BadStep unless 1/h is an integer (within 1e-12) and K >= 1.
    """
    q = _grid_denominator(h)
    if K < 1 or K != int(K):
        raise BadStep(f"half-support K must be a positive integer, got {K}")
    K = int(K)
    gen = _generator_for(kind)
    t = (np.arange(2 * K * q) - K * q) / q
    samples = gen(t)
    if not np.any(samples):
        raise ValueError(f"window {kind!r} vanishes on the whole grid")
    return SampledWindow(kind=kind, h=1.0 / q, half_support=K,
                         samples=samples, analytic=True, generator=gen)


def custom_window(samples, h: float, K: int) -> SampledWindow:
    """Wrap caller-provided samples; rejects the all-zero window."""
    q = _grid_denominator(h)
    if K < 1 or K != int(K):
        raise BadStep(f"half-support K must be a positive integer, got {K}")
    arr = np.asarray(samples, dtype=complex)
    if not np.any(arr):
        raise ValueError("custom window must not be identically zero")
    return SampledWindow(kind="custom", h=1.0 / q, half_support=int(K),
                         samples=arr)
