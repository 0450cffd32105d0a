"""Time-frequency shift operators and numerical independence margins.

apply_tf_shift realizes (x, y) |-> e^{-2 pi i y t} f(t - x) on sampled
windows; translation happens first, so swapping the two elementary steps
costs the global phase e^{-2 pi i x y}.  Shifted mass leaving the sampled
support [-K, K) is truncated and the lost squared norm is reported on the
result.

Gram matrices of shifted families use the h-weighted Riemann inner product
h * sum conj(f) g, and the independence margin of a configuration is the
smallest singular value of the Gram matrix of its shifted windows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, NoDistinguishedPoint, OffGridShift
from .points import CoefficientVector, Configuration, TFPoint
from .windows import SampledWindow

_GRID_TOL = 1e-12


def apply_tf_shift(w: SampledWindow, pt: TFPoint) -> SampledWindow:
    """Shifted window e^{-2 pi i y t_j} f(t_j - x) on the same grid.

    Analytic windows evaluate their generator at t_j - x, so any real x is
    allowed; sample-only windows support integer multiples of h and raise
    OffGridShift otherwise.  The result is kind "custom" but keeps a
    composed generator when the source had one.
    """
    x, y = pt.xf, pt.yf
    t = w.times()
    if w.analytic:
        shifted = w.eval_truncated(t - x)
    else:
        steps = x / w.h
        n = round(steps)
        if abs(steps - n) > _GRID_TOL * max(1.0, abs(steps)):
            raise OffGridShift(
                f"shift {x} is not a multiple of h={w.h} and the window "
                "has no generator")
        shifted = np.zeros_like(w.samples)
        if n >= 0:
            if n < w.samples.size:
                shifted[n:] = w.samples[:w.samples.size - n]
        else:
            if -n < w.samples.size:
                shifted[:n] = w.samples[-n:]
    phase = np.exp(-2j * np.pi * y * t)
    result = phase * shifted

    loss = w.h * (float(np.vdot(w.samples, w.samples).real)
                  - float(np.vdot(result, result).real))
    gen = None
    if w.analytic:
        inner = w.eval_truncated

        def gen(s, _inner=inner, _x=x, _y=y):
            s = np.asarray(s, dtype=float)
            return np.exp(-2j * np.pi * _y * s) * _inner(s - _x)

    return SampledWindow(kind="custom", h=w.h, half_support=w.half_support,
                         samples=result, analytic=w.analytic, generator=gen,
                         truncation_loss=max(0.0, loss))


@dataclass(frozen=True)
class GramMatrix:
    """Hermitian-symmetrized Gram matrix of a window family."""

    entries: np.ndarray

    def __post_init__(self):
        g = np.ascontiguousarray(self.entries, dtype=complex)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("Gram matrix must be square")
        g.flags.writeable = False
        object.__setattr__(self, "entries", g)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def gram_matrix(windows: list[SampledWindow]) -> GramMatrix:
    """Pairwise h-weighted inner products, symmetrized to exact Hermitian."""
    if not windows:
        raise ValueError("need at least one window")
    h, K = windows[0].h, windows[0].half_support
    for w in windows[1:]:
        if abs(w.h - h) > _GRID_TOL or w.half_support != K:
            raise GridMismatch(
                f"grids differ: ({w.h}, {w.half_support}) vs ({h}, {K})")
    v = np.stack([w.samples for w in windows], axis=1)
    g = h * (v.conj().T @ v)
    return GramMatrix((g + g.conj().T) / 2.0)


def min_singular(g: GramMatrix) -> float:
    """sqrt of the smallest Gram eigenvalue, clamped at zero."""
    lam = np.linalg.eigvalsh(g.entries)
    return math.sqrt(max(0.0, float(lam[0])))


def synthesis_min_singular(windows: list[SampledWindow]) -> float:
    """Independent route: smallest singular value of the sqrt(h)-scaled
    sample matrix.  Agrees with min_singular of the Gram matrix."""
    h = windows[0].h
    v = np.stack([w.samples for w in windows], axis=1) * math.sqrt(h)
    return float(np.linalg.svd(v, compute_uv=False)[-1])


@dataclass(frozen=True)
class IndependenceReport:
    """Margin numbers for one shifted family.

    leakage is the largest squared-norm mass truncated away while building
    the shifted windows; margins are only meaningful when it is small.
    """

    min_singular: float
    condition_number: float
    grid_step: float
    half_support: int
    leakage: float


def shifted_family(w: SampledWindow, cfg: Configuration) -> list[SampledWindow]:
    """One shifted copy of w per configuration point, in listed order."""
    return [apply_tf_shift(w, p) for p in cfg.points]


def independence_margin(w: SampledWindow, cfg: Configuration
                        ) -> IndependenceReport:
    """Smallest singular value and conditioning of the configuration's Gram."""
    family = shifted_family(w, cfg)
    g = gram_matrix(family)
    lam = np.linalg.eigvalsh(g.entries)
    lo, hi = max(0.0, float(lam[0])), max(0.0, float(lam[-1]))
    smin = math.sqrt(lo)
    cond = math.inf if smin == 0.0 else math.sqrt(hi) / smin
    leak = max(f.truncation_loss for f in family)
    return IndependenceReport(min_singular=smin, condition_number=cond,
                              grid_step=w.h, half_support=w.half_support,
                              leakage=leak)


def dependency_residual(w: SampledWindow, cfg: Configuration,
                        c: CoefficientVector) -> float:
    """Relative error of writing the distinguished shift through the others.

    || sum_k c_k S_k w  -  S_d w || / ||w||, shifts S in listed order with
    the distinguished point d removed.  Raises NoDistinguishedPoint when the
    configuration does not mark one.
    """
    if cfg.distinguished is None:
        raise NoDistinguishedPoint("configuration has no distinguished point")
    if len(c) != len(cfg) - 1:
        raise ValueError(
            f"need {len(cfg) - 1} coefficients, got {len(c)}")
    target = apply_tf_shift(w, cfg.points[cfg.distinguished]).samples
    acc = np.zeros_like(target)
    k = 0
    for i, p in enumerate(cfg.points):
        if i == cfg.distinguished:
            continue
        acc = acc + c.values[k] * apply_tf_shift(w, p).samples
        k += 1
    diff = acc - target
    err = math.sqrt(w.h * float(np.vdot(diff, diff).real))
    return err / w.norm
