"""One-dimensional diagonal flows and their infinite-product traces.

For translation parameters x_k and coefficients c_k the matrix
coefficient is p(xi) = sum_k c_k exp(-2 pi i x_k xi).  Pushing a seed
magnitude through |F(xi + 1)| = |p(xi)| |F(xi)| in both directions gives
the forward and backward log traces; their finite-n trends stand in for
the asymptotic classification {converges, diverges-to-zero,
diverges-to-infinity, indeterminate}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from .accum import compensated_cumsum
from .errors import GridMismatch
from .fmt import format_float
from .points import CoefficientVector
from .windows import SampledWindow

_EPS_ALIGN = 1e-9

# log of the largest float64; exp past this is +inf
_LOG_CAP = 700.0


@dataclass(frozen=True)
class DiagonalFlow:
    """N distinct translation parameters with nonzero weights."""

    xs: Tuple[float, ...]
    cs: Tuple[complex, ...]

    def __init__(
        self,
        xs: Sequence[float],
        cs: Union[CoefficientVector, Sequence[complex]],
    ) -> None:
        xs_t = tuple(float(x) for x in xs)
        if isinstance(cs, CoefficientVector):
            cs_t = tuple(complex(c) for c in cs.values)
        else:
            cs_t = tuple(complex(c) for c in cs)
        if not xs_t:
            raise ValueError("flow needs at least one translation parameter")
        if len(set(xs_t)) != len(xs_t):
            raise ValueError("translation parameters must be pairwise distinct")
        if len(cs_t) != len(xs_t):
            raise ValueError("coefficient count must match parameter count")
        if any(c == 0 for c in cs_t):
            raise ValueError("coefficients must be nonzero")
        object.__setattr__(self, "xs", xs_t)
        object.__setattr__(self, "cs", cs_t)

    @property
    def order(self) -> int:
        return len(self.xs)


def matrix_coefficient(flow: DiagonalFlow, xi) -> Union[complex, np.ndarray]:
    """p(xi) = sum_k c_k exp(-2 pi i x_k xi), scalar or elementwise."""
    xi_arr = np.asarray(xi, dtype=np.float64)
    cs = np.array(flow.cs, dtype=np.complex128)
    xs = np.array(flow.xs)
    out = np.sum(
        cs * np.exp(-2j * np.pi * xi_arr[..., np.newaxis] * xs), axis=-1
    )
    if out.ndim == 0:
        return complex(out)
    return out


_LABELS = (
    "converges",
    "diverges-to-zero",
    "diverges-to-infinity",
    "indeterminate",
)


def _trend(series: np.ndarray) -> Tuple[float, float]:
    """Least-squares slope and max |residual| over the last half."""
    half = series.size // 2
    seg = series[half:] if series.size - half >= 2 else series
    x = np.arange(seg.size, dtype=np.float64)
    xc = x - x.mean()
    yc = seg - seg.mean()
    slope = float(np.dot(xc, yc) / np.dot(xc, xc))
    resid = yc - slope * xc
    return slope, float(np.max(np.abs(resid)))


def _side_label(slope: float, osc: float, delta: float) -> str:
    if slope < -delta:
        return "diverges-to-zero"
    if slope > delta:
        return "diverges-to-infinity"
    if osc <= 0.5:
        return "converges"
    return "indeterminate"


@dataclass(frozen=True)
class ProductTrace:
    """Forward and backward log-sums at integer steps from xi.

    forward_logs[n] = sum_{j<n} ln|p(xi+j)|; backward_logs[n] =
    sum_{1<=j<=n} ln|p(xi-j)|, both with near-zero factors skipped and
    listed instead of folded in as -inf.  classification is the
    forward-side label; the backward tail of F grows like
    exp(-backward_logs), so its label reads off the trend of that sign.
    """

    xi: float
    forward_logs: np.ndarray
    backward_logs: np.ndarray
    classification: str
    forward_class: str
    backward_class: str
    both_sides_vanish: bool
    forward_slope: float
    backward_slope: float
    zero_hits_forward: Tuple[int, ...]
    zero_hits_backward: Tuple[int, ...]
    delta: float
    eps_zero: float

    def __post_init__(self) -> None:
        for name in ("forward_logs", "backward_logs"):
            arr = np.asarray(getattr(self, name), dtype=np.float64).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def to_csv(self) -> str:
        """Rows n, s_plus, s_minus, zero_flag.  The flag at row n marks a
        skipped factor p(xi+n) (forward, entering row n+1) or p(xi-n)
        (backward, entering row n)."""
        fwd = set(self.zero_hits_forward)
        bwd = set(self.zero_hits_backward)
        lines = ["n,s_plus,s_minus,zero_flag"]
        for n in range(self.forward_logs.size):
            flag = 1 if (n in fwd or n in bwd) else 0
            lines.append(
                f"{n},{format_float(self.forward_logs[n])},"
                f"{format_float(self.backward_logs[n])},{flag}"
            )
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {
            "xi": self.xi,
            "n": int(self.forward_logs.size - 1),
            "classification": self.classification,
            "forward_class": self.forward_class,
            "backward_class": self.backward_class,
            "both_sides_vanish": self.both_sides_vanish,
            "forward_slope": self.forward_slope,
            "backward_slope": self.backward_slope,
            "zero_hits_forward": list(self.zero_hits_forward),
            "zero_hits_backward": list(self.zero_hits_backward),
        }


def product_trace(
    flow: DiagonalFlow,
    xi: float,
    n: int,
    delta: float = 1e-3,
    eps_zero: float = 1e-14,
) -> ProductTrace:
    """Accumulate both log traces and classify the finite-n trend.

    delta is the slope threshold per step for calling a drift; the trend
    window is the last half of each trace.
    """
    if n < 1:
        raise ValueError("need at least one factor")
    xi = float(xi)
    fwd_mags = np.abs(matrix_coefficient(flow, xi + np.arange(n)))
    bwd_mags = np.abs(matrix_coefficient(flow, xi - np.arange(1, n + 1)))

    fwd_mask = fwd_mags < eps_zero
    bwd_mask = bwd_mags < eps_zero
    fwd_inc = np.zeros(n)
    fwd_inc[~fwd_mask] = np.log(fwd_mags[~fwd_mask])
    bwd_inc = np.zeros(n)
    bwd_inc[~bwd_mask] = np.log(bwd_mags[~bwd_mask])

    s_plus = compensated_cumsum(fwd_inc)
    s_minus = compensated_cumsum(bwd_inc)

    f_slope, f_osc = _trend(s_plus)
    # backward tail of F follows -s_minus
    b_slope, b_osc = _trend(-s_minus)
    f_label = _side_label(f_slope, f_osc, delta)
    b_label = _side_label(b_slope, b_osc, delta)

    return ProductTrace(
        xi=xi,
        forward_logs=s_plus,
        backward_logs=s_minus,
        classification=f_label,
        forward_class=f_label,
        backward_class=b_label,
        both_sides_vanish=(
            f_label == "diverges-to-zero" and b_label == "diverges-to-zero"
        ),
        forward_slope=f_slope,
        backward_slope=b_slope,
        zero_hits_forward=tuple(int(j) for j in np.nonzero(fwd_mask)[0]),
        zero_hits_backward=tuple(
            int(j) + 1 for j in np.nonzero(bwd_mask)[0]
        ),
        delta=float(delta),
        eps_zero=float(eps_zero),
    )


@dataclass(frozen=True)
class SummabilityReport:
    """Running sums of |F(xi+k)|^2 over k = -j..j, j = 0..n.

    Terms whose log magnitude clears the float64 ceiling enter as +inf
    and their offsets are listed (positive k forward, negative backward).
    """

    xi: float
    seed: float
    partial_sums: np.ndarray
    overflow_indices: Tuple[int, ...]

    def __post_init__(self) -> None:
        arr = np.asarray(self.partial_sums, dtype=np.float64).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "partial_sums", arr)

    @property
    def overflowed(self) -> bool:
        return bool(self.overflow_indices)

    @property
    def bounded_view(self) -> bool:
        return bool(np.isfinite(self.partial_sums[-1]))


def summability_probe(
    flow: DiagonalFlow,
    xi: float,
    seed: float,
    n: int,
) -> SummabilityReport:
    """Partial sums of sum_{k=-j}^{j} |F(xi+k)|^2 with
    |F(xi+k)|^2 = exp(2 s+_k) seed^2 and |F(xi-k)|^2 = exp(-2 s-_k) seed^2."""
    if seed <= 0:
        raise ValueError("seed must be positive")
    if n < 1:
        raise ValueError("need at least one offset")
    trace = product_trace(flow, xi, n)
    log_seed_sq = 2.0 * math.log(seed)
    fwd_logs = 2.0 * trace.forward_logs[1:] + log_seed_sq
    bwd_logs = -2.0 * trace.backward_logs[1:] + log_seed_sq

    overflow = []
    terms = np.empty(n)
    for k in range(n):
        t = 0.0
        if fwd_logs[k] > _LOG_CAP:
            t = math.inf
            overflow.append(k + 1)
        else:
            t += math.exp(fwd_logs[k])
        if bwd_logs[k] > _LOG_CAP:
            t = math.inf
            overflow.append(-(k + 1))
        else:
            t += math.exp(bwd_logs[k])
        terms[k] = t
    sums = np.empty(n + 1)
    sums[0] = seed * seed
    np.cumsum(terms, out=sums[1:])
    sums[1:] += seed * seed
    return SummabilityReport(
        xi=float(xi),
        seed=float(seed),
        partial_sums=sums,
        overflow_indices=tuple(overflow),
    )


def fourier_relation_residual(
    window: SampledWindow,
    flow: DiagonalFlow,
    grid_xi: Optional[np.ndarray] = None,
) -> float:
    """Residual of p(xi) F(xi) = F(xi + 1) on the DFT grid of the window.

    F here is the discrete transform of the samples: bin spacing 1/(2K),
    bins m in [-Kq, Kq), F(m/(2K)) = h (-1)^m FFT(samples)[m mod M].
    The sup runs over interior bins (those whose +1 shift stays on the
    grid), normalized by the overall peak |F|; grid_xi, when given, must
    be a subset of those interior bins.
    """
    q = window.q
    K = window.half_support
    M = 2 * K * q
    ms = np.arange(-K * q, K * q)
    spectrum = np.fft.fft(window.samples)
    signs = np.where(ms % 2 == 0, 1.0, -1.0)
    F = window.h * signs * spectrum[ms % M]
    peak = float(np.max(np.abs(F)))

    lo, hi = -K * q, K * q - 1 - 2 * K  # m and m + 2K both on the grid
    if grid_xi is None:
        sel = np.arange(lo, hi + 1)
    else:
        arr = np.asarray(grid_xi, dtype=np.float64).reshape(-1)
        if arr.size == 0:
            raise GridMismatch("grid_xi is empty")
        scaled = arr * (2 * K)
        sel = np.rint(scaled).astype(np.int64)
        if np.max(np.abs(scaled - sel)) > _EPS_ALIGN:
            raise GridMismatch(
                f"grid_xi must sit on the 1/{2 * K} bin lattice"
            )
        if sel.min() < lo or sel.max() > hi:
            raise GridMismatch(
                "grid_xi leaves the interior bin range "
                f"[{lo / (2 * K)}, {hi / (2 * K)}]"
            )
    base = sel + K * q
    xi_vals = sel / (2 * K)
    pv = matrix_coefficient(flow, xi_vals)
    resid = np.abs(pv * F[base] - F[base + 2 * K])
    return float(np.max(resid) / peak)
