"""Discrete Zak transform on the unit square and its algebraic identities.

For a window f sampled on the grid t = i/q + k (i in [0, q), k in [-K, K))
the image is

    Z[i, l] = sum_k f(i/q + k) exp(-2 pi i k l / q),

a q x q array evaluated at (t, omega) = (i/q, l/q).  All complex
exponentials are drawn from a cached table of q-th roots of unity, so the
quasi-periodicity laws hold to the last bit, not merely to rounding.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import GridMismatch
from .fmt import format_float, pgm_text
from .operators import apply_tf_shift
from .points import TFPoint
from .windows import SampledWindow

_GRID_TOL = 1e-9


@functools.lru_cache(maxsize=32)
def _root_table(q: int) -> np.ndarray:
    """W[m] = exp(-2 pi i m / q); indexing mod q keeps phases exact."""
    return np.exp(-2j * np.pi * np.arange(q) / q)


def _grid_index(x: float, q: int, what: str) -> int:
    scaled = x * q
    idx = int(round(scaled))
    if abs(scaled - idx) > _GRID_TOL:
        raise GridMismatch(f"{what}={x!r} is not a multiple of 1/{q}")
    return idx


@dataclass(frozen=True)
class ZakImage:
    """Values of the transform on the fundamental square.

    values[i, l] is the transform at (i/q, l/q).  source_norm is the
    discrete L2 norm of the window the image came from; source_K its
    half-support (kept so inversion can rebuild the same grid).
    """

    q: int
    values: np.ndarray
    source_norm: float
    source_K: Optional[int] = None

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.q, self.q):
            raise GridMismatch(
                f"image must be {self.q} x {self.q}, got {vals.shape}"
            )
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def at(self, t: float, omega: float) -> complex:
        """Evaluate at any grid-aligned point of the plane.

        Arguments reduce into the fundamental square through the two
        periodicity laws: omega drops its integer part freely, while each
        unit step in t costs a factor exp(2 pi i omega).  The factor comes
        from the same root table as the forward transform, so evaluating
        at (t + j, omega) and multiplying out the phase by hand gives the
        identical float.
        """
        q = self.q
        i_raw = _grid_index(t, q, "t")
        l_raw = _grid_index(omega, q, "omega")
        i0 = i_raw % q
        wraps = (i_raw - i0) // q
        l0 = l_raw % q
        if wraps == 0:
            return complex(self.values[i0, l0])
        phase = np.conj(_root_table(q))[(wraps * l0) % q]
        return complex(phase * self.values[i0, l0])

    def parseval_defect(self) -> float:
        """Relative gap between the mean square of the image and the
        squared source norm.  Zero (to rounding) whenever the source
        support fits the grid, i.e. 2K <= q."""
        mean_sq = float(np.sum(np.abs(self.values) ** 2)) / self.q**2
        ref = self.source_norm**2
        return abs(mean_sq - ref) / ref


def zak_transform(window: SampledWindow, q: Optional[int] = None) -> ZakImage:
    """Forward transform of a sampled window.

    If q differs from the window's own grid the window must carry an
    analytic generator so it can be resampled; plain sample vectors on a
    mismatched grid raise GridMismatch.
    """
    q = window.q if q is None else int(q)
    K = window.half_support
    if window.q == q:
        samples = window.samples
    elif window.analytic:
        times = (np.arange(2 * K * q) - K * q) / q
        samples = window.eval_truncated(times)
    else:
        raise GridMismatch(
            f"window sampled at step 1/{window.q} cannot produce a "
            f"q={q} image without a generator"
        )
    folded = samples.reshape(2 * K, q)  # row k+K holds f(./q + k)
    ks = np.arange(-K, K)
    table = _root_table(q)
    kernel = table[np.outer(ks, np.arange(q)) % q]
    values = folded.T @ kernel
    norm = float(np.sqrt(np.sum(np.abs(samples) ** 2) / q))
    return ZakImage(q=q, values=values, source_norm=norm, source_K=K)


def inverse_zak(image: ZakImage, half_support: Optional[int] = None) -> SampledWindow:
    """Invert on the grid the image knows about.

    Recovery is exact (a true inverse) precisely when the window support
    fits one period, 2K <= q; half_support defaults to the recorded
    source_K, else to q // 2, the unitary case.
    """
    q = image.q
    K = image.source_K if half_support is None else int(half_support)
    if K is None:
        if q % 2 != 0:
            raise GridMismatch(
                "image carries no source support and q is odd; pass "
                "half_support explicitly"
            )
        K = q // 2
    table = np.conj(_root_table(q))
    # g[i, m] = (1/q) sum_l Z[i, l] conj(W)^{l m} recovers f(i/q + m) for
    # m in [0, q); shifts outside wrap by periodicity of the kernel.
    g = image.values @ table[np.outer(np.arange(q), np.arange(q)) % q] / q
    rows = np.empty((2 * K, q), dtype=np.complex128)
    for k in range(-K, K):
        rows[k + K] = g[:, k % q].T
    samples = np.ascontiguousarray(rows.reshape(-1))
    return SampledWindow(
        kind="custom", h=1.0 / q, half_support=K, samples=samples
    )


_IDENTITIES = (
    "translation",
    "modulation",
    "modtrans",
    "quasiperiod_t",
    "period_omega",
)


def check_zak_identity(
    name: str,
    window: SampledWindow,
    q: Optional[int] = None,
    alpha: float = 0.25,
    beta: float = 0.5,
) -> float:
    """Max absolute error of one transform identity over the whole square.

    Names: "translation" (unit time shift becomes a column phase),
    "modulation" (unit frequency shift becomes a row phase), "modtrans"
    (joint shift by (beta, alpha) becomes a phase times a translate of
    the image), "quasiperiod_t" and "period_omega" (the two periodicity
    laws, which hold exactly by construction).
    """
    if name not in _IDENTITIES:
        raise ValueError(f"unknown identity {name!r}; choose from {_IDENTITIES}")
    q = window.q if q is None else int(q)
    base = zak_transform(window, q)
    table = _root_table(q)
    idx = np.arange(q)

    if name == "translation":
        lhs = zak_transform(apply_tf_shift(window, TFPoint(1, 0)), q).values
        rhs = base.values * table[idx][np.newaxis, :]
        return float(np.max(np.abs(lhs - rhs)))

    if name == "modulation":
        lhs = zak_transform(apply_tf_shift(window, TFPoint(0, 1)), q).values
        rhs = base.values * table[idx][:, np.newaxis]
        return float(np.max(np.abs(lhs - rhs)))

    if name == "modtrans":
        lhs = zak_transform(apply_tf_shift(window, TFPoint(beta, alpha)), q).values
        a_scaled = alpha * q
        b_scaled = beta * q
        on_grid = (
            abs(a_scaled - round(a_scaled)) <= _GRID_TOL
            and abs(b_scaled - round(b_scaled)) <= _GRID_TOL
        )
        if on_grid:
            a = int(round(a_scaled))
            b = int(round(b_scaled))
            conj_table = np.conj(table)
            i_shift = idx - b
            i0 = i_shift % q
            wraps = (i_shift - i0) // q
            l0 = (idx + a) % q
            wrap_phase = conj_table[(np.outer(wraps, l0)) % q]
            mod_phase = np.exp(-2j * np.pi * alpha * idx / q)
            rhs = mod_phase[:, np.newaxis] * wrap_phase * base.values[np.ix_(i0, l0)]
        else:
            if not window.analytic:
                raise GridMismatch(
                    "off-grid modtrans parameters need an analytic window"
                )
            K = window.half_support
            ks = np.arange(-K, K)
            t_shift = idx / q - beta
            w_shift = idx / q + alpha
            sampled = window.eval_truncated(
                t_shift[np.newaxis, :] + ks[:, np.newaxis]
            )
            kernel = np.exp(-2j * np.pi * np.outer(ks, w_shift))
            translate = sampled.T @ kernel
            mod_phase = np.exp(-2j * np.pi * alpha * idx / q)
            rhs = mod_phase[:, np.newaxis] * translate
        return float(np.max(np.abs(lhs - rhs)))

    if name == "quasiperiod_t":
        shifted = zak_transform(apply_tf_shift(window, TFPoint(1, 0)), q)
        conj_table = np.conj(table)
        worst = 0.0
        # scalar arithmetic on both sides: vectorized complex multiplies
        # may round differently (FMA), and this law must be exact
        for i in range(q):
            for l in range(q):
                lhs = shifted.at(i / q + 1.0, l / q)
                rhs = complex(conj_table[l] * shifted.values[i, l])
                worst = max(worst, abs(lhs - rhs))
        return worst

    # period_omega
    worst = 0.0
    for i in range(q):
        for l in range(q):
            lhs = base.at(i / q, l / q + 1.0)
            worst = max(worst, abs(lhs - complex(base.values[i, l])))
    return worst


def zak_equation_residual(
    image: ZakImage,
    poly,
    alpha: float,
    beta: float,
    points: Optional[Iterable[Tuple[int, int]]] = None,
) -> float:
    """Sup of |p(t, w) Z(t, w) - exp(-2 pi i alpha t) Z(t - beta, w + alpha)|.

    alpha and beta must sit on the image grid.  points, when given, is an
    iterable of (i, l) index pairs restricting the sup to those grid
    nodes; an orbit synthesised to satisfy the equation is zero off its
    own points, so restricting is how one checks it on-support.
    """
    from .torus import eval_p2  # local import; torus has no zak dependency

    q = image.q
    a = _grid_index(alpha, q, "alpha")
    b = _grid_index(beta, q, "beta")
    if points is None:
        ii, ll = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
        ii = ii.reshape(-1)
        ll = ll.reshape(-1)
    else:
        pts = np.asarray(list(points), dtype=np.int64)
        if pts.size == 0:
            return 0.0
        ii = pts[:, 0] % q
        ll = pts[:, 1] % q
    ts = ii / q
    ws = ll / q
    pv = eval_p2(poly, np.stack([ts, ws], axis=-1))
    lhs = pv * image.values[ii, ll]

    conj_table = np.conj(_root_table(q))
    i_shift = ii - b
    i0 = i_shift % q
    wraps = (i_shift - i0) // q
    l0 = (ll + a) % q
    wrap_phase = conj_table[(wraps * l0) % q]
    mod_phase = np.exp(-2j * np.pi * alpha * ts)
    rhs = mod_phase * wrap_phase * image.values[i0, l0]
    return float(np.max(np.abs(lhs - rhs)))


def zak_csv(image: ZakImage) -> str:
    """CSV dump, i outer then l, real and imaginary parts in full precision."""
    lines = ["i,l,re,im"]
    vals = image.values
    for i in range(image.q):
        row = vals[i]
        for l in range(image.q):
            z = row[l]
            lines.append(
                f"{i},{l},{format_float(z.real)},{format_float(z.imag)}"
            )
    return "\n".join(lines) + "\n"


def zak_pgm(image: ZakImage) -> str:
    """Magnitude heat map as plain (P2) PGM, 16-bit scale, row i per line."""
    return pgm_text(np.abs(image.values))
