"""Rotation dynamics on the 2-torus.

The step map sigma z = (z + gamma) mod 1 drives everything here: orbits,
log-domain products of a trigonometric polynomial along an orbit, the
magnitude recurrence |F(z + gamma)| = |p(z)| |F(z)|, recurrence and
equidistribution probes, and straight lines wound onto the square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .accum import compensated_cumsum
from .errors import ZeroDirection
from .fmt import format_float

_EPS = 1e-12


def _wrap01(x: float) -> float:
    r = x % 1.0
    return 0.0 if r >= 1.0 else r


@dataclass(frozen=True)
class TorusPoint:
    """A point of [0,1)^2; coordinates reduce mod 1 at construction."""

    t: float
    omega: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", _wrap01(float(self.t)))
        object.__setattr__(self, "omega", _wrap01(float(self.omega)))

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.omega])


@dataclass(frozen=True)
class TrigPolynomial2:
    """Finite sum  p(t, w) = sum_k c_k exp(-2 pi i (y_k t + x_k w)).

    Terms are (c, y, x) with nonzero c; no two terms may share a
    frequency pair (y, x).
    """

    terms: Tuple[Tuple[complex, float, float], ...]

    def __post_init__(self) -> None:
        terms = tuple(
            (complex(c), float(y), float(x)) for c, y, x in self.terms
        )
        if not terms:
            raise ValueError("polynomial needs at least one term")
        if any(c == 0 for c, _, _ in terms):
            raise ValueError("zero coefficients are not representable terms")
        freqs = [(y, x) for _, y, x in terms]
        if len(set(freqs)) != len(freqs):
            raise ValueError("duplicate frequency pair in terms")
        object.__setattr__(self, "terms", terms)
        cs = np.array([c for c, _, _ in terms], dtype=np.complex128)
        ys = np.array([y for _, y, _ in terms])
        xs = np.array([x for _, _, x in terms])
        for name, arr in (("_cs", cs), ("_ys", ys), ("_xs", xs)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def _coords(z) -> np.ndarray:
    if isinstance(z, TorusPoint):
        return z.as_array()
    arr = np.asarray(z, dtype=np.float64)
    if arr.shape[-1] != 2:
        raise ValueError("expected (t, omega) pairs in the last axis")
    return arr


def eval_p2(p: TrigPolynomial2, z) -> Union[complex, np.ndarray]:
    """Evaluate p at one point or an (..., 2) array of points."""
    pts = _coords(z)
    phase = (
        pts[..., 0, np.newaxis] * p._ys + pts[..., 1, np.newaxis] * p._xs
    )
    out = np.sum(p._cs * np.exp(-2j * np.pi * phase), axis=-1)
    if out.ndim == 0:
        return complex(out)
    return out


def sigma_step(z: TorusPoint, gamma: Sequence[float]) -> TorusPoint:
    return TorusPoint(z.t + gamma[0], z.omega + gamma[1])


def _orbit_array(z: TorusPoint, gamma: Sequence[float], n: int) -> np.ndarray:
    js = np.arange(n, dtype=np.float64)
    pts = z.as_array() + np.outer(js, np.asarray(gamma, dtype=np.float64))
    pts %= 1.0
    pts[pts >= 1.0] = 0.0
    return pts

def orbit(z: TorusPoint, gamma: Sequence[float], n: int) -> List[TorusPoint]:
    """[z, sigma z, ..., sigma^{n-1} z]."""
    if n < 1:
        raise ValueError("orbit length must be >= 1")
    pts = _orbit_array(z, gamma, n)
    return [TorusPoint(t, w) for t, w in pts]


@dataclass(frozen=True)
class OrbitProductLedger:
    """Running log-sums of |p| along an orbit.

    log_sums[n] = sum over j < n of ln|p(sigma^j z)|, skipping the
    indices in zero_hits where |p| fell below eps_zero.  Skipped factors
    are reported, never folded into the sum as -inf: a handful of zeros
    of p says nothing about the drift of the rest of the product.
    """

    gamma: Tuple[float, float]
    start: TorusPoint
    log_sums: np.ndarray
    zero_hits: Tuple[int, ...]
    eps_zero: float

    def __post_init__(self) -> None:
        arr = np.asarray(self.log_sums, dtype=np.float64).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "log_sums", arr)

    def to_csv(self) -> str:
        hits = set(self.zero_hits)
        lines = ["n,s_n,zero_hit_flag"]
        for n, s in enumerate(self.log_sums):
            lines.append(f"{n},{format_float(s)},{1 if n in hits else 0}")
        return "\n".join(lines) + "\n"


def orbit_log_product(
    p: TrigPolynomial2,
    z: TorusPoint,
    gamma: Sequence[float],
    n: int,
    eps_zero: float = 1e-14,
) -> OrbitProductLedger:
    if n < 1:
        raise ValueError("need at least one factor")
    if eps_zero <= 0:
        raise ValueError("eps_zero must be positive")
    mags = np.abs(eval_p2(p, _orbit_array(z, gamma, n)))
    mask = mags < eps_zero
    incs = np.zeros(n)
    incs[~mask] = np.log(mags[~mask])
    # compensated accumulation: drifts of order 1e-5 per step must
    # survive n = 1e6 additions
    sums = compensated_cumsum(incs)
    return OrbitProductLedger(
        gamma=(float(gamma[0]), float(gamma[1])),
        start=z,
        log_sums=sums,
        zero_hits=tuple(int(j) for j in np.nonzero(mask)[0]),
        eps_zero=float(eps_zero),
    )


def propagate_F(
    seed: float,
    p: TrigPolynomial2,
    gamma: Sequence[float],
    z: TorusPoint,
    n: int,
) -> np.ndarray:
    """Magnitudes |F| along the orbit from the recurrence
    |F(z + (j+1) gamma)| = |p(z + j gamma)| |F(z + j gamma)|, seeded at j=0.

    Runs the product directly, not through logs, so it is an independent
    route against exp(log_sums) * seed.  Zero factors of p propagate as
    genuine zeros here.
    """
    if seed <= 0:
        raise ValueError("seed must be positive")
    if n < 1:
        raise ValueError("need at least one step")
    mags = np.abs(eval_p2(p, _orbit_array(z, gamma, n)))
    out = np.empty(n + 1)
    out[0] = seed
    out[1:] = seed * np.cumprod(mags)
    return out


def recurrence_probe(
    z: TorusPoint,
    gamma: Sequence[float],
    eps: float,
    max_n: int,
) -> Optional[int]:
    """Smallest n in [1, max_n] with d(sigma^n z, z) < eps, else None.

    Distance is the max of per-coordinate wrap-around distances; it
    depends only on n * gamma mod 1, so the scan never touches z.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    g = np.asarray(gamma, dtype=np.float64)
    chunk = 1 << 16
    start = 1
    while start <= max_n:
        stop = min(max_n, start + chunk - 1)
        ns = np.arange(start, stop + 1, dtype=np.float64)
        r = np.outer(ns, g) % 1.0
        d = np.max(np.minimum(r, 1.0 - r), axis=1)
        hits = np.nonzero(d < eps)[0]
        if hits.size:
            return start + int(hits[0])
        start = stop + 1
    return None


def discrepancy(points, grid_res: int) -> float:
    """Star-discrepancy estimate over anchored boxes on a grid_res lattice.

    max over a, b in {1/R, ..., 1} of |fraction in [0,a) x [0,b) - a b|.
    """
    if grid_res < 2:
        raise ValueError("grid_res must be >= 2")
    if isinstance(points, np.ndarray):
        pts = points
    else:
        pts = np.asarray(
            [
                [q.t, q.omega] if isinstance(q, TorusPoint) else q
                for q in points
            ],
            dtype=np.float64,
        )
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
        raise ValueError("expected a nonempty sequence of torus points")
    counts, _, _ = np.histogram2d(
        pts[:, 0], pts[:, 1], bins=grid_res, range=[[0.0, 1.0], [0.0, 1.0]]
    )
    frac = counts.cumsum(axis=0).cumsum(axis=1) / pts.shape[0]
    edges = np.arange(1, grid_res + 1) / grid_res
    return float(np.max(np.abs(frac - np.outer(edges, edges))))


@dataclass(frozen=True)
class ToralLine:
    """A straight line wound onto the unit square.

    segments holds maximal straight pieces as ((t0, w0), (t1, w1)); a
    closed line is parameterized by s in [0, 1] along its integer
    winding vector, an open one by s in [0, param_end] along the raw
    direction.
    """

    anchor: TorusPoint
    direction: Tuple[float, float]
    closed: bool
    winding: Optional[Tuple[int, int]]
    segments: Tuple[Tuple[Tuple[float, float], Tuple[float, float]], ...]
    param_end: float

    def sample_points(self, n: int) -> np.ndarray:
        """n points at equally spaced parameters; a closed loop omits the
        duplicate endpoint, an open arc keeps both ends."""
        if n < 1:
            raise ValueError("need at least one sample")
        if self.closed:
            s = np.linspace(0.0, 1.0, n, endpoint=False)
            step = np.asarray(self.winding, dtype=np.float64)
        else:
            s = np.linspace(0.0, self.param_end, n, endpoint=True)
            step = np.asarray(self.direction, dtype=np.float64)
        pts = self.anchor.as_array() + np.outer(s, step)
        pts %= 1.0
        pts[pts >= 1.0] = 0.0
        return pts

    def to_csv(self) -> str:
        lines = ["segment_index,t0,omega0,t1,omega1"]
        for i, ((t0, w0), (t1, w1)) in enumerate(self.segments):
            lines.append(
                f"{i},{format_float(t0)},{format_float(w0)},"
                f"{format_float(t1)},{format_float(w1)}"
            )
        return "\n".join(lines) + "\n"


def _snap(x: float) -> float:
    for v in (0.0, 1.0):
        if abs(x - v) <= 1e-9:
            return v
    return x


def _closed_segments(
    at: float, aw: float, u: int, v: int
) -> Tuple[Tuple[Tuple[float, float], Tuple[float, float]], ...]:
    breaks = [0.0, 1.0]
    for a0, d in ((at, u), (aw, v)):
        if d == 0:
            continue
        lo, hi = sorted((a0, a0 + d))
        for m in range(math.floor(lo), math.ceil(hi) + 1):
            s = (m - a0) / d
            if _EPS < s < 1.0 - _EPS:
                breaks.append(s)
    breaks.sort()
    merged = [breaks[0]]
    for s in breaks[1:]:
        if s - merged[-1] > _EPS:
            merged.append(s)
    segs = []
    for s0, s1 in zip(merged[:-1], merged[1:]):
        mid = 0.5 * (s0 + s1)
        ct = math.floor(at + mid * u)
        cw = math.floor(aw + mid * v)
        p0 = (_snap(at + s0 * u - ct), _snap(aw + s0 * v - cw))
        p1 = (_snap(at + s1 * u - ct), _snap(aw + s1 * v - cw))
        segs.append((p0, p1))
    return tuple(segs)


def _open_segments(
    at: float, aw: float, g1: float, g2: float, max_segments: int
) -> Tuple[Tuple[Tuple[Tuple[float, float], Tuple[float, float]], ...], float]:
    pos = [at, aw]
    d = (g1, g2)
    segs = []
    s_total = 0.0
    while len(segs) < max_segments:
        for c in range(2):
            # representative on the far wall when departing through it
            if d[c] < 0 and pos[c] <= _EPS:
                pos[c] = 1.0
            elif d[c] > 0 and pos[c] >= 1.0 - _EPS:
                pos[c] = 0.0
        rooms = []
        for c in range(2):
            if d[c] > 0:
                rooms.append((1.0 - pos[c]) / d[c])
            elif d[c] < 0:
                rooms.append(pos[c] / -d[c])
            else:
                rooms.append(math.inf)
        step = min(rooms)
        end = [pos[c] + step * d[c] for c in range(2)]
        for c in range(2):
            if rooms[c] == step:
                end[c] = 1.0 if d[c] > 0 else 0.0
            else:
                end[c] = _snap(end[c])
        segs.append(((pos[0], pos[1]), (end[0], end[1])))
        s_total += step
        pos = [e % 1.0 for e in end]
    return tuple(segs), s_total


def toral_line(
    anchor: TorusPoint,
    gamma: Sequence[float],
    max_segments: int = 64,
) -> ToralLine:
    """Wind the line through anchor with direction gamma onto the square.

    A direction proportional to an integer vector closes up; the test is
    whether the slope ratio carries a rational dependence at denominator
    up to 1e4, decided by the relation detector, not by float guessing.
    Otherwise the first max_segments pieces are produced.
    """
    from .relations import detect_relations

    g1, g2 = float(gamma[0]), float(gamma[1])
    if g1 == 0.0 and g2 == 0.0:
        raise ZeroDirection("line direction must be nonzero")
    if max_segments < 1:
        raise ValueError("max_segments must be >= 1")

    winding: Optional[Tuple[int, int]] = None
    if g1 == 0.0:
        winding = (0, 1 if g2 > 0 else -1)
    elif g2 == 0.0:
        winding = (1 if g1 > 0 else -1, 0)
    else:
        rb = detect_relations([g2 / g1], max_den=10_000, tol=1e-9)
        if rb.relations:
            ratio = rb.relations[0].u  # g2/g1 = ratio exactly (to tol)
            sgn = 1 if g1 > 0 else -1
            winding = (sgn * ratio.denominator, sgn * ratio.numerator)

    if winding is not None:
        segs = _closed_segments(anchor.t, anchor.omega, *winding)
        return ToralLine(
            anchor=anchor,
            direction=(g1, g2),
            closed=True,
            winding=winding,
            segments=segs,
            param_end=1.0,
        )
    segs, s_total = _open_segments(anchor.t, anchor.omega, g1, g2, max_segments)
    return ToralLine(
        anchor=anchor,
        direction=(g1, g2),
        closed=False,
        winding=None,
        segments=segs,
        param_end=s_total,
    )


def p_constancy_on_line(
    p: TrigPolynomial2, line: ToralLine, samples: int
) -> Tuple[float, float]:
    """(max |p| - min |p|, mean |p|) over equally spaced line parameters.

    A measurement, not an assertion: |p| is constant along the line
    exactly when every frequency pair is orthogonal to the direction
    modulo the integer lattice, and the caller gets the observed spread
    either way.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    mags = np.abs(eval_p2(p, line.sample_points(samples)))
    return float(mags.max() - mags.min()), float(mags.mean())
