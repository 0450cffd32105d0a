"""The discrete transform to the fundamental square and its identities."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hrtlab import (
    GridMismatch,
    TrigPolynomial2,
    ZakImage,
    check_zak_identity,
    custom_window,
    inverse_zak,
    make_window,
    zak_csv,
    zak_equation_residual,
    zak_pgm,
    zak_transform,
)
from hrtlab.torus import eval_p2
from hrtlab.zak import _root_table


@pytest.fixture(scope="module")
def gauss():
    return make_window("gaussian", 1 / 64, 8)


@pytest.fixture(scope="module")
def box():
    return make_window("box", 1 / 64, 2)


def test_image_layout_and_at(gauss):
    z = zak_transform(gauss)
    assert z.q == 64
    assert z.values.shape == (64, 64)
    assert z.source_K == 8
    assert z.at(3 / 64, 5 / 64) == z.values[3, 5]
    with pytest.raises(GridMismatch):
        z.at(0.013, 0.0)
    with pytest.raises(ValueError):
        z.values[0, 0] = 1.0  # read-only


def test_at_periodicity_is_bit_exact(gauss):
    z = zak_transform(gauss)
    table = np.conj(_root_table(64))
    for (i, l) in [(0, 0), (5, 11), (63, 63), (17, 40)]:
        # one period right in t: phase factor exp(2 pi i omega)
        assert z.at(i / 64 + 1.0, l / 64) == complex(table[l] * z.values[i, l])
        # one period up in omega: nothing
        assert z.at(i / 64, l / 64 + 1.0) == z.values[i, l]
        # negative t wrap pulls the reflected table entry
        assert z.at(i / 64 - 1.0, l / 64) == complex(
            table[(-l) % 64] * z.values[i, l])


@pytest.mark.parametrize("name,bound", [
    ("translation", 1e-8),
    ("modulation", 1e-8),
    ("modtrans", 1e-8),
])
def test_float_identities_small(gauss, box, name, bound):
    for w in (lambda: gauss, lambda: box):
        assert check_zak_identity(name, w()) <= bound


@pytest.mark.parametrize("name", ["quasiperiod_t", "period_omega"])
def test_periodicity_identities_exactly_zero(gauss, box, name):
    # these two laws are table lookups on both sides; the error must be the
    # literal float zero, not merely small
    assert check_zak_identity(name, gauss) == 0.0
    assert check_zak_identity(name, box) == 0.0


def test_unknown_identity_name(gauss):
    with pytest.raises(ValueError):
        check_zak_identity("besselness", gauss)


def test_modtrans_off_grid_needs_generator(gauss):
    # alpha irrational: fine for the analytic window, GridMismatch for a
    # sample-only copy
    err = check_zak_identity("modtrans", gauss, alpha=2 ** -0.5, beta=0.25)
    assert err <= 1e-8
    plain = custom_window(gauss.samples, gauss.h, gauss.half_support)
    with pytest.raises(GridMismatch):
        check_zak_identity("modtrans", plain, alpha=2 ** -0.5, beta=0.25)


def test_unitarity_for_named_windows(gauss, box):
    assert zak_transform(gauss).parseval_defect() <= 1e-9
    assert zak_transform(box).parseval_defect() <= 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2 ** 31 - 1))
def test_unitarity_random_windows(K, seed):
    # mean square over the fundamental square equals h * sum |f|^2 whenever
    # the support fits one period (2K <= q = 16 here)
    rng = np.random.default_rng(seed)
    n = 2 * K * 16
    samples = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = custom_window(samples, 1 / 16, K)
    assert zak_transform(w).parseval_defect() <= 1e-12


def test_round_trip_through_inverse(gauss, rng):
    back = inverse_zak(zak_transform(gauss))
    assert back.half_support == 8
    assert back.q == 64
    assert np.max(np.abs(back.samples - gauss.samples)) <= 1e-12
    # random windows round-trip too
    samples = rng.standard_normal(2 * 3 * 16) + 1j * rng.standard_normal(2 * 3 * 16)
    w = custom_window(samples, 1 / 16, 3)
    back2 = inverse_zak(zak_transform(w))
    assert np.max(np.abs(back2.samples - w.samples)) <= 1e-12


def test_inverse_without_source_support():
    q = 8
    vals = np.ones((q, q), dtype=complex)
    img = ZakImage(q=q, values=vals, source_norm=1.0)
    w = inverse_zak(img)
    assert w.half_support == q // 2
    odd = ZakImage(q=7, values=np.ones((7, 7), dtype=complex), source_norm=1.0)
    with pytest.raises(GridMismatch):
        inverse_zak(odd)


def test_transform_resamples_analytic_only(gauss):
    z = zak_transform(gauss, q=32)
    assert z.q == 32
    plain = custom_window(gauss.samples, gauss.h, gauss.half_support)
    with pytest.raises(GridMismatch):
        zak_transform(plain, q=32)


def test_image_shape_validated():
    with pytest.raises(GridMismatch):
        ZakImage(q=4, values=np.zeros((4, 5), dtype=complex), source_norm=1.0)


def test_csv_format(box):
    z = zak_transform(box)
    text = zak_csv(z)
    lines = text.splitlines()
    assert lines[0] == "i,l,re,im"
    assert len(lines) == 1 + 64 * 64
    i, l, re, im = lines[1].split(",")
    assert (i, l) == ("0", "0")
    assert float(re) == z.values[0, 0].real
    assert float(im) == z.values[0, 0].imag
    # second row advances l, not i
    assert lines[2].split(",")[:2] == ["0", "1"]
    assert text.endswith("\n")


def test_pgm_format(box):
    z = zak_transform(box)
    lines = zak_pgm(z).splitlines()
    assert lines[0] == "P2"
    assert lines[1] == "64 64"
    assert lines[2] == "65535"
    grid = np.array([[int(v) for v in row.split()] for row in lines[3:]])
    assert grid.shape == (64, 64)
    assert grid.max() == 65535
    assert grid.min() >= 0


def _synthesized_orbit(q=64, a=5, b=3, steps=40):
    """Build image values satisfying the multiplier equation along one
    rational orbit, by solving the recurrence for the stored values through
    the same wrap conventions the residual uses."""
    alpha, beta = a / q, b / q
    p = TrigPolynomial2(((1 + 0j, 0.0, 0.0), (0.3 + 0j, 0.0, 1.0)))
    conj_table = np.conj(_root_table(q))
    vals = np.zeros((q, q), dtype=complex)
    i, l = 7, 11
    vals[i, l] = 0.8 + 0.2j
    pts = [(i, l)]
    for _ in range(steps - 1):
        t = i / q
        pv = eval_p2(p, (t, l / q))
        i_shift = i - b
        i0 = i_shift % q
        wraps = (i_shift - i0) // q
        l0 = (l + a) % q
        wrap_phase = conj_table[(wraps * l0) % q]
        mod_phase = np.exp(-2j * np.pi * alpha * t)
        vals[i0, l0] = pv * vals[i, l] / (mod_phase * wrap_phase)
        i, l = i0, l0
        pts.append((i, l))
    img = ZakImage(q=q, values=vals,
                   source_norm=float(np.sqrt(np.mean(np.abs(vals) ** 2))))
    return img, p, alpha, beta, pts


def test_equation_residual_on_synthesized_orbit():
    img, p, alpha, beta, pts = _synthesized_orbit()
    assert len(set(pts)) == len(pts)
    res = zak_equation_residual(img, p, alpha, beta, points=pts[:-1])
    assert res <= 1e-9
    # off the synthesized support the equation fails by construction, so an
    # unrestricted sup must be large; this guards against the restriction
    # being ignored
    assert zak_equation_residual(img, p, alpha, beta) > 0.1


def test_equation_residual_edge_cases(gauss):
    img, p, alpha, beta, pts = _synthesized_orbit()
    assert zak_equation_residual(img, p, alpha, beta, points=[]) == 0.0
    with pytest.raises(GridMismatch):
        zak_equation_residual(img, p, 1 / 3, beta)
