"""Window construction on the uniform grid."""

import math

import mpmath
import numpy as np
import pytest

from hrtlab import BadStep, custom_window, make_window


def test_grid_layout():
    w = make_window("gaussian", 1 / 64, 8)
    assert w.q == 64
    assert w.samples.shape == (2 * 8 * 64,)
    t = w.times()
    assert t[0] == -8.0
    assert t[-1] == 8.0 - 1 / 64
    assert np.all(np.diff(t) > 0)


def test_bad_steps_rejected():
    for h in (0.0, -0.25, 0.3, 1 / 64 + 1e-6):
        with pytest.raises(BadStep):
            make_window("gaussian", h, 4)
    with pytest.raises(BadStep):
        make_window("gaussian", 1 / 64, 0)


def test_unknown_kind():
    with pytest.raises(ValueError):
        make_window("triangle", 1 / 64, 4)


def test_gaussian_unit_norm_and_symmetry():
    w = make_window("gaussian", 1 / 64, 8)
    assert w.norm == pytest.approx(1.0, abs=1e-12)
    s = w.samples
    # even function: sample at -t equals sample at t (grid is [-K, K), so
    # skip the unmatched leftmost sample)
    assert np.allclose(s[1:], s[1:][::-1], atol=1e-15)
    assert w.samples[len(s) // 2] == pytest.approx(2 ** 0.25)


def test_box_is_indicator_of_unit_interval():
    w = make_window("box", 1 / 64, 2)
    t = w.times()
    expect = ((t >= 0) & (t < 1)).astype(complex)
    assert np.array_equal(w.samples, expect)


def test_two_sided_exponential_values():
    w = make_window("two-sided-exponential", 1 / 32, 4)
    t = w.times()
    assert np.allclose(w.samples, np.exp(-np.abs(t)), atol=1e-15)


@pytest.mark.parametrize("order", [0, 1, 2, 3, 5])
def test_hermite_matches_quadrature_oracle(order):
    # Independent check with mpmath: the sampled values must agree with
    # 2^(1/4)/sqrt(2^n n!) H_n(sqrt(2 pi) t) e^(-pi t^2) pointwise, and that
    # function must carry unit L2 mass.
    w = make_window(f"hermite-{order}", 1 / 16, 6)
    scale = mpmath.mpf(2) ** mpmath.mpf("0.25") / mpmath.sqrt(
        2 ** order * mpmath.factorial(order))

    def f(t):
        u = mpmath.sqrt(2 * mpmath.pi) * t
        return scale * mpmath.hermite(order, u) * mpmath.exp(
            -mpmath.pi * t ** 2)

    for j in (0, 17, 96, 191):
        t = w.times()[j]
        assert w.samples[j].real == pytest.approx(float(f(t)), abs=1e-12)
        assert w.samples[j].imag == 0.0
    mass = mpmath.quad(lambda t: f(t) ** 2, [-mpmath.inf, mpmath.inf])
    assert float(mass) == pytest.approx(1.0, abs=1e-12)


def test_hermite_zero_is_gaussian():
    g = make_window("gaussian", 1 / 32, 4)
    h0 = make_window("hermite-0", 1 / 32, 4)
    assert np.allclose(g.samples, h0.samples, atol=1e-15)


def test_custom_window_wraps_and_freezes():
    vals = np.arange(16, dtype=complex)
    w = custom_window(vals, 1 / 2, 4)
    assert w.kind == "custom"
    assert not w.analytic
    with pytest.raises(ValueError):
        w.samples[0] = 5.0
    with pytest.raises(ValueError):
        w.eval_truncated(np.array([0.0]))


def test_zero_window_rejected():
    with pytest.raises(ValueError):
        custom_window(np.zeros(16), 1 / 2, 4)


def test_sample_count_must_match_grid():
    with pytest.raises(ValueError):
        custom_window(np.ones(15), 1 / 2, 4)


def test_nonfinite_samples_rejected():
    vals = np.ones(16, dtype=complex)
    vals[3] = np.nan
    with pytest.raises(ValueError):
        custom_window(vals, 1 / 2, 4)


def test_eval_truncated_vanishes_outside_support():
    w = make_window("gaussian", 1 / 8, 2)
    out = w.eval_truncated(np.array([-2.5, -2.0, 0.0, 1.99, 2.0]))
    assert out[0] == 0
    assert out[1] != 0  # left endpoint included
    assert out[3] != 0
    assert out[4] == 0  # right endpoint excluded
    assert out[2] == pytest.approx(2 ** 0.25)


def test_norm_definition():
    w = make_window("box", 1 / 4, 2)
    # four samples of 1 inside [0,1) at h = 1/4: norm^2 = h * 4 = 1
    assert w.norm == pytest.approx(1.0)
