import numpy as np
from hypothesis import given, strategies as st

from hrtlab import compensated_cumsum, compensated_sum


def test_cumsum_matches_exact_on_adversarial_scales():
    # 1 followed by many tiny terms: plain float cumsum loses them, the
    # compensated version keeps the full correction.  Prefix convention:
    # out[0] = 0, out[j] = sum of the first j increments.
    inc = np.array([1.0] + [1e-16] * 1000)
    out = compensated_cumsum(inc)
    assert out[-1] == 1.0 + 1000e-16
    assert out.shape == (inc.size + 1,)
    assert out[0] == 0.0
    assert out[1] == 1.0


def test_sum_agrees_with_math_fsum(rng):
    import math
    vals = rng.standard_normal(4096) * np.logspace(-12, 12, 4096)
    assert compensated_sum(vals) == math.fsum(vals)


@given(st.lists(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
                min_size=1, max_size=200))
def test_cumsum_prefixes_are_exact(xs):
    import math
    inc = np.asarray(xs, dtype=float)
    out = compensated_cumsum(inc)
    for k in (1, len(xs) // 2 + 1, len(xs)):
        assert abs(out[k] - math.fsum(xs[:k])) <= 1e-9 * max(
            1.0, abs(math.fsum(xs[:k])))


def test_empty_cumsum_is_single_zero():
    out = compensated_cumsum(np.array([]))
    assert out.shape == (1,)
    assert out[0] == 0.0
