"""Configuration classification and canonical normalization."""

import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hrtlab import (
    AffineSymplecticMap,
    CoefficientVector,
    ConfigLabel,
    Configuration,
    DuplicatePoints,
    TFPoint,
    classify_configuration,
    configuration_to_jsonable,
    normalize_configuration,
    parse_configuration,
)


def cfg(*pts, distinguished=None):
    return Configuration(tuple(TFPoint(x, y) for x, y in pts),
                         distinguished=distinguished)


def test_duplicate_points_rejected():
    with pytest.raises(DuplicatePoints):
        cfg((0, 0), (1, 0), (0, 0))


def test_nonfinite_coordinates_rejected():
    with pytest.raises(ValueError):
        TFPoint(float("nan"), 0.0)
    with pytest.raises(ValueError):
        TFPoint(0.0, float("inf"))


def test_label_lattice():
    cc = classify_configuration(cfg((0, 0), (0, 1), (1, 0), (1, 1)))
    assert cc.label is ConfigLabel.LATTICE
    assert cc.describe() == "Lattice"
    assert cc.off_index is None


def test_lattice_beats_collinear():
    # Four integer points on one line: every label's condition holds, the
    # priority order keeps the strongest.
    cc = classify_configuration(cfg((0, 0), (1, 0), (2, 0), (3, 0)))
    assert cc.label is ConfigLabel.LATTICE


def test_label_one_off_lattice():
    r2, r3 = 2 ** 0.5, 3 ** 0.5
    cc = classify_configuration(cfg((0, 0), (0, 1), (1, 0), (r2, r3)))
    assert cc.label is ConfigLabel.ONE_Z2
    assert cc.off_index == 3
    assert cc.describe() == "OneZ2 off=3"


def test_one_off_lattice_beats_collinear_plus_one():
    # Integer collinear triple plus one generic point is OneZ2, not
    # Collinear1N: the lattice-based shape wins the tie.
    cc = classify_configuration(cfg((0, 0), (1, 0), (2, 0), (0.5, 2 ** 0.5)))
    assert cc.label is ConfigLabel.ONE_Z2
    assert cc.off_index == 3


def test_label_collinear_one_off():
    cc = classify_configuration(cfg((0, 0), (0.5, 0), (1.5, 0), (1 / 3, 1)))
    assert cc.label is ConfigLabel.COLLINEAR_1N
    assert cc.off_index == 3
    a, b, c = cc.line
    # carrier line is y = 0
    for x, y in [(0, 0), (0.5, 0), (1.5, 0)]:
        assert a * x + b * y == pytest.approx(c, abs=1e-12)
    assert a * (1 / 3) + b * 1 != pytest.approx(c, abs=1e-3)


def test_label_fully_collinear():
    cc = classify_configuration(cfg((0, 0), (0.5, 0), (1.5, 0), (2.5, 0)))
    assert cc.label is ConfigLabel.COLLINEAR_1N
    assert cc.fully_collinear
    assert cc.describe() == "Collinear1N fully-collinear"


def test_label_two_two():
    r2 = 2 ** 0.5
    cc = classify_configuration(cfg((0, 0), (0.5, 0), (0, r2), (0.5, r2)))
    assert cc.label is ConfigLabel.TWO_TWO
    assert cc.describe() == "TwoTwo"


def test_label_general():
    cc = classify_configuration(cfg((0, 0), (0.3, 1), (1, 0.7), (0.77, 0.13)))
    assert cc.label is ConfigLabel.GENERAL


def test_exact_coordinates_classify_exactly():
    # 1e-10 off the lattice is inside the float tolerance, but the exact
    # grammar keeps sqrt(2)/10^10 symbolic and the point stays off-lattice.
    near = parse_configuration(
        [[0, 0], [0, 1], [1, 0], [1 + 1e-10, 1]])
    assert classify_configuration(near).label is ConfigLabel.LATTICE
    exact = parse_configuration(
        [[0, 0], [0, 1], [1, 0], ["1 + 1/10000000000*sqrt(2)", 1]])
    assert classify_configuration(exact).label is ConfigLabel.ONE_Z2


@given(st.permutations(list(range(4))))
def test_classification_invariant_under_relabeling(perm):
    pts = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (2 ** 0.5, 3 ** 0.5)]
    base = classify_configuration(cfg(*pts))
    shuffled = classify_configuration(cfg(*(pts[i] for i in perm)))
    assert shuffled.label is base.label
    assert perm[shuffled.off_index] == 3


def test_parse_accepts_object_list_and_text():
    want = cfg((0.0, 0.0), (1.0, 0.5))
    assert parse_configuration([[0, 0], [1, 0.5]]) == want
    assert parse_configuration({"points": [[0, 0], [1, 0.5]]}) == want
    assert parse_configuration('{"points": [[0, 0], [1, 0.5]]}') == want
    tagged = parse_configuration(
        {"points": [[0, 0], [1, 0.5]], "distinguished": 1})
    assert tagged.distinguished == 1
    with pytest.raises(ValueError):
        parse_configuration({"nope": []})
    with pytest.raises(ValueError):
        parse_configuration([[0, 0, 0]])


def test_jsonable_round_trip_keeps_exact_text():
    src = [[0, 0], ["1/3", "sqrt(2)"], [0.25, 1]]
    c = parse_configuration(src)
    data = configuration_to_jsonable(c)
    again = parse_configuration(json.loads(json.dumps(data)))
    assert again == c
    assert data["points"][1] == ["1/3", "sqrt(2)"]


def test_normalization_restores_canonical_triple(rng):
    # Push the canonical configuration through a random area-preserving
    # affine map; normalization must bring the first three points back.
    for _ in range(10):
        a = rng.standard_normal((2, 2))
        det = np.linalg.det(a)
        if abs(det) < 0.1:
            continue
        a /= np.sqrt(abs(det))
        if np.linalg.det(a) < 0:
            a[1] *= -1.0
        shift = rng.standard_normal(2)
        fmap = AffineSymplecticMap(
            ((a[0, 0], a[0, 1]), (a[1, 0], a[1, 1])),
            (shift[0], shift[1]))
        pts = [(0, 0), (0, 1), (1, 0), (0.3, 0.8)]
        moved = Configuration(tuple(
            fmap.apply_point(TFPoint(float(x), float(y))) for x, y in pts))
        back, used = normalize_configuration(moved)
        arr = np.array([(p.xf, p.yf) for p in back.points])
        assert np.allclose(arr[:3], [(0, 0), (0, 1), (1, 0)], atol=1e-9)
        # the returned map really is the one that was applied
        rt = [used.apply_point(p) for p in moved.points]
        assert np.allclose([(p.xf, p.yf) for p in rt], arr, atol=1e-9)


def test_normalization_inverse_round_trip():
    fmap = AffineSymplecticMap(((2.0, 1.0), (1.0, 1.0)), (0.3, -0.7))
    inv = fmap.inverse()
    p = TFPoint(0.123, -4.5)
    q = inv.apply_point(fmap.apply_point(p))
    assert q.xf == pytest.approx(p.xf, abs=1e-12)
    assert q.yf == pytest.approx(p.yf, abs=1e-12)


def test_coefficient_vector_basics():
    v = CoefficientVector((1 + 0j, 0.5j, -2))
    assert len(v) == 3
