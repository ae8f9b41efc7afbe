import random
from fractions import Fraction as F

import pytest

from obsdiam import (
    ContractError,
    DiscreteMeasure,
    DomainError,
    PiecewiseLinearMap,
    anchor_sequence,
    build_compression,
    clamp_construct,
    partial_diameter,
    push_forward,
)
from obsdiam.randgen import random_alpha, random_measure


def _normalized(mu, alpha):
    """Rescale so the partial diameter is exactly 1 (requires pd > 0)."""
    r = partial_diameter(mu, alpha).value
    assert r > 0
    return push_forward(mu, PiecewiseLinearMap.affine(F(1) / r, 0))


# -- anchor walk --------------------------------------------------------------------


def test_anchors_uniform_four():
    seq = anchor_sequence(DiscreteMeasure.uniform([0, 1, 2, 3]), F(3, 10))
    assert seq.x_infinity == 2
    assert seq.anchors == (F(1), F(2))
    assert seq.region == ((F(0), F(3)),)
    assert seq.count == 2


def test_anchors_two_points():
    seq = anchor_sequence(DiscreteMeasure.uniform([0, 1]), F(3, 5))
    assert seq.x_infinity == 0
    assert seq.anchors == (F(0),)
    assert seq.region == ((F(-1), F(1)),)


def test_anchors_touching_balls_stay_separate():
    # consecutive anchors exactly 2 apart: the two unit balls share only the
    # boundary point, which carries no length
    seq = anchor_sequence(DiscreteMeasure.uniform([-1, 0, 1, 2, 3]), F(2, 5))
    assert seq.anchors == (F(0), F(2))
    assert seq.region == ((F(-1), F(1)), (F(1), F(3)))


def test_anchors_with_gap():
    seq = anchor_sequence(DiscreteMeasure.uniform([0, 1, 4, 5]), F(2, 5))
    assert seq.x_infinity == 4
    assert seq.anchors == (F(1), F(4))
    assert seq.region == ((F(0), F(2)), (F(3), F(5)))


def test_anchor_requires_unit_pd():
    mu = DiscreteMeasure.uniform([0, 2, 4, 6])  # pd at 3/10 is 2, not 1
    with pytest.raises(ContractError) as err:
        anchor_sequence(mu, F(3, 10))
    assert "2" in str(err.value)


def test_anchor_alpha_domain():
    mu = _normalized(DiscreteMeasure.uniform([0, 1, 2, 3]), F(3, 10))
    for bad in (0, 1, F(7, 5)):
        with pytest.raises(DomainError):
            anchor_sequence(mu, bad)


def test_anchor_count_and_gap_properties():
    rng = random.Random(5150)
    checked = 0
    while checked < 200:
        alpha = random_alpha(rng)
        mu = random_measure(rng, max_atoms=10)
        if partial_diameter(mu, alpha).value == 0:
            continue
        seq = anchor_sequence(_normalized(mu, alpha), alpha)
        assert seq.count * alpha <= 1
        for a, b in zip(seq.anchors, seq.anchors[1:]):
            assert min(seq.x_infinity, a + 1) <= b
        checked += 1


# -- compression map ----------------------------------------------------------------


def test_compression_map_uniform_four():
    f = build_compression(DiscreteMeasure.uniform([0, 1, 2, 3]), F(3, 10))
    assert f == PiecewiseLinearMap([(0, -2), (3, 1)], 0, 0)


def test_compression_map_merges_touching_stretch():
    # the two touching balls integrate to one straight slope-1 stretch
    f = build_compression(DiscreteMeasure.uniform([-1, 0, 1, 2, 3]), F(2, 5))
    assert f == PiecewiseLinearMap([(-1, -2), (3, 2)], 0, 0)


def test_compression_map_flat_over_gap():
    f = build_compression(DiscreteMeasure.uniform([0, 1, 4, 5]), F(2, 5))
    assert f == PiecewiseLinearMap([(0, -2), (2, 0), (3, 0), (5, 2)], 0, 0)
    assert f(F(5, 2)) == 0  # constant across the dead zone


def test_compression_image_has_unit_pd():
    """The whole point of the construction: squeezing cannot push the
    alpha-level width below 1."""
    rng = random.Random(60902)
    checked = 0
    while checked < 150:
        alpha = random_alpha(rng)
        mu = random_measure(rng, max_atoms=10)
        if partial_diameter(mu, alpha).value == 0:
            continue
        unit = _normalized(mu, alpha)
        f = build_compression(unit, alpha)
        assert f.is_one_lipschitz()
        lo, hi = f.bounds()
        assert lo is not None and hi is not None
        assert -1 / alpha <= lo and hi <= 1 / alpha
        assert partial_diameter(push_forward(unit, f), alpha).value == 1
        checked += 1


def test_no_short_window_reaches_alpha_after_compression():
    """Every window strictly narrower than 1 must stay under the mass level
    in the compressed image, whichever regime it falls in: inside a ball,
    spanning a gap, or hanging off either end."""
    mu = _normalized(DiscreteMeasure.uniform([0, 1, 4, 5]), F(2, 5))
    image = push_forward(mu, build_compression(mu, F(2, 5)))
    eps = F(1, 1000)
    starts = [p for p, _ in image.atoms] + [p - 1 + eps for p, _ in image.atoms]
    for lo in starts:
        assert image.mass_of_interval(lo, lo + 1 - eps) < F(2, 5)


# -- clamping construction ------------------------------------------------------------


def test_clamp_caps_wide_measure():
    mu = DiscreteMeasure.uniform([0, 2, 4, 6])
    f = clamp_construct(mu, F(3, 10), 1)
    assert partial_diameter(push_forward(mu, f), F(3, 10)).value == 1


def test_clamp_keeps_narrow_measure():
    mu = DiscreteMeasure.uniform([0, 2, 4, 6])
    f = clamp_construct(mu, F(3, 10), 10)
    assert partial_diameter(push_forward(mu, f), F(3, 10)).value == 2


def test_clamp_degenerate_measure_gives_constant_zero():
    f = clamp_construct(DiscreteMeasure.point_mass(42), F(1, 2), 3)
    assert f == PiecewiseLinearMap.constant(0)
    # heavy single atom, same degeneracy
    mu = DiscreteMeasure([(0, F(3, 4)), (5, F(1, 4))])
    assert clamp_construct(mu, F(1, 2), 3) == PiecewiseLinearMap.constant(0)


def test_clamp_rejects_bad_radius():
    mu = DiscreteMeasure.uniform([0, 1])
    with pytest.raises(DomainError):
        clamp_construct(mu, F(1, 2), 0)
    with pytest.raises(DomainError):
        clamp_construct(mu, F(1, 2), F(-1, 2))


def test_clamp_full_contract_random():
    rng = random.Random(314159)
    for _ in range(150):
        mu = random_measure(rng)
        alpha = random_alpha(rng)
        radius = rng.choice([F(1, 2), F(1), F(10)])
        f = clamp_construct(mu, alpha, radius)
        assert f.is_one_lipschitz()
        lo, hi = f.bounds()
        limit = radius / alpha
        assert lo is not None and -limit <= lo
        assert hi is not None and hi <= limit
        want = min(radius, partial_diameter(mu, alpha).value)
        assert partial_diameter(push_forward(mu, f), alpha).value == want
