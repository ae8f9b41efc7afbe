import random
from fractions import Fraction as F

import pytest
from conftest import heavy_subsets_bruteforce

from obsdiam import (
    FULL_LINE,
    DiscreteMeasure,
    DomainError,
    FiniteMMSpace,
    Interval,
    LipschitzWitness,
    ResourceCapError,
    ValidationError,
    heavy_minimal_subsets,
    parse_screen,
    screen_to_str,
)
from obsdiam.randgen import random_alpha, random_space


# -- construction -------------------------------------------------------------------


def test_line_space_basics():
    sp = FiniteMMSpace.line_space([1, 2, 3, 4])
    assert sp.labels == ("p0", "p1", "p2", "p3")
    assert sp.masses == (F(1, 4),) * 4
    assert sp.dist(0, 3) == 3
    assert sp.diameter == 3


def test_line_space_rejects_duplicates():
    with pytest.raises(ValidationError):
        FiniteMMSpace.line_space([0, 1, 1])


def test_triangle_violation_is_named():
    dist = ((0, 1, 5), (1, 0, 1), (5, 1, 0))
    with pytest.raises(ValidationError) as err:
        FiniteMMSpace(["a", "b", "c"], dist, [F(1, 3)] * 3)
    msg = str(err.value)
    assert "triangle" in msg
    assert "a" in msg and "c" in msg


def test_symmetry_and_diagonal_checks():
    with pytest.raises(ValidationError):
        FiniteMMSpace(["a", "b"], ((0, 1), (2, 0)), [F(1, 2)] * 2)
    with pytest.raises(ValidationError):
        FiniteMMSpace(["a", "b"], ((1, 1), (1, 0)), [F(1, 2)] * 2)
    with pytest.raises(ValidationError):
        FiniteMMSpace(["a", "b"], ((0, 0), (0, 0)), [F(1, 2)] * 2)


def test_masses_validated():
    with pytest.raises(ValidationError):
        FiniteMMSpace(["a", "b"], ((0, 1), (1, 0)), [F(1, 2), F(1, 3)])
    with pytest.raises(ValidationError):
        FiniteMMSpace(["a", "b"], ((0, 1), (1, 0)), [F(0), F(1)])


def test_duplicate_labels_rejected():
    with pytest.raises(ValidationError):
        FiniteMMSpace(["a", "a"], ((0, 1), (1, 0)), [F(1, 2)] * 2)


def test_mass_of_subset():
    sp = FiniteMMSpace.line_space([0, 1, 2], masses=[F(1, 2), F(1, 3), F(1, 6)])
    assert sp.mass_of([0, 2]) == F(2, 3)
    assert sp.mass_of([]) == 0


def test_json_round_trip(tmp_path):
    sp = FiniteMMSpace.line_space([0, F(1, 2), 3], masses=[F(1, 4), F(1, 4), F(1, 2)])
    path = tmp_path / "space.json"
    sp.dump(path)
    assert FiniteMMSpace.load(path) == sp


# -- screens -----------------------------------------------------------------------


def test_interval_contains():
    band = Interval(-1, F(3, 2))
    assert band.contains(-1) and band.contains(F(3, 2)) and band.contains(0)
    assert not band.contains(-2)
    assert band.width == F(5, 2)


def test_interval_requires_order():
    with pytest.raises(ValidationError):
        Interval(2, 2)


def test_full_line_contains_everything():
    assert FULL_LINE.contains(10**9)
    assert FULL_LINE.contains(F(-10**9, 7))


def test_screen_parsing_round_trip():
    assert parse_screen("fullline") is FULL_LINE
    s = parse_screen("interval:-1/2:3")
    assert s == Interval(F(-1, 2), 3)
    assert parse_screen(screen_to_str(s)) == s
    assert screen_to_str(FULL_LINE) == "fullline"
    with pytest.raises((ValidationError, DomainError)):
        parse_screen("disk:0:1")
    with pytest.raises((ValidationError, DomainError)):
        parse_screen("interval:1")


# -- witnesses ----------------------------------------------------------------------


def test_witness_validate_happy_path():
    sp = FiniteMMSpace.line_space([1, 2, 3, 4])
    w = LipschitzWitness((F(-1), F(-1, 3), F(1, 3), F(1)))
    w.validate(sp, Interval(-1, 1))  # should not raise


def test_witness_rejects_lipschitz_violation():
    sp = FiniteMMSpace.line_space([0, 1])
    with pytest.raises(ValidationError) as err:
        LipschitzWitness((F(0), F(2))).validate(sp, FULL_LINE)
    assert "p0" in str(err.value) and "p1" in str(err.value)


def test_witness_rejects_escaping_screen():
    sp = FiniteMMSpace.line_space([0, 1])
    with pytest.raises(ValidationError):
        LipschitzWitness((F(0), F(1))).validate(sp, Interval(0, F(1, 2)))


def test_witness_length_checked():
    sp = FiniteMMSpace.line_space([0, 1])
    with pytest.raises(ValidationError):
        LipschitzWitness((F(0),)).validate(sp, FULL_LINE)


def test_witness_pushforward_merges():
    sp = FiniteMMSpace.line_space([0, 1, 2], masses=[F(1, 4), F(1, 4), F(1, 2)])
    image = LipschitzWitness((F(0), F(1), F(0))).pushforward(sp)
    assert image == DiscreteMeasure([(0, F(3, 4)), (1, F(1, 4))])


# -- heavy subsets ------------------------------------------------------------------


def test_heavy_minimal_subsets_skewed():
    sp = FiniteMMSpace.line_space([0, 1, 2], masses=[F(1, 2), F(3, 10), F(1, 5)])
    fam = heavy_minimal_subsets(sp, F(9, 20))
    assert fam.minimal_subsets == ((0,), (1, 2))


def test_heavy_at_full_mass():
    sp = FiniteMMSpace.line_space([0, 1, 2])
    fam = heavy_minimal_subsets(sp, 1)
    assert fam.minimal_subsets == ((0, 1, 2),)


def test_heavy_singletons_when_alpha_tiny():
    sp = FiniteMMSpace.line_space([0, 1, 2])
    fam = heavy_minimal_subsets(sp, F(1, 10))
    assert fam.minimal_subsets == ((0,), (1,), (2,))


def test_heavy_alpha_domain():
    sp = FiniteMMSpace.line_space([0, 1])
    with pytest.raises(DomainError):
        heavy_minimal_subsets(sp, 0)
    with pytest.raises(DomainError):
        heavy_minimal_subsets(sp, F(6, 5))


def test_heavy_cap():
    sp = FiniteMMSpace.line_space(range(13))
    with pytest.raises(ResourceCapError):
        heavy_minimal_subsets(sp, F(1, 2))


def test_heavy_matches_bruteforce():
    rng = random.Random(8128)
    for _ in range(120):
        sp = random_space(rng, max_points=6)
        alpha = random_alpha(rng)
        got = heavy_minimal_subsets(sp, alpha).minimal_subsets
        assert list(got) == heavy_subsets_bruteforce(sp, alpha)
