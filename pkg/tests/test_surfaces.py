import random
from fractions import Fraction

import pytest
import sympy

from hpgbelyi.surfaces import (
    SYM1,
    SYM2,
    Degenerate,
    DegenerateChart,
    OnExceptionalLocus,
    PoleOfMap,
    s3_cubic,
    s3_fixed_z_split,
    s3_param,
    s3_param_inv,
    s3_residual,
    s3_both_positive_region,
    s3_central,
    s3_compact,
    s3_expanded,
    s3_root_swap,
    s3_sign_pair,
    s3_split_family,
    s3_split_param,
    s4_compact,
    s4_cremona,
    s4_expanded,
    s4_cubic_residual,
    s4_ef_residual,
    s4_param,
    s4_param_inv,
    s4_residual,
    s4_unprojection,
)


def test_s3_param_lands_on_surface():
    point = s3_param(1, 2)
    assert (point.b, point.c) == (Fraction(-1, 3), Fraction(5, 3))
    assert s3_residual(point.b, point.c, point.z) == 0
    assert s3_param_inv(point.b, point.c, point.z) == (1, 2)


def test_s3_param_poles_and_blowup():
    with pytest.raises(PoleOfMap):
        s3_param(3, 1)
    with pytest.raises(OnExceptionalLocus) as info:
        s3_param(0, -1)
    line = info.value.line
    assert line is not None and line.contains(5, 5)
    with pytest.raises(OnExceptionalLocus) as info:
        s3_param(-4, 5)
    assert info.value.line is None


def test_s3_split_param_three_rational_roots():
    split = s3_split_param(2, 1)
    assert (split.b, split.c) == (Fraction(-14, 3), Fraction(22, 3))
    assert split.roots == (Fraction(5, 4), Fraction(2), Fraction(5))
    assert split.e == -16
    cubic = s3_cubic(split.b, split.c)
    assert all(cubic(z) == 0 for z in split.roots)


def test_s3_split_param_rejects_degenerations():
    with pytest.raises(Degenerate):
        s3_split_param(-1, 3)
    with pytest.raises(Degenerate):
        # the cubic drops to a quadratic at (b, c) = (-2, -2)
        s3_split_param(1, 0)


def test_s3_split_family_line():
    b, c = s3_split_family(3)
    assert (b, c) == (Fraction(2), Fraction(-2))


def test_s3_root_swap_pole():
    assert s3_root_swap(3, 1) == (0, -1)
    with pytest.raises(PoleOfMap):
        s3_root_swap(-1, 2)


def test_s3_fixed_z_contains_line():
    degrees = s3_fixed_z_split(-1)
    assert 1 in degrees
    assert sum(degrees) == 3


def test_s4_forms_agree_at_known_point():
    assert s4_residual(5, Fraction(-7, 2), Fraction(1, 4)) == 0


def test_s4_param_and_inverse():
    point = s4_param(1, 3)
    assert (point.b, point.c, point.z) == (Fraction(-5, 7), Fraction(-9, 7), Fraction(-3, 4))
    assert s4_residual(point.b, point.c, point.z) == 0
    assert s4_param_inv(point.b, point.c, point.z) == (1, 3)


def test_s4_other_coordinates():
    b, c, z = Fraction(-5, 7), Fraction(-9, 7), Fraction(-3, 4)
    lifted = s4_unprojection(b, c, z)
    assert lifted.e == Fraction(-3, 4)
    assert lifted.f == Fraction(-15, 16)
    assert lifted.w == Fraction(-11, 12)
    assert s4_ef_residual(lifted.e, lifted.f, z) == 0
    assert s4_cubic_residual(lifted.e, lifted.w, z) == 0


def test_s4_degenerate_charts():
    with pytest.raises(DegenerateChart):
        s4_param(1, 1)
    with pytest.raises(DegenerateChart):
        s4_param_inv(0, 1, 2)
    with pytest.raises(DegenerateChart):
        s4_unprojection(1, -2, 2)


def test_s4_cremona_maps():
    # the 1-z symmetry keeps b and sends c to -b-c-3
    t, y = s4_cremona(SYM2, 1, 3)
    assert (t, y) == (1, -5)
    image = s4_param(t, y)
    assert (image.b, image.c, image.z) == (Fraction(-5, 7), Fraction(-1), Fraction(7, 4))
    assert s4_residual(image.b, image.c, image.z) == 0
    with pytest.raises(PoleOfMap):
        s4_cremona(SYM2, 1, 4)
    with pytest.raises(ValueError):
        s4_cremona("sym3", 1, 3)
    assert len(s4_cremona(SYM1, 1, 3)) == 2


def test_sign_regions():
    point = s3_param(1, -3)
    assert s3_both_positive_region(1, -3)
    assert s3_sign_pair(point.b, point.c) == (1, 1)
    assert s3_sign_pair(0, Fraction(-1, 2)) == (0, -1)


def test_s3_central_symmetry():
    assert s3_central(2, Fraction(1, 3)) == (-2, Fraction(-1, 3))


def _random_fraction(rng):
    return Fraction(rng.randint(-20, 20), rng.randint(1, 9))


def test_compact_forms_match_expanded_symbolically():
    b, c, z = sympy.symbols("b c z")
    assert sympy.expand(s3_compact(b, c, z) - s3_expanded(b, c, z)) == 0
    assert sympy.expand(s4_compact(b, c, z) - s4_expanded(b, c, z)) == 0


def test_s3_param_random_points():
    rng = random.Random(3)
    landed = 0
    for _ in range(500):
        try:
            point = s3_param(_random_fraction(rng), _random_fraction(rng))
        except (PoleOfMap, OnExceptionalLocus):
            continue
        assert s3_residual(point.b, point.c, point.z) == 0
        landed += 1
    assert landed > 400


def test_s3_split_param_random_points():
    rng = random.Random(5)
    landed = 0
    for _ in range(500):
        try:
            split = s3_split_param(_random_fraction(rng), _random_fraction(rng))
        except Degenerate:
            continue
        cubic = s3_cubic(split.b, split.c)
        for root in split.roots:
            assert isinstance(root, Fraction)
            assert cubic(root) == 0
            assert s3_residual(split.b, split.c, root) == 0
        landed += 1
    assert landed > 0


def test_s4_param_random_points():
    rng = random.Random(11)
    landed = 0
    for _ in range(500):
        try:
            point = s4_param(_random_fraction(rng), _random_fraction(rng))
        except DegenerateChart:
            continue
        assert s4_residual(point.b, point.c, point.z) == 0
        landed += 1
    assert landed > 0


def test_s4_sym1_swaps_parameters_and_inverts_z():
    t, y = s4_cremona(SYM1, 1, 3)
    assert (t, y) == (Fraction(-3, 4), 3)
    image = s4_param(t, y)
    # (b, c, z) = (-5/7, -9/7, -3/4) goes to (c, b, 1/z)
    assert (image.b, image.c, image.z) == (Fraction(-9, 7), Fraction(-5, 7), Fraction(-4, 3))
    assert s4_residual(image.b, image.c, image.z) == 0
    assert s4_cremona(SYM1, t, y) == (1, 3)


@pytest.mark.parametrize(
    "residual,point",
    [
        (s3_residual, (-7, -15, -1)),
        (s4_residual, (-7, -10, -1)),
        (s4_residual, (-10, -7, -1)),
    ],
)
def test_integer_points(residual, point):
    assert residual(*point) == 0
