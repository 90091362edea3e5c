import random
from fractions import Fraction

import pytest

from hpgbelyi.exact import PolyExact, SeriesExact
from hpgbelyi.hypergeom import (
    HALF_FAMILY,
    INTEGER_FAMILY,
    HalfSpec,
    HpgSpec,
    UndefinedParameters,
    contiguous_step,
    euler_transform,
    family_member,
    hpg_half_poly,
    hpg_poly,
    hpg_poly_primitive,
    krawtchouk_identity,
    pochhammer,
    symmetry_images,
    taylor_coefficient,
    value_at_one,
)


def test_pochhammer():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(-2, 3) == 0
    assert pochhammer(5, 0) == 1


def test_hpg_poly_binomial_case():
    # 2F1(-2, 1; 1; z) = (1 - z)^2
    assert hpg_poly(HpgSpec(2, 1, 1)) == PolyExact((1, -2, 1))


def test_hpg_poly_undefined_lower_parameter():
    with pytest.raises(UndefinedParameters):
        hpg_poly(HpgSpec(3, 1, -1))


def test_hpg_poly_degenerate_reading_truncates():
    spec = HpgSpec(2, -1, -2)
    assert spec.defined and spec.degenerate
    # the sum stops at the first vanishing term (b)_k
    assert hpg_poly(spec) == PolyExact((1, -1))


def test_primitive_form():
    scale, poly = hpg_poly_primitive(HpgSpec(2, Fraction(1, 2), Fraction(3, 2)))
    assert all(c.denominator == 1 for c in poly.coeffs)
    assert poly == hpg_poly(HpgSpec(2, Fraction(1, 2), Fraction(3, 2))) * scale


def test_half_poly_degree():
    poly = hpg_half_poly(HalfSpec(5, Fraction(7, 3)))
    assert poly.degree == 2


@pytest.mark.parametrize("spec", [HpgSpec(3, Fraction(2, 5), Fraction(7, 3)), HpgSpec(4, Fraction(-1, 2), Fraction(5, 4))])
def test_symmetry_images_verify(spec):
    images = symmetry_images(spec)
    assert len(images) == 6
    for image in images:
        if not image.skipped:
            assert image.verify(), image.name


def test_euler_transform_matches_polynomial():
    spec = HpgSpec(3, Fraction(1, 2), Fraction(5, 2))
    series = euler_transform(spec, 8)
    assert series.coeffs == SeriesExact.from_poly(hpg_poly(spec), 8).coeffs


def test_euler_transform_refuses_nonpositive_integer_c():
    with pytest.raises(UndefinedParameters):
        euler_transform(HpgSpec(3, 1, -4), 6)


@pytest.mark.parametrize("family", [INTEGER_FAMILY, HALF_FAMILY])
def test_contiguous_recurrence_reproduces_family(family):
    b, c = Fraction(2, 3), Fraction(5, 7)
    prev, current = family_member(family, 0, b, c), family_member(family, 1, b, c)
    for k in range(1, 6):
        nxt = contiguous_step(family, k, b, c, current, prev)
        assert nxt == family_member(family, k + 1, b, c)
        prev, current = current, nxt


@pytest.mark.parametrize("family", [INTEGER_FAMILY, HALF_FAMILY])
@pytest.mark.parametrize("k", range(1, 7))
def test_value_at_one(family, k):
    b, c = Fraction(1, 2), Fraction(5, 3)
    assert family_member(family, k, b, c)(1) == value_at_one(family, k, b, c)


@pytest.mark.parametrize("m,n", [(1, 2), (2, 1), (1, 1)])
def test_krawtchouk_identity(m, n):
    lhs, rhs = krawtchouk_identity(m, n, 4, 3)
    assert lhs == rhs


def test_taylor_coefficient():
    # (1 - x)^-2 = sum (k+1) x^k
    assert [taylor_coefficient(k, 2) for k in range(5)] == [1, 2, 3, 4, 5]


def test_krawtchouk_identity_vanishes():
    assert krawtchouk_identity(7, 3, 13, Fraction(1, 2)) == (0, 0)


@pytest.mark.parametrize(
    "N,b,c,z",
    [
        (7, -3, 13, -1),
        (7, -4, 7, -1),
        (10, -4, 4, -1),
        (4, Fraction(-9, 2), 6, -4),
        (4, Fraction(-7, 2), -17, 4),
    ],
)
def test_printed_zeros(N, b, c, z):
    assert hpg_poly(HpgSpec(N, b, c))(z) == 0


# --- contiguous family lemmas ---

GRID = [Fraction(n, 4) for n in range(-7, 8)]


def test_integer_family_lemma():
    checked = 0
    for b in GRID:
        for c in GRID:
            for k in range(1, 7):
                if 0 in (pochhammer(b, k), pochhammer(c, k), pochhammer(b + c, k)):
                    continue
                poly = family_member(INTEGER_FAMILY, k, b, c)
                prev = family_member(INTEGER_FAMILY, k - 1, b, c)
                assert poly.degree == k
                assert poly.is_squarefree(), (b, c, k)
                assert poly.gcd(prev).degree == 0, (b, c, k)
                assert poly(1) == value_at_one(INTEGER_FAMILY, k, b, c) == pochhammer(b + c, k) / pochhammer(c, k)
                checked += 1
    assert checked > 100


def test_half_family_lemma():
    checked = 0
    for c in GRID:
        for k in range(1, 7):
            if 0 in (pochhammer(c, k), pochhammer(2 * c, k)):
                continue
            poly = family_member(HALF_FAMILY, k, 0, c)
            prev = family_member(HALF_FAMILY, k - 1, 0, c)
            assert poly.degree == k // 2
            assert poly.is_squarefree(), (c, k)
            assert poly.gcd(prev).degree == 0, (c, k)
            assert poly(1) == value_at_one(HALF_FAMILY, k, 0, c) != 0
            checked += 1
    assert checked > 0


# --- degree law ---


def test_degree_law_on_random_parameters():
    rng = random.Random(7)
    checked = 0
    while checked < 200:
        N = rng.randint(0, 8)
        b = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        c = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
        spec = HpgSpec(N, b, c)
        if not spec.defined:
            continue
        poly = hpg_poly(spec)
        assert poly(0) == 1
        expected = N if pochhammer(b, N) != 0 else int(-b)
        assert poly.degree == expected, spec
        half = HalfSpec(N, c)
        if half.defined:
            assert hpg_half_poly(half).degree == N // 2
        checked += 1


def test_euler_transform_differs_when_forced():
    spec = HpgSpec(2, 1, -3)
    series = euler_transform(spec, 6, check_safe=False)
    poly = hpg_poly(spec)
    assert poly == PolyExact((1, Fraction(2, 3), Fraction(1, 3)))
    # 1 + 2z/3 + z^2/3 + 0z^3 - z^4/3 + ...
    assert series.coeffs[:4] == SeriesExact.from_poly(poly, 4).coeffs
    assert series.coefficient(4) == Fraction(-1, 3)
    assert series.coeffs != SeriesExact.from_poly(poly, 6).coeffs
