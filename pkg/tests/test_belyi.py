import logging
import random
from fractions import Fraction
from itertools import product

import pytest
import sympy

from constants import (
    CLASS_ALPHA_ZERO_ONLY,
    CLASS_GENERIC,
    CLASS_LAMBDA_POWER,
    CLASS_NO_MAPS,
    CLASS_ONE_MINUS_LAMBDA,
    CLASS_REDUCED_DEGREE,
    CLASS_SQUARE_ROOT,
    FORM_ONE_QUADRATIC,
    FORM_TWO_LINEAR,
)
from hpgbelyi import belyi
from hpgbelyi.belyi import (
    AllDegenerate,
    DegenerateRoot,
    InputDegenerate,
    assemble_form2,
    assemble_form11,
    certify,
    certify_factors,
    classify_form2,
    classify_form11,
    conic_pair,
    dedup_orbit,
    enumerate_maps,
    expected_degree,
    g_series,
    h_series,
    lambda_polynomial,
    lattice_divisibility,
    m1_sigma_family,
    rescale,
    sigma_parametrization,
    sigma_squared,
    single_map_lambda,
    solve_form2,
    solve_form11,
    zero_gap_extensions,
)
from hpgbelyi.exact import PolyExact, QuadExt
from hpgbelyi.hypergeom import krawtchouk_identity


def test_cube_root_maps_are_certified():
    # (1-x)(1-lam x)(1+(1+lam)x) = 1 - x^3 when lam^2 + lam + 1 = 0
    result = enumerate_maps(FORM_TWO_LINEAR, 1, 1, 1, 1)
    assert len(result.maps) == 2
    for bmap, cert in result.maps:
        assert cert.valid, cert.reason
        assert cert.degree == 3
        assert bmap.field == "Q(sqrt(-3))"
        assert bmap.lam * bmap.lam + bmap.lam + 1 == 0
    assert result.solution.report.kind == CLASS_GENERIC
    assert result.solution.report.expected_count == 2


def test_orbit_dedup_merges_inverse_lambdas():
    result = enumerate_maps(FORM_TWO_LINEAR, 1, 1, 1, 1, dedup=True)
    assert len(result.maps) == 1
    assert len(dedup_orbit(1, 1, 1, 1, [Fraction(2), Fraction(1, 2), Fraction(3)])) == 2


def test_one_quadratic_map_and_rescale():
    result = enumerate_maps(FORM_ONE_QUADRATIC, 1, None, 2, 1)
    assert len(result.maps) == 1
    bmap, cert = result.maps[0]
    assert cert.valid, cert.reason
    assert bmap.beta == Fraction(3, 4)
    assert cert.degree == 4
    scaled = rescale(bmap)
    assert scaled.scale == 2
    assert scaled.render() == "(1 + 2*x + 3*x^2)^1 * (1 - x)^2"
    assert certify(scaled).valid


def test_two_linear_generic_count():
    solution = solve_form11(2, -7, 6, 2)
    assert solution.report.kind == CLASS_GENERIC
    assert solution.report.expected_count == 3
    assert len(solution.roots) + solution.unresolved.degree == 3


def test_one_quadratic_without_maps():
    solution = solve_form2(-1, 1, 4)
    assert solution.report.kind == CLASS_NO_MAPS
    assert solution.roots == []
    assert not solution.alpha_zero_map
    assert enumerate_maps(FORM_ONE_QUADRATIC, -1, None, 1, 4).maps == []


@pytest.mark.parametrize(
    "args,exc",
    [
        ((1, 1, 0, 2), InputDegenerate),
        ((0, 1, 1, 2), InputDegenerate),
        ((1, 0, 1, 2), InputDegenerate),
        ((1, 1, -1, 2), InputDegenerate),
    ],
)
def test_solve_form11_rejects_degenerate_input(args, exc):
    with pytest.raises(exc):
        solve_form11(*args)


def test_solve_form2_rejects_p_equal_r():
    with pytest.raises(InputDegenerate):
        solve_form2(3, 3, 4)


def test_classification_form11():
    assert classify_form11(-1, -1, 1, 3).kind == CLASS_NO_MAPS
    report = classify_form11(-2, 3, 1, 5)
    assert report.kind == CLASS_LAMBDA_POWER and report.expected_count == 2
    assert report.label == f"{CLASS_LAMBDA_POWER}(2)"
    assert classify_form11(1, 2, 3, 4).expected_count == 5


def test_classification_form2():
    assert classify_form2(-2, 1, 5).kind == CLASS_NO_MAPS
    assert classify_form2(-4, 1, 5).kind == CLASS_REDUCED_DEGREE
    assert classify_form2(-4, 1, 5).expected_count == 1
    assert classify_form2(-4, 1, 6).kind == CLASS_ALPHA_ZERO_ONLY
    report = classify_form2(-3, 2, 6)
    assert report.kind == CLASS_SQUARE_ROOT and report.expected_count == 2
    assert classify_form2(1, 3, 4).expected_count == 3


def test_assembly_rejects_merged_points():
    with pytest.raises(DegenerateRoot):
        assemble_form11(1, 1, 1, 1, 1)
    with pytest.raises(DegenerateRoot):
        assemble_form2(1, 2, 1, 2, 1)


def test_certificate_counts_points():
    # 1 - x^3 written as three linear factors over Q(sqrt -3)
    lam = QuadExt(Fraction(-1, 2), Fraction(1, 2), -3)
    factors = [(PolyExact((1, -1)), 1), (PolyExact((1, -lam)), 1), (PolyExact((1, 1 + lam)), 1)]
    cert = certify_factors(factors, 1)
    assert cert.valid
    assert cert.total_points == cert.degree + 2 == 5
    assert [pt.point for pt in cert.infinity_fiber] == ["oo"]


def test_certificate_flags_extra_vanishing():
    # (1 - x^4) passed off as an m=1 map
    factors = [(PolyExact((1, -1)), 1), (PolyExact((1, 1)), 1), (PolyExact((1, 0, 1)), 1)]
    cert = certify_factors(factors, 1)
    assert not cert.valid
    assert cert.extra_vanishing == (3,)


def test_expected_degree():
    bmap = enumerate_maps(FORM_ONE_QUADRATIC, 1, None, 2, 1).maps[0][0]
    assert expected_degree(bmap) == 4


def test_sigma_family():
    assert sigma_squared(1, 1, 1) == -3
    p, q, r, sigma = sigma_parametrization(1, 2)
    assert (p, q, r) == (3, 6, -3)
    assert sigma * sigma == sigma_squared(int(p), int(q), int(r))
    maps = m1_sigma_family(1, 1, 1)
    assert all(certify(bmap).valid for bmap in maps)
    assert all(bmap.m == 1 for bmap in maps)


def test_sigma_family_rejects_zero_exponent():
    with pytest.raises(InputDegenerate):
        m1_sigma_family(0, 1, 1)


def test_single_map_line_q_minus_r():
    # p/r = 3, q = -r, m = 2: lambda = (m + p/r)/(m + 1)
    lam = single_map_lambda(3, -1, 1, 2)
    assert lam == Fraction(5, 3)
    bmap = assemble_form11(3, -1, 1, 2, lam)
    assert certify(bmap).valid


def test_conic_pair():
    c_star, lams = conic_pair(3, 1)
    assert c_star == Fraction(6, 3)
    assert lams == (Fraction(1), Fraction(5, 3))


def test_zero_gap_extensions_polynomial_prefactor():
    # (1+x+3x^2/4)(1-x/2)^2 = 1 - x^3/2 + 3x^4/16: no zero gap beyond x^2
    bmap = enumerate_maps(FORM_ONE_QUADRATIC, 1, None, 2, 1).maps[0][0]
    assert zero_gap_extensions(bmap, up_to=6) == []


def test_degree_one_maps():
    # m=0: the linear coefficient p + q*lam vanishes
    solution = solve_form11(1, 2, 1, 0)
    assert list(solution.roots) == [Fraction(-1, 2)]


@pytest.mark.parametrize("k", range(1, 7))
def test_lattice_divisibility(k):
    assert lattice_divisibility(k)


def test_prefactor_series():
    assert h_series(2, 20, 5, Fraction(-1, 5), 4).coeffs == (1, Fraction(-2, 5), Fraction(9, 25), 0)
    # (1-x)^19 (1+x)^3 has no x^7 term
    assert h_series(-19, -3, 1, -1, 8).coeffs == (1, -16, 117, -512, 1463, -2736, 2907, 0)
    assert g_series(-1, 1, 2, 3, 4).coeffs == (1, 2, 3, 0)
    with pytest.raises(InputDegenerate):
        g_series(1, 0, 1, 1, 3)


# --- overlapping reductions ---


@pytest.mark.parametrize(
    "p,q,r,m,kind,count,roots",
    [
        # -2 lam (1 + lam)
        (-2, -2, 1, 2, CLASS_LAMBDA_POWER, 1, [Fraction(-1)]),
        # lam (lam - 1)^2 (5 lam - 2)
        (-3, 2, 1, 3, CLASS_LAMBDA_POWER, 1, [Fraction(2, 5)]),
        # -(lam - 1)^2 (2 lam - 5)
        (2, -3, 1, 3, CLASS_REDUCED_DEGREE, 1, [Fraction(5, 2)]),
        # 1 - lam
        (1, -1, 1, 2, CLASS_REDUCED_DEGREE, 0, []),
    ],
)
def test_overlapping_reductions(p, q, r, m, kind, count, roots):
    report = classify_form11(p, q, r, m)
    assert report.kind == kind
    assert report.expected_count == count
    assert not report.mismatch
    solution = solve_form11(p, q, r, m)
    assert solution.roots == roots
    assert solution.report.computed_count == count
    assert not solution.report.mismatch


def test_one_minus_lambda_with_p_plus_q_zero():
    # -(lam - 1)(lam^2 + 2 lam + 5): roots -1 +- 2i
    solution = solve_form11(1, -1, 2, 2)
    report = solution.report
    assert (report.kind, report.ell, report.expected_count) == (CLASS_ONE_MINUS_LAMBDA, 0, 2)
    assert report.stripped == {"lambda": 0, "one_minus_lambda": 1}
    assert len(solution.roots) == 2
    for lam in solution.roots:
        assert lam * lam + 2 * lam + 5 == 0
    assert not report.mismatch


def test_count_disagreement_is_reported(monkeypatch, caplog):
    assert classify_form11(2, -7, 6, 2, computed_count=2).mismatch
    monkeypatch.setattr(belyi, "_resolve", lambda poly: ([], PolyExact((1,))))
    with caplog.at_level(logging.WARNING, logger="hpgbelyi.belyi"):
        solution = solve_form11(2, -7, 6, 2)
    assert solution.report.mismatch
    assert solution.report.computed_count == 0
    assert "predicts 3" in caplog.text


# --- printed maps ---


def test_three_rational_maps_for_two_minus_seven_six():
    result = enumerate_maps(FORM_TWO_LINEAR, 2, -7, 6, 2)
    printed = {
        Fraction(2): [(1, -1), (1, -2), (1, -2, Fraction(-1, 6))],
        Fraction(-4): [(1, -1), (1, 4), (1, 5, Fraction(10, 3))],
        Fraction(4, 5): [(1, -5), (1, -4), (1, -3, Fraction(-2, 3))],
    }
    assert len(result.maps) == 3
    for bmap, cert in result.maps:
        assert cert.valid, cert.reason
        assert bmap.field == "Q"
        factors = [poly.coeffs for poly, _ in rescale(bmap).factors()]
        assert factors == [tuple(c) for c in printed[bmap.lam]]
        assert [power for _, power in bmap.factors()] == [2, -7, 6]


def test_shabat_polynomial_and_conjugate_pair():
    result = enumerate_maps(FORM_TWO_LINEAR, 2, 20, 5, 2)
    assert len(result.maps) == 3
    assert all(cert.valid for _, cert in result.maps)
    rational = [bmap for bmap, _ in result.maps if bmap.field == "Q"]
    assert len(rational) == 1
    assert rational[0].lam == Fraction(-1, 5)
    assert [poly.coeffs for poly, _ in rescale(rational[0]).factors()] == [(1, -5), (1, 1), (1, -2, 9)]
    pair = [bmap.lam for bmap, _ in result.maps if bmap.field == "Q(sqrt(-35))"]
    assert len(pair) == 2
    assert pair[0] == pair[1].conjugate()
    assert all(125 * lam * lam + 7 == 0 for lam in pair)


@pytest.mark.parametrize(
    "factors,m,degree",
    [
        ([((1, -5), 2), ((1, 1), 20), ((1, -2, 9), 5)], 2, 32),
        ([((1, 2, 4), 10), ((1, -20, 180, -880, 1760, 6336, -59840, 183040), 1)], 7, 27),
        ([((1, 2, 5), 11), ((1, -11, 44, 0, -715, 2717, -572, -29172, 97240), 2)], 8, 38),
    ],
)
def test_printed_shabat_polynomials_certify(factors, m, degree):
    cert = certify_factors([(PolyExact(coeffs), power) for coeffs, power in factors], m)
    assert cert.valid, cert.reason
    assert cert.degree == degree
    assert cert.vanishing_order == m + 2
    assert cert.total_points == degree + 2


def test_degree_22_map_certifies():
    bmap = assemble_form11(-19, -3, 1, 6, -1)
    cert = certify(bmap)
    assert cert.valid, cert.reason
    assert (cert.degree, cert.vanishing_order, cert.total_points) == (22, 8, 24)


def test_sigma_family_single_map():
    maps = m1_sigma_family(3, 6, -3)
    assert len(maps) == 1
    bmap = maps[0]
    assert bmap.lam == -2
    assert bmap.G.coeffs == (1, 3)
    cert = certify(bmap)
    assert (cert.degree, cert.vanishing_order, cert.total_points) == (9, 3, 11)


def test_sigma_family_both_candidates_collapse():
    # p+q = 0 and p+r = 0 send lambda to 0 and 1
    with pytest.raises(AllDegenerate):
        m1_sigma_family(1, -1, -1)


# --- grid invariants ---


def _branching_grid():
    for p, q in product(range(-6, 7), repeat=2):
        for r in range(-4, 5):
            if 0 not in (p, q, r):
                yield p, q, r


@pytest.mark.parametrize(
    "m", [0, 1, 2, pytest.param(3, marks=pytest.mark.slow), pytest.param(4, marks=pytest.mark.slow)]
)
def test_two_linear_grid(m):
    for p, q, r in _branching_grid():
        if p + q + m * r == 0:
            continue
        solution = solve_form11(p, q, r, m)
        report = solution.report
        assert not report.mismatch, (p, q, r, report)
        for lam in solution.roots:
            assert lam != 0 and lam != 1
            assert h_series(p, q, r, lam, m + 2).coefficient(m + 1) == 0
        if report.kind != CLASS_GENERIC:
            continue
        for lam in solution.roots:
            try:
                bmap = assemble_form11(p, q, r, m, lam)
            except DegenerateRoot:
                continue
            cert = certify(bmap)
            assert cert.valid, (p, q, r, lam, cert.reason)


def test_cubic_discriminant_identity():
    rng = random.Random(112)
    lam = sympy.Symbol("lam")
    nonzero = [k for k in range(-30, 31) if k]
    checked = 0
    while checked < 100:
        p, q, r = rng.choice(nonzero), rng.choice(nonzero), rng.choice(nonzero)
        if q * (q + r) * (q + 2 * r) == 0:
            continue
        cubic = lambda_polynomial(p, q, r, 2) * (6 * r**3)
        assert cubic.coeffs == (
            p * (p + r) * (p + 2 * r),
            3 * p * q * (p + r),
            3 * p * q * (q + r),
            q * (q + r) * (q + 2 * r),
        )
        disc = sympy.discriminant(cubic.to_sympy(lam).as_expr(), lam)
        assert disc == -108 * p**2 * q**2 * r**3 * (p + r) * (q + r) * (p + q + r) * (p + q + 2 * r) ** 2
        checked += 1


def test_integer_roots_satisfy_krawtchouk_identity():
    checked = 0
    for m in range(1, 5):
        for p, q, r in _branching_grid():
            a, b = Fraction(p, r), Fraction(q, r)
            M = -a - m
            if a.denominator != 1 or b.denominator != 1 or b > 0 or M < 1 or p + q + m * r == 0:
                continue
            for lam in solve_form11(p, q, r, m).roots:
                if not isinstance(lam, Fraction):
                    continue
                lhs, rhs = krawtchouk_identity(m + 1, int(-b), int(M), 1 / (1 - lam))
                assert lhs == rhs == 0
                checked += 1
    assert checked > 0
