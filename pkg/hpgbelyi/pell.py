"""Pell-type families of one-quadratic Belyi maps with p/r = -(m+5)/2 and -(m+6)/2.

For these p/r the coefficient equation of degree m+1 in z factors off a quadratic
whose discriminant is a square exactly when a Pell equation in Q(sqrt 6) or
Q(sqrt 10) is solved. Solutions are produced by powers of fundamental elements,
never by search.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

from constants import (
    PELL_SIX,
    PELL_TEN_NORM_MINUS,
    PELL_TEN_NORM_PLUS,
    PELL_TEN_UNIT,
)

logger = logging.getLogger(__name__)


class PellError(Exception):
    """Custom exception for the Pell families."""

    pass


class ParityInvalid(PellError):
    """The candidate's m has the wrong parity or is too small to give maps."""

    pass


@dataclass(frozen=True)
class QuadUnit:
    """a + b*sqrt(d) with integer a, b."""

    a: int
    b: int
    d: int

    def __post_init__(self):
        if self.d not in (6, 10):
            raise ValueError(f"d must be 6 or 10, got {self.d}")

    @property
    def norm(self) -> int:
        return self.a * self.a - self.d * self.b * self.b

    def __mul__(self, other: "QuadUnit") -> "QuadUnit":
        if other.d != self.d:
            raise ValueError(f"cannot multiply elements of Q(sqrt {self.d}) and Q(sqrt {other.d})")
        return QuadUnit(self.a * other.a + self.d * self.b * other.b, self.a * other.b + self.b * other.a, self.d)

    def __str__(self):
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.d})"


SIX_UNIT = QuadUnit(5, 2, 6)
TEN_UNIT = QuadUnit(3, 1, 10)
TEN_PLUS = QuadUnit(1, 1, 10)
TEN_MINUS = QuadUnit(1, -1, 10)


def unit_power(base: QuadUnit, n: int) -> QuadUnit:
    if n < 0:
        raise ValueError("n must be nonnegative")
    result, square = QuadUnit(1, 0, base.d), base
    while n:
        if n & 1:
            result = result * square
        square = square * square
        n >>= 1
    return result


@dataclass(frozen=True)
class PellCandidate:
    """One member of a Pell family.

    z_roots are the roots of the main quadratic in z, companion_roots those of the
    l-companion quadratic.
    """

    n: int
    m: int
    z_roots: tuple
    companion_roots: tuple
    family: str
    parity_valid: bool
    element: QuadUnit

    @property
    def d(self) -> int:
        return self.element.d


# --- defining quadratics ---


def six_quadratic(m: int, z) -> Fraction:
    return 3 * z * z + 6 * (m + 1) * z + m * m - 1


def six_companion_quadratic(m: int, z) -> Fraction:
    return 3 * z * z - 6 * (m + 2) * z + (m + 2) * (m + 4)


def six_discriminant(m: int) -> int:
    """Shared discriminant of both quadratics of the sqrt 6 family."""
    return 24 * (m + 1) * (m + 2)


def ten_quadratic(m: int, z) -> Fraction:
    return 15 * z * z - 10 * m * z + m * (m - 2)


def ten_companion_quadratic(m: int, z) -> Fraction:
    return 15 * z * z - 10 * (m + 3) * z + (m + 3) * (m + 5)


def ten_discriminant(m: int) -> int:
    return 40 * m * (m + 3)


def ten_quadratic_roots(m: int, offset: int) -> tuple[tuple, tuple]:
    """Roots (m +- offset)/3 of the main quadratic and (m + 3 +- offset)/3 of the companion.

    offset^2 = 2m(m+3)/5, so a rational offset makes ten_discriminant(m) a square.
    """
    main = tuple(sorted((Fraction(m + offset, 3), Fraction(m - offset, 3))))
    companion = tuple(sorted((Fraction(m + 3 + offset, 3), Fraction(m + 3 - offset, 3))))
    return main, companion


# --- families ---


def solve_pell6(n_max: int) -> list[PellCandidate]:
    """(5+2 sqrt 6)^n = (2m+3) + B sqrt 6, z = -(m+1) +- B."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    found = []
    for n in range(1, n_max + 1):
        element = unit_power(SIX_UNIT, n)
        m = (element.a - 3) // 2
        B = element.b
        roots = tuple(sorted((Fraction(-(m + 1) + B), Fraction(-(m + 1) - B))))
        companion = tuple(sorted((Fraction(m + 2 + B), Fraction(m + 2 - B))))
        if any(six_quadratic(m, z) for z in roots) or any(six_companion_quadratic(m, z) for z in companion):
            raise PellError(f"n={n}: roots do not satisfy the defining quadratics")
        valid = m % 2 == 1 and m >= 5
        found.append(PellCandidate(n, m, roots, companion, PELL_SIX, valid, element))
        logger.debug(f"solve_pell6: n={n} -> m={m}, z={roots}, valid={valid}")
    return found


def _ten_candidate(n: int, family: str, element: QuadUnit, reduced: bool) -> PellCandidate | None:
    """Read m and the root offset from element = A + B sqrt 10.

    Reduced elements solve A^2 - 10B^2 = 1 with A = 2m/3 + 1 and offset 3B; the
    norm-3 elements solve A^2 - 10B^2 = 9 with A = 2m + 3 and offset B.
    """
    A, B = abs(element.a), abs(element.b)
    if reduced:
        m, offset = 3 * (A - 1) // 2, 3 * B
    else:
        m, offset = (A - 3) // 2, B
    if m <= 0:
        return None
    roots, companion = ten_quadratic_roots(m, offset)
    if any(ten_quadratic(m, z) for z in roots) or any(ten_companion_quadratic(m, z) for z in companion):
        raise PellError(f"{family} n={n}: roots do not satisfy the defining quadratics")
    valid = m % 2 == 0 and m >= 6
    return PellCandidate(n, m, roots, companion, family, valid, element)


def solve_pell10(n_max: int) -> list[PellCandidate]:
    """Three families: (3+sqrt 10)^n (n even) and (1 +- sqrt 10)(3+sqrt 10)^n (n odd)."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    found = []
    for n in range(1, n_max + 1):
        power = unit_power(TEN_UNIT, n)
        if n % 2 == 0:
            candidate = _ten_candidate(n, PELL_TEN_UNIT, power, reduced=True)
            if candidate is not None:
                found.append(candidate)
            continue
        for family, seed in ((PELL_TEN_NORM_PLUS, TEN_PLUS), (PELL_TEN_NORM_MINUS, TEN_MINUS)):
            candidate = _ten_candidate(n, family, seed * power, reduced=False)
            if candidate is not None:
                found.append(candidate)
    found.sort(key=lambda c: (c.n, c.family))
    logger.debug(f"solve_pell10: {len(found)} candidates up to n={n_max}")
    return found


@dataclass(frozen=True)
class FormTwoInput:
    """Inputs for assemble_form2: (1 + alpha x + beta x^2)^p G^r of degree m."""

    p: int
    r: int
    m: int
    alpha: Fraction
    beta: Fraction
    z: Fraction


def pell_to_candidates(candidate: PellCandidate) -> list[FormTwoInput]:
    """Main branch p/r = -l with l = (m+5)/2 or (m+6)/2; companion p/r = -l'/2 with l' = m-4 or m-5."""
    if not candidate.parity_valid:
        raise ParityInvalid(f"m={candidate.m} is not admissible for the {candidate.family} family")
    m = candidate.m
    if candidate.family == PELL_SIX:
        ell, ell_companion = (m + 5) // 2, m - 4
    else:
        ell, ell_companion = (m + 6) // 2, m - 5
    inputs = [FormTwoInput(-ell, 1, m, Fraction(1), z / 4, z) for z in candidate.z_roots]
    inputs += [FormTwoInput(-ell_companion, 2, m, Fraction(1), z / 4, z) for z in candidate.companion_roots]
    return inputs
