"""Terminating Gauss hypergeometric polynomials.

Covers evaluation (including the degenerate reading where the lower parameter is a
negative integer not above -N), the six-term symmetry orbit, the Euler
transformation, the two three-term contiguous recurrences and the closed forms at
z=1.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from hpgbelyi.exact import PolyExact, SeriesExact, series_pow

logger = logging.getLogger(__name__)

INTEGER_FAMILY = "integer"
HALF_FAMILY = "half"


class HypergeomError(Exception):
    """Custom exception for hypergeometric polynomial construction."""

    pass


class UndefinedParameters(HypergeomError):
    """A lower-parameter Pochhammer symbol vanishes inside the summation range."""

    pass


class DegenerateParameters(HypergeomError):
    """A recurrence pivot or closed-form denominator vanishes."""

    pass


def pochhammer(alpha, k: int):
    """Rising factorial alpha(alpha+1)...(alpha+k-1); works over any ring value."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    acc = Fraction(1)
    for i in range(k):
        acc = acc * (alpha + i)
    return acc


def _is_int(x) -> bool:
    return isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)


def _blocks_sum(c, n: int) -> bool:
    """True when (c)_k = 0 for some k <= n."""
    return _is_int(c) and -(n - 1) <= c <= 0


@dataclass(frozen=True)
class HpgSpec:
    """Parameters of 2F1(-N, b; c; z)."""

    N: int
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if self.N < 0:
            raise ValueError(f"N must be nonnegative, got {self.N}")
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))

    @property
    def defined(self) -> bool:
        return not _blocks_sum(self.c, self.N)

    @property
    def degenerate(self) -> bool:
        return _is_int(self.c) and self.c <= -self.N and self.N > 0


@dataclass(frozen=True)
class HalfSpec:
    """Parameters of 2F1(-N/2, -(N-1)/2; c; z), a polynomial of degree floor(N/2)."""

    N: int
    c: Fraction

    def __post_init__(self):
        if self.N < 0:
            raise ValueError(f"N must be nonnegative, got {self.N}")
        object.__setattr__(self, "c", Fraction(self.c))

    @property
    def degree_bound(self) -> int:
        return self.N // 2

    @property
    def defined(self) -> bool:
        return not _blocks_sum(self.c, self.degree_bound)


def hpg_poly(spec: HpgSpec) -> PolyExact:
    if not spec.defined:
        raise UndefinedParameters(
            f"2F1(-{spec.N}, {spec.b}; {spec.c}; z): (c)_k vanishes for some k <= {spec.N}"
        )
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for k in range(1, spec.N + 1):
        term = term * (-spec.N + k - 1) * (spec.b + k - 1) / ((spec.c + k - 1) * k)
        coeffs.append(term)
        if term == 0:
            break
    return PolyExact(tuple(coeffs))


def hpg_poly_primitive(spec: HpgSpec) -> tuple[Fraction, PolyExact]:
    """Cleared integer form; returns (scale, P) with P = scale * hpg_poly(spec)."""
    return hpg_poly(spec).primitive()


def hpg_half_poly(spec: HalfSpec) -> PolyExact:
    if not spec.defined:
        raise UndefinedParameters(
            f"2F1(-{spec.N}/2, -{spec.N - 1}/2; {spec.c}; z): (c)_k vanishes for some k <= {spec.degree_bound}"
        )
    half_n = Fraction(spec.N, 2)
    half_m = Fraction(spec.N - 1, 2)
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for k in range(1, spec.degree_bound + 1):
        term = term * (-half_n + k - 1) * (-half_m + k - 1) / ((spec.c + k - 1) * k)
        coeffs.append(term)
    return PolyExact(tuple(coeffs))


def hypergeometric_series(a, b, c, order: int) -> SeriesExact:
    """2F1(a, b; c; z) modulo z**order; stops at the first vanishing term."""
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for k in range(1, order):
        if term == 0:
            coeffs.append(Fraction(0))
            continue
        den = (c + k - 1) * k
        if den == 0:
            raise UndefinedParameters(f"2F1({a}, {b}; {c}; z) hits a zero denominator at k={k}")
        term = term * (a + k - 1) * (b + k - 1) / den
        coeffs.append(term)
    return SeriesExact(tuple(coeffs))


# --- symmetries ---


@dataclass(frozen=True)
class SymmetryImage:
    """One member of the six-term orbit.

    Identity: (gamma)_N * F(spec)(z) = scale * sum_k a'_k (alpha z + beta)^k (gamma' z + delta)^(N-k),
    where a'_k are the coefficients of F(image) and gamma = 1 - N - c.
    """

    name: str
    source: HpgSpec
    image: HpgSpec
    mobius: tuple  # (alpha, beta, gamma', delta); z -> (alpha z + beta)/(gamma' z + delta)
    scale: Fraction
    skipped: bool = False

    def lhs(self) -> PolyExact:
        gamma = 1 - self.source.N - self.source.c
        return hpg_poly(self.source) * pochhammer(gamma, self.source.N)

    def expand(self) -> PolyExact:
        if self.skipped:
            raise UndefinedParameters(f"symmetry image {self.name} has undefined parameters")
        alpha, beta, gam, delta = self.mobius
        num = PolyExact((beta, alpha))
        den = PolyExact((delta, gam))
        coeffs = hpg_poly(self.image).coeffs
        total = PolyExact()
        n = self.source.N
        for k in range(n + 1):
            a_k = coeffs[k] if k < len(coeffs) else Fraction(0)
            if a_k == 0:
                continue
            total = total + num**k * den ** (n - k) * a_k
        return total * self.scale

    def verify(self) -> bool:
        return self.lhs() == self.expand()


def symmetry_images(spec: HpgSpec) -> list[SymmetryImage]:
    N, b, c = spec.N, spec.b, spec.c
    gamma = 1 - N - c
    e = c - b
    sign = Fraction(-1) ** N
    table = [
        ("identity", (1, 0, 0, 1), (b, c), pochhammer(gamma, N)),
        ("reverse", (0, 1, 1, 0), (gamma, 1 - b - N), pochhammer(b, N)),
        ("one_minus", (-1, 1, 0, 1), (b, b + gamma), pochhammer(b + gamma, N)),
        ("one_minus_inverse", (1, -1, 1, 0), (gamma, b + gamma), pochhammer(b + gamma, N)),
        ("pfaff", (1, 0, 1, -1), (e, c), sign * pochhammer(gamma, N)),
        ("inverse_one_minus", (0, 1, -1, 1), (e, 1 - b - N), sign * pochhammer(b, N)),
    ]
    images = []
    for name, mobius, (b_img, c_img), scale in table:
        image = HpgSpec(N, b_img, c_img)
        skipped = not image.defined or not spec.defined
        if skipped:
            logger.debug(f"Skipping symmetry {name} for {spec}: image {image} undefined")
        images.append(
            SymmetryImage(name=name, source=spec, image=image, mobius=mobius, scale=scale, skipped=skipped)
        )
    return images


def euler_transform(spec: HpgSpec, order: int, check_safe: bool = True) -> SeriesExact:
    """(1-z)^(c-a-b) * 2F1(c-a, c-b; c; z) modulo z**order, with a = -N.

    The transformation is only valid when c is not a nonpositive integer; with
    check_safe=False the formal right-hand side is returned regardless.
    """
    a, b, c = Fraction(-spec.N), spec.b, spec.c
    if check_safe and _is_int(c) and c <= 0:
        raise UndefinedParameters(f"Euler transformation is not valid for lower parameter {c}")
    prefactor = series_pow(PolyExact((1, -1)), c - a - b, order)
    return prefactor * hypergeometric_series(c - a, c - b, c, order)


# --- contiguous families ---


def family_member(family: str, k: int, b, c) -> PolyExact:
    """P(k) = 2F1(-k, b; 1-k-c; z) for the integer family, 2F1(-k/2, -(k-1)/2; 1-k-c; z) for the half family."""
    b, c = Fraction(b), Fraction(c)
    if family == INTEGER_FAMILY:
        return hpg_poly(HpgSpec(k, b, 1 - k - c))
    if family == HALF_FAMILY:
        return hpg_half_poly(HalfSpec(k, 1 - k - c))
    raise ValueError(f"Unknown family: {family}")


def contiguous_step(family: str, k: int, b, c, p_k: PolyExact, p_prev: PolyExact) -> PolyExact:
    """P(k+1) from P(k) and P(k-1)."""
    if k < 1:
        raise ValueError("k must be positive")
    b, c = Fraction(b), Fraction(c)
    z = PolyExact.x()
    if family == INTEGER_FAMILY:
        pivot = k - 1 + c
        if pivot == 0 or k + c == 0:
            raise DegenerateParameters(f"integer recurrence pivot vanishes at k={k}, c={c}")
        lead = z * (k + b) + (k + c)
        tail = z * (Fraction(k) * (k - 1 + b + c) / pivot)
        return (lead * p_k - tail * p_prev) / (k + c)
    if family == HALF_FAMILY:
        den = 4 * (c + k) * (c + k - 1)
        if den == 0:
            raise DegenerateParameters(f"half recurrence pivot vanishes at k={k}, c={c}")
        return p_k - z * (Fraction(k) * (2 * c + k - 1) / den) * p_prev
    raise ValueError(f"Unknown family: {family}")


def value_at_one(family: str, k: int, b, c) -> Fraction:
    b, c = Fraction(b), Fraction(c)
    if family == INTEGER_FAMILY:
        den = pochhammer(c, k)
        if den == 0:
            raise DegenerateParameters(f"(c)_k vanishes for c={c}, k={k}")
        return pochhammer(b + c, k) / den
    if family == HALF_FAMILY:
        lo, hi = k // 2, (k + 1) // 2
        den = pochhammer(c + hi, lo)
        if den == 0:
            raise DegenerateParameters(f"half-family denominator vanishes for c={c}, k={k}")
        return pochhammer(c + Fraction(1, 2), lo) / den
    raise ValueError(f"Unknown family: {family}")


# --- Krawtchouk ---


def krawtchouk(n: int, x: int, p, N: int) -> Fraction:
    """K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)."""
    p = Fraction(p)
    if p == 0:
        raise DegenerateParameters("Krawtchouk parameter p must be nonzero")
    return hpg_poly(HpgSpec(n, -x, -N))(1 / p)


def krawtchouk_identity(m: int, n: int, M, p) -> tuple[Fraction, Fraction]:
    """Both sides of 2F1(-m, -n; M; 1-1/p) = (M+m)_n/(M)_n * K_n(m; p, M+m+n-1)."""
    M, p = Fraction(M), Fraction(p)
    if not _is_int(M):
        raise DegenerateParameters("the Krawtchouk form needs an integer M")
    den = pochhammer(M, n)
    if den == 0:
        raise DegenerateParameters(f"(M)_n vanishes for M={M}, n={n}")
    lhs = hpg_poly(HpgSpec(m, -n, M))(1 - 1 / p)
    rhs = pochhammer(M + m, n) / den * krawtchouk(n, m, p, int(M) + m + n - 1)
    return lhs, rhs


def taylor_coefficient(k: int, alpha) -> Fraction:
    """Coefficient (alpha)_k / k!, the x**k term of (1-x)^(-alpha)."""
    return pochhammer(alpha, k) / factorial(k)
