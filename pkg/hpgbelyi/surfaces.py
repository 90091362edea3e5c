"""The surfaces 2F1(-3, b; -c-2; z) = 0 and 2F1(-4, b; -c-3; z) = 0 in (b, c, z)-space."""

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy

from hpgbelyi.exact import PolyExact, as_scalar, quadratic_roots
from hpgbelyi.hypergeom import pochhammer

logger = logging.getLogger(__name__)


class SurfaceError(Exception):
    """Custom exception for surface charts and parametrizations."""

    pass


class OnExceptionalLocus(SurfaceError):
    """The chart denominator vanishes; carries the blown-up line when there is one."""

    def __init__(self, message: str, line: "BlowupLine | None" = None):
        super().__init__(message)
        self.line = line


class Degenerate(SurfaceError):
    """A chart point lands on a rejectable degeneration."""

    pass


class PoleOfMap(SurfaceError):
    """A rational map is evaluated at one of its poles."""

    pass


class DegenerateChart(SurfaceError):
    """A parametrization denominator vanishes."""

    pass


@dataclass(frozen=True)
class BlowupLine:
    """The line kb*b + kc*c + k0 = 0 inside the plane z = z0."""

    z: Fraction
    kb: int
    kc: int
    k0: int

    def contains(self, b, c) -> bool:
        return self.kb * b + self.kc * c + self.k0 == 0

    def __str__(self):
        return f"{self.kb}*b + {self.kc}*c + {self.k0} = 0, z = {self.z}"


BLOWUP_LINES = {
    (Fraction(0), Fraction(-1)): BlowupLine(Fraction(-1), 1, -1, 0),
    (Fraction(-2), Fraction(2)): BlowupLine(Fraction(2), 2, 1, 2),
    (Fraction(-1), Fraction(1, 2)): BlowupLine(Fraction(1, 2), 1, 2, 2),
}


@dataclass(frozen=True)
class S3Point:
    b: object
    c: object
    z: object
    e: object = None


@dataclass(frozen=True)
class S3Split:
    """A point of the cubic surface whose cubic in z has three rational roots."""

    b: Fraction
    c: Fraction
    roots: tuple
    e: Fraction
    s: Fraction
    t: Fraction
    y: Fraction


@dataclass(frozen=True)
class S4Point:
    b: object
    c: object
    z: object
    e: object = None
    f: object = None
    w: object = None
    t: object = None
    y: object = None


def cleared_hpg(n: int, b, c, z):
    """(c)_n * 2F1(-n, b; 1-n-c; z) written as sum_k C(n,k) (b)_k (c)_(n-k) z^k.

    Works for any ring values, which lets the same code build polynomials in one
    of the variables.
    """
    acc = Fraction(0)
    binom = 1
    for k in range(n + 1):
        term = pochhammer(b, k) * pochhammer(c, n - k) * binom
        acc = acc + (term * z**k if k else term)
        binom = binom * (n - k) // (k + 1)
    return acc


# --- cubic surface ---


def s3_expanded(b, c, z):
    return cleared_hpg(3, b, c, z)


def s3_compact(b, c, z):
    e = b * z + c
    return e**3 + 3 * e * (b * z**2 + c) + 2 * (b * z**3 + c)


def s3_residual(b, c, z):
    value = s3_expanded(b, c, z)
    if value != s3_compact(b, c, z):
        raise SurfaceError(f"cubic surface forms disagree at ({b}, {c}, {z})")
    return value


def s3_cubic(b, c) -> PolyExact:
    """The cubic in z for fixed (b, c)."""
    return PolyExact.constant(0) + cleared_hpg(3, b, c, PolyExact.x())


def s3_param(e, z) -> S3Point:
    e, z = as_scalar(e), as_scalar(z)
    if z == 0 or z == 1:
        raise PoleOfMap(f"z={z} is a pole of the (e, z) chart")
    den = 3 * e + 2 * z + 2
    if den == 0:
        line = BLOWUP_LINES.get((e, z))
        if line is not None:
            raise OnExceptionalLocus(f"(e, z)=({e}, {z}) is blown up to the line {line}", line)
        raise OnExceptionalLocus(f"(e, z)=({e}, {z}) has no preimage on the surface")
    b = e * (e + 1) * (e + 2) / (z * (1 - z) * den)
    c = e * (e + z) * (e + 2 * z) / ((z - 1) * den)
    return S3Point(b, c, z, e)


def s3_param_inv(b, c, z) -> tuple:
    return b * z + c, z


def s3_both_positive_region(e, z) -> bool:
    """Sign predicate on the (e, z) chart for b > 0 and c > 0."""
    return z < 0 and e * (3 * e + 2 * z + 2) < 0


def s3_sign_pair(b, c) -> tuple[int, int]:
    def sign(x):
        return (x > 0) - (x < 0)

    return sign(b), sign(c)


def _split_chart(t, y) -> tuple:
    """(e, s) from the pencil coordinates (t, y)."""
    den = (t - y) * (t * y - 3)
    if den == 0:
        raise Degenerate(f"(t, y)=({t}, {y}) is on a pole of the splitting chart")
    e = 2 * t * (y * y + 3) / den
    s = y * (t * t + 2 * t * y - 3) / ((y - t) * (t * y - 3))
    return e, s


def s3_split_param(t, y) -> S3Split:
    t, y = as_scalar(t), as_scalar(y)
    if (y, t) in ((3, -1), (-3, 1)):
        raise Degenerate(f"(y, t)=({y}, {t}) gives the rejectable (b, c)=(0, -1)")
    den_b = 3 * (t * t + 2 * t * y - 3) * (y * y + 2 * t * y - 3)
    den_c = 3 * (y - t) * (y * y + 2 * t * y - 3)
    if den_b == 0 or den_c == 0:
        raise Degenerate(f"(t, y)=({t}, {y}) makes the (b, c) denominators vanish")
    e, s = _split_chart(t, y)
    b = -(t * t + 3) * (y * y + 3) * (t * y + 3) / den_b
    c = (y * y + 3) * (t * t * y - 3 * y - 6 * t) / den_c

    cubic = s3_cubic(b, c)
    if cubic.degree != 3:
        raise Degenerate(f"the cubic in z drops degree at (b, c)=({b}, {c})")
    quotient, remainder = divmod(cubic, PolyExact((-s, 1)))
    if remainder:
        raise SurfaceError(f"z={s} is not a root of the cubic at (t, y)=({t}, {y})")
    others = quadratic_roots(quotient)
    roots = tuple(sorted((s,) + tuple(others)))
    if not all(isinstance(r, Fraction) for r in roots):
        raise SurfaceError(f"the splitting chart produced irrational roots at (t, y)=({t}, {y})")
    logger.debug(f"s3_split_param({t}, {y}) -> b={b}, c={c}, roots={roots}")
    return S3Split(b=b, c=c, roots=roots, e=e, s=s, t=t, y=y)


def s3_split_family(t) -> tuple[Fraction, Fraction]:
    """The y = -t line of the splitting chart."""
    t = as_scalar(t)
    return t * t / 3 - 1, -t * t / 6 - Fraction(1, 2)


def s3_root_swap(t, y) -> tuple:
    t, y = as_scalar(t), as_scalar(y)
    if t == -1 or y == -1:
        raise PoleOfMap(f"root swap has a pole at (t, y)=({t}, {y})")
    return (t - 3) / (t + 1), (y - 3) / (y + 1)


def s3_central(t, y) -> tuple:
    return -as_scalar(t), -as_scalar(y)


def s3_fixed_z_split(z) -> tuple:
    """Total degrees of the factors of the cubic curve in (b, c) cut out at fixed z."""
    z = as_scalar(z)
    b, c = sympy.symbols("b c")
    expr = s3_expanded(b, c, sympy.Rational(z.numerator, z.denominator))
    _, factors = sympy.factor_list(sympy.expand(expr), b, c)
    degrees = []
    for factor, mult in factors:
        degrees.extend([sympy.Poly(factor, b, c).total_degree()] * mult)
    return tuple(sorted(degrees))


# --- quartic surface ---


def s4_expanded(b, c, z):
    return cleared_hpg(4, b, c, z)


def s4_compact(b, c, z):
    e = b * z + c
    return (
        (e * e + 3 * b * z * z + 3 * c) ** 2
        + 2 * (b * z * z + c) ** 2
        + 8 * b * c * z * (z - 1) ** 2
        + 6 * (b * z**4 + c)
    )


def s4_residual(b, c, z):
    value = s4_compact(b, c, z)
    if value != s4_expanded(b, c, z):
        raise SurfaceError(f"quartic surface forms disagree at ({b}, {c}, {z})")
    return value


def s4_ef_residual(e, f, z):
    """The quartic surface in the coordinates e = bz + c, f = bz(z-1)."""
    q = z * z + z + 1
    return f * (3 * f + 6 * q + 8 * e * z + 6 * e * e + 14 * e) + e * (e + 1) * (e + 2) * (e + 3)


def s4_cubic_residual(e, w, z):
    """The unprojected cubic surface; equals s4_ef_residual / e."""
    return (e * w - 2 * z * z - 2 * z - 2) * (3 * w + 8 * z + 6 * e + 14) + (e + 1) * (e + 2) * (e + 3)


def s4_unprojection(b, c, z) -> S4Point:
    e = b * z + c
    f = b * z * (z - 1)
    if e == 0:
        raise DegenerateChart("w is undefined on the line e = 0")
    w = (f + 2 * (z * z + z + 1)) / e
    return S4Point(b, c, z, e=e, f=f, w=w)


def _pencil(t, y) -> tuple:
    U = 2 * t * t * y - 6 * t * t + 4 * t * y - 3 * y * y + 3 * y
    V = t * y * y + 4 * t * t - 2 * t * y + 3 * t - 6 * y
    return U, V


def s4_param(t, y) -> S4Point:
    t, y = as_scalar(t), as_scalar(y)
    U, V = _pencil(t, y)
    for name, value in (("U", U), ("V", V), ("U+V", U + V)):
        if value == 0:
            raise DegenerateChart(f"{name} vanishes at (t, y)=({t}, {y})")
    z = -U / V
    b = 3 * (y * y - 2 * t + y) * (t * y * y - 8 * t * t + 4 * t * y - 3 * y * y + 3 * t + 3 * y) / (U * (U + V))
    c = -6 * (4 * t * t + 2 * t - 3 * y - 3) * (t * t * y - t * t + t * y - y * y) / (V * (U + V))
    return S4Point(b, c, z, t=t, y=y)


def s4_param_inv(b, c, z) -> tuple:
    b, c, z = as_scalar(b), as_scalar(c), as_scalar(z)
    for name, value in (("bz", b * z), ("b(z-1)", b * (z - 1)), ("c", c), ("c(z-1)", c * (z - 1))):
        if value == 0:
            raise DegenerateChart(f"{name} vanishes at (b, c, z)=({b}, {c}, {z})")
    t = (
        Fraction(3, 2) * (b + 1)
        - 3 * (c + 1) * (c + 2) / (2 * b * z)
        + 3 * (b + c + 1) * (b + c + 2) / (2 * b * (z - 1))
    )
    y = -c + (b + 2) * (b + 3) * z / c + (b + c + 2) * (b + c + 3) * z / (c * (z - 1))
    return t, y


SYM1 = "sym1"
SYM2 = "sym2"


def s4_cremona(which: str, t, y) -> tuple:
    """Chart maps realizing (b, c, z) -> (c, b, 1/z) and the 1-z symmetry."""
    t, y = as_scalar(t), as_scalar(y)
    if which == SYM1:
        den_t = 2 * (t * t * y - t * t + t * y - y * y)
        den_y = t * y * y - 8 * t * t + 4 * t * y - 3 * y * y + 3 * t + 3 * y
        if den_t == 0 or den_y == 0:
            raise PoleOfMap(f"sym1 has a pole at (t, y)=({t}, {y})")
        new_t = t * (y * y - t * y * y - 3 * t + 3 * y) / den_t
        new_y = (3 - 2 * t) * (t * y * y - y * y + 3 * t - 3 * y) / den_y
        return new_t, new_y
    if which == SYM2:
        den = t * y - t - 3
        if den == 0:
            raise PoleOfMap(f"sym2 has a pole at (t, y)=({t}, {y})")
        return t, (t * y - 4 * t * t - 3 * t + 3 * y) / den
    raise ValueError(f"Unknown Cremona map: {which}")
