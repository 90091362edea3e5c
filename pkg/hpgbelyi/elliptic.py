"""Elliptic curves v^2 = u^3 + a2 u^2 + a4 u + a6 over Q and the fibrations of the two surfaces.

Three bundles are modelled:
  * E3Bundle(b): the cubic surface at fixed b;
  * E4Bundle(z): the quartic surface at fixed z;
  * E4StarBundle(b): the quartic surface at fixed b, modulo the symmetry
    (c, z) -> (-b-c-3, 1-z).

`specialize(m)` wires the curves that govern the one-quadratic maps for
m = 5..8 to their (p/r, z) data, and `period_density(m)` integrates the real
period numerically.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import inf, sqrt

import numpy as np
from scipy.integrate import quad

from hpgbelyi.exact import (
    MixedFieldError,
    PolyExact,
    as_scalar,
    collapse,
    field_tag,
    is_rational,
    sort_key,
    split_roots,
    sqrt_detect,
    sqrt_in_field,
)
from hpgbelyi.surfaces import cleared_hpg, s3_cubic, s3_residual, s4_residual

logger = logging.getLogger(__name__)


class EllipticError(Exception):
    """Custom exception for elliptic curve arithmetic and fibrations."""

    pass


class NotOnCurve(EllipticError):
    """A point does not satisfy the curve equation."""

    pass


class SingularFiber(EllipticError):
    """The fiber at this parameter is not an elliptic curve."""

    pass


class VZero(EllipticError):
    """The surface map is undefined at points with v = 0."""

    pass


class DegenerateFiber(EllipticError):
    """A map between a fiber and the surface hits a vanishing denominator."""

    pass


class ExcludedFiber(EllipticError):
    """The parameter is one of the excluded fibers b in {0, -1, -2, -3}."""

    pass


class WZero(EllipticError):
    """The common denominator W2 of the symmetry invariants vanishes."""

    pass


class QuadratureFailure(EllipticError):
    """Numerical integration did not reach the requested tolerance."""

    pass


# --- curves and points ---


@dataclass(frozen=True)
class PointQ:
    """An affine point (u, v); both None for the point at infinity."""

    u: Fraction | None = None
    v: Fraction | None = None

    @classmethod
    def of(cls, u, v) -> "PointQ":
        return cls(as_scalar(u), as_scalar(v))

    @property
    def is_infinity(self) -> bool:
        return self.u is None

    def __str__(self):
        return "oo" if self.is_infinity else f"({self.u}, {self.v})"


INFINITY = PointQ()


@dataclass(frozen=True)
class CurveQ:
    a2: Fraction
    a4: Fraction
    a6: Fraction
    label: str = ""

    def __post_init__(self):
        for name in ("a2", "a4", "a6"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.discriminant == 0:
            raise SingularFiber(f"v^2 = u^3 + {self.a2}u^2 + {self.a4}u + {self.a6} is singular")

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6 = 4 * self.a2, 2 * self.a4, 4 * self.a6
        b8 = 4 * self.a2 * self.a6 - self.a4 * self.a4
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        c4 = 16 * self.a2 * self.a2 - 48 * self.a4
        return c4**3 / self.discriminant

    def rhs(self, u):
        return ((u + self.a2) * u + self.a4) * u + self.a6

    def on_curve(self, point: PointQ) -> bool:
        return point.is_infinity or point.v * point.v == self.rhs(point.u)

    def check(self, point: PointQ) -> PointQ:
        if not self.on_curve(point):
            raise NotOnCurve(f"{point} is not on {self}")
        return point

    def negate(self, point: PointQ) -> PointQ:
        return point if point.is_infinity else PointQ(point.u, -point.v)

    def add(self, P: PointQ, Q: PointQ) -> PointQ:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.u == Q.u:
            if P.v + Q.v == 0:
                return INFINITY
            slope = (3 * P.u * P.u + 2 * self.a2 * P.u + self.a4) / (2 * P.v)
        else:
            slope = (Q.v - P.v) / (Q.u - P.u)
        u3 = slope * slope - self.a2 - P.u - Q.u
        v3 = -(P.v + slope * (u3 - P.u))
        return PointQ(u3, v3)

    def scalar_mul(self, n: int, point: PointQ) -> PointQ:
        if n < 0:
            return self.scalar_mul(-n, self.negate(point))
        result, base = INFINITY, point
        while n:
            if n & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            n >>= 1
        return result

    def torsion_order(self, point: PointQ, max_order: int = 12) -> int | None:
        self.check(point)
        current = point
        for n in range(1, max_order + 1):
            if current.is_infinity:
                return n
            current = self.add(current, point)
        return None

    def __str__(self):
        name = f" [{self.label}]" if self.label else ""
        return f"v^2 = u^3 + ({self.a2})u^2 + ({self.a4})u + ({self.a6}){name}"


# --- Mordell-Weil enumeration ---


@dataclass(frozen=True)
class MWSpec:
    curve: CurveQ
    free_generators: tuple
    torsion_generators: tuple = ()  # ((point, order), ...)
    bound: int = 1

    def __post_init__(self):
        if self.bound < 0:
            raise ValueError("bound must be nonnegative")
        for point in self.free_generators:
            self.curve.check(point)
        for point, order in self.torsion_generators:
            self.curve.check(point)
            if not self.curve.scalar_mul(order, point).is_infinity:
                raise NotOnCurve(f"{point} is not annihilated by {order}")

    def with_bound(self, bound: int) -> "MWSpec":
        return MWSpec(self.curve, self.free_generators, self.torsion_generators, bound)


def _multiples(curve: CurveQ, point: PointQ, indices) -> list[PointQ]:
    positive = [INFINITY]
    top = max((abs(i) for i in indices), default=0)
    for _ in range(top):
        positive.append(curve.add(positive[-1], point))
    return [positive[i] if i >= 0 else curve.negate(positive[-i]) for i in indices]


def point_key(point: PointQ):
    return (point.u.denominator, point.u, point.v)


def mw_enumerate(spec: MWSpec, include_infinity: bool = False) -> list[PointQ]:
    """All sum n_i g_i + torsion with |n_i| <= bound, deduplicated and sorted by height."""
    curve = spec.curve
    free = [_multiples(curve, g, range(-spec.bound, spec.bound + 1)) for g in spec.free_generators]
    torsion = [_multiples(curve, g, range(order)) for g, order in spec.torsion_generators]
    seen = {}
    for combo in product(*free, *torsion):
        total = INFINITY
        for point in combo:
            total = curve.add(total, point)
        key = None if total.is_infinity else (total.u, total.v)
        seen.setdefault(key, total)
    points = [p for k, p in seen.items() if k is not None]
    points.sort(key=point_key)
    if include_infinity and None in seen:
        points.insert(0, INFINITY)
    logger.debug(f"mw_enumerate: {len(points)} points at bound {spec.bound}")
    return points


# --- the cubic surface at fixed b ---


class E3Bundle:
    """v^2 = u^3 + b^2 (3u - 16b - 16)^2, birational to the cubic surface at fixed b."""

    def __init__(self, b):
        b = as_scalar(b)
        if b in (0, -1, -2):
            raise SingularFiber(f"b={b} is a singular fiber of the cubic surface")
        self.b = b
        self.curve = CurveQ(9 * b * b, -96 * b * b * (b + 1), 256 * b * b * (b + 1) ** 2)

    @property
    def torsion_point(self) -> PointQ:
        b = self.b
        return PointQ(Fraction(0), 16 * b * (b + 1))

    @property
    def free_point(self) -> PointQ:
        b = self.b
        return PointQ(8 * b, 8 * b * (b + 2))

    def mw_spec(self, bound: int = 1) -> MWSpec:
        return MWSpec(self.curve, (self.free_point,), ((self.torsion_point, 3),), bound)

    def to_surface(self, point: PointQ) -> tuple:
        """(c, z) on the cubic surface; the point at infinity goes to the section z = 1/2."""
        self.curve.check(point)
        if point.is_infinity:
            return -(self.b + 2) / 2, Fraction(1, 2)
        if point.v == 0:
            raise VZero(f"{point} has no image on the cubic surface")
        b, u, v = self.b, point.u, point.v
        shift = 16 * b * (b + 1)
        c = -(b + 2) * (v + 3 * b * u - shift) / (2 * v)
        z = (v + (3 * b + 4) * u - shift) / (2 * v)
        return c, z

    def from_surface(self, c, z) -> PointQ:
        b, c, z = self.b, as_scalar(c), as_scalar(z)
        den = b * c + (b + 2) * (3 * b * z + 2 * c + 2)
        if den == 0:
            raise DegenerateFiber(f"(c, z)=({c}, {z}) maps to the point at infinity")
        u = 16 * b * (b + 1) * (b * z + 2 * z + c) / den
        v = 32 * b * (b + 1) * (b + 2) / den
        return PointQ(u, v)

    def companions(self, point: PointQ) -> tuple:
        """The other two z-roots of the cubic whose root to_surface returns."""
        self.curve.check(point)
        if point.is_infinity or point.v == 0:
            raise VZero(f"{point} has no image on the cubic surface")
        b, u, v = self.b, point.u, point.v
        root = sqrt_in_field(3 * u / (b + 1) - 12)
        base = v + (3 * b - 2) * u - 16 * b * (b + 1)
        pair = [collapse((base + sign * u * root) / (2 * v)) for sign in (1, -1)]
        return tuple(sorted(pair, key=sort_key))

    def candidate_points(self) -> list[PointQ]:
        """Points over the printed candidate u-values whose right-hand side is a square."""
        b = self.b
        us = (
            Fraction(0),
            8 * b,
            -16 * b,
            4 * (b + 1),
            16 * (b + 1),
            -8 * b * (b + 1),
            16 * b * (b + 1),
            Fraction(16, 9) * (1 - b) * (1 + 2 * b),
        )
        points = []
        for u in us:
            v = sqrt_detect(self.curve.rhs(u))
            if v is not None:
                points.append(PointQ(u, v))
        return points

    def c_sections(self) -> list[tuple]:
        """(c, z) pairs from the low-degree rational c-sections that have a rational z."""
        b = self.b
        sections = (
            ((b + 2), (4 * b - 1)),
            (-4 * b * (b + 2), (5 * b + 1)),
            (-27 * b * (b + 1), (16 * b * b + 19 * b + 1)),
            (-((2 * b + 1) ** 3), (7 * b * b + b + 1)),
            (-2 * (b - 1) ** 3, (2 * b * b + 17 * b - 1)),
        )
        found = []
        for num, den in sections:
            if den == 0:
                continue
            c = num / den
            cubic = s3_cubic(b, c)
            if cubic.degree < 1:
                continue
            for z, _ in split_roots(cubic).rational_roots:
                found.append((c, z))
        return found


# --- the quartic surface at fixed z ---


def _lifts(e, z) -> list[tuple]:
    """Both (b, c) over a given e = bz + c, from the quadratic in f = bz(z-1)."""
    q = z * z + z + 1
    lin = 6 * q + 8 * e * z + 6 * e * e + 14 * e
    const = e * (e + 1) * (e + 2) * (e + 3)
    root = sqrt_in_field(lin * lin - 12 * const)
    lifts = []
    for sign in (1, -1):
        f = collapse((-lin + sign * root) / 6)
        b = collapse(f / (z * (z - 1)))
        lifts.append((b, collapse(e - b * z)))
    return lifts


_E4_B_SECTIONS = (
    lambda z: (z + 1) * (z + 2) / (3 * z * (1 - z)),
    lambda z: 3 * (z + 1) * (3 * z + 2) / (z * (1 - z)),
    lambda z: 6 * (z + 1) * (3 * z - 2) / (25 * z * (1 - z)),
    lambda z: 2 * (2 * z + 1) * (4 * z - 3) / (z * (1 - z) * (2 * z * z - 3) ** 2),
    lambda z: (2 - z) * (z * z - 4 * z + 1) * (z * z - 6 * z + 3) / (z * (5 * z * z - 2 * z - 1) ** 2),
    lambda z: 2 * z * (2 * z + 1) * (6 * z**3 + z * z - 2) / ((1 - z) * (3 * z * z - 2) ** 2),
)


class E4Bundle:
    """v^2 = u^3 - 20Z u^2 + 108Z^2 u - 648(Z-1)^2 with Z = z^2 - z + 1."""

    def __init__(self, z):
        z = as_scalar(z)
        if z in (0, 1):
            raise DegenerateFiber(f"z={z} is a degenerate fiber of the quartic surface")
        self.z = z
        self.Z = z * z - z + 1
        Z = self.Z
        self.curve = CurveQ(-20 * Z, 108 * Z * Z, -648 * (Z - 1) ** 2)

    def to_surface(self, point: PointQ) -> list[tuple]:
        """Both lifts (b, c), each with its field tag."""
        self.curve.check(point)
        if point.is_infinity:
            raise DegenerateFiber("the point at infinity has no image")
        z, Z, u, v = self.z, self.Z, point.u, point.v
        den = u * u - 12 * Z * u + 12 * Z * Z
        if den == 0:
            raise DegenerateFiber(f"{point} makes the e-denominator vanish")
        e = (2 * Z * v - (z + 1) * (u * u - 2 * (8 * Z - 3 * z) * u + 36 * (z - 1) ** 2 * Z)) / den
        return [(b, c, field_tag(b)) for b, c in _lifts(e, z)]

    def generator_table(self) -> list[PointQ]:
        z, Z = self.z, self.Z
        w = 1 - z
        return [
            PointQ(Fraction(6), 12 * (2 * z - 1)),
            PointQ(6 * z * z, 12 * z * z * (2 - z)),
            PointQ(6 * w * w, 12 * w * w * (1 + z)),
            PointQ(Fraction(9), 9 * (2 * Z - 1)),
            PointQ(9 * z * z, 9 * z * (2 * Z - z * z)),
            PointQ(9 * w * w, 9 * w * (2 * Z - w * w)),
        ]

    def b_sections(self) -> list[tuple]:
        """(b, c) pairs where c is a rational root of the quartic after substituting a section b(z)."""
        z = self.z
        found = []
        for section in _E4_B_SECTIONS:
            try:
                b = section(z)
            except ZeroDivisionError:
                continue
            quartic = PolyExact.constant(0) + cleared_hpg(4, b, PolyExact.x(), z)
            if quartic.degree < 1:
                continue
            for c, _ in split_roots(quartic).rational_roots:
                found.append((b, c))
        return found


# --- the quartic surface at fixed b, modulo the 1-z symmetry ---


@dataclass(frozen=True)
class FiberImage:
    c: object
    z: object
    field: str


class E4StarBundle:
    """v^2 = u(u^2 - 4b(5b+9)u + 108b(b+1)^2(b+2))."""

    def __init__(self, b):
        b = as_scalar(b)
        if b in (0, -1, -2, -3):
            raise ExcludedFiber(f"b={b} is an excluded fiber")
        self.b = b
        self.curve = CurveQ(-4 * b * (5 * b + 9), 108 * b * (b + 1) ** 2 * (b + 2), 0)

    @property
    def torsion_point(self) -> PointQ:
        return PointQ(Fraction(0), Fraction(0))

    @property
    def free_point(self) -> PointQ:
        b = self.b
        return PointQ(6 * b * (b + 1), 12 * b * (b + 1) * (b + 3))

    def mw_spec(self, bound: int = 1) -> MWSpec:
        return MWSpec(self.curve, (self.free_point,), ((self.torsion_point, 2),), bound)

    def invariants(self, point: PointQ) -> tuple:
        """(z(1-z), c(b+c+3), cz + (b+c+3)(z-1)) at a point."""
        self.curve.check(point)
        if point.is_infinity:
            raise WZero("the point at infinity has no image")
        b, u, v = self.b, point.u, point.v
        b3 = b * (b + 1) * (b + 2)
        w2 = 8 * b * v + u * u - 4 * b * (b + 9) * u + 108 * b3 * (b + 9)
        if w2 == 0:
            raise WZero(f"W2 vanishes at {point}")
        s = -6 * (v + 2 * (2 * b + 3) * u - 36 * b3) / w2
        g = -216 * b3 * (b + 3) ** 2 / w2
        k = -(b + 3) * (2 * (4 * b + 3) * v + u * u - 4 * b * (b + 3) * u + 108 * b3 * (b + 5)) / w2
        return s, g, k

    def fiber_image(self, point: PointQ) -> list[FiberImage]:
        b = self.b
        s, g, k = self.invariants(point)
        zs = _quadratic(Fraction(1), Fraction(-1), s)
        cs = _quadratic(Fraction(1), b + 3, -g)
        images = []
        for c, z in product(cs, zs):
            try:
                if c * z + (b + c + 3) * (z - 1) != k:
                    continue
            except MixedFieldError:
                continue
            c, z = collapse(c), collapse(z)
            tag = field_tag(c) if not is_rational(c) else field_tag(z)
            images.append(FiberImage(c, z, tag))
        images.sort(key=lambda im: (sort_key(im.c), sort_key(im.z)))
        return images

    def square_filter(self, point: PointQ) -> Fraction | None:
        """Square root of (v+4bu)^2 + 864b(b+1)(b+2)u when rational: both z-roots are then rational."""
        self.curve.check(point)
        b, u, v = self.b, point.u, point.v
        return sqrt_detect((v + 4 * b * u) ** 2 + 864 * b * (b + 1) * (b + 2) * u)


def _quadratic(a, b, c) -> list:
    """Distinct roots of a t^2 + b t + c, rational or conjugate."""
    root = sqrt_in_field(b * b - 4 * a * c)
    found = []
    for sign in (1, -1):
        value = collapse((-b + sign * root) / (2 * a))
        if value not in found:
            found.append(value)
    return found


def e4star_base_change(zeta) -> tuple:
    """(b, ((c, z), (c', z'))) for the section over b = (9 zeta^2 - 1)/(1 - zeta^2)."""
    zeta = as_scalar(zeta)
    if zeta * zeta == 1:
        raise DegenerateFiber("zeta = +-1 is a pole of the base change")
    b = (9 * zeta * zeta - 1) / (1 - zeta * zeta)
    pairs = tuple((-(b + 3) * (1 + sign * zeta) / 2, (1 + sign * zeta) / 2) for sign in (1, -1))
    return b, pairs


# --- curves that govern the one-quadratic maps ---


@dataclass(frozen=True)
class Specialization:
    m: int
    curve: CurveQ
    spec: MWSpec
    label: str
    b: Fraction
    c_offset: int  # c = p/r + c_offset

    def image(self, point: PointQ) -> list[tuple]:
        """(p/r, z) candidates for a point on the specialized curve."""
        self.curve.check(point)
        if self.m in (5, 6):
            shift = 75 if self.m == 5 else 147
            local = INFINITY if point.is_infinity else PointQ((point.u - shift) / 4, point.v / 8)
            c, z = E3Bundle(self.b).to_surface(local)
            return [(c - self.c_offset, z)]
        return [(im.c - self.c_offset, im.z) for im in E4StarBundle(self.b).fiber_image(point)]

    def residual(self, p_over_r, z):
        """The hypergeometric relation that (p/r, z) must satisfy."""
        c = p_over_r + self.c_offset
        if self.m in (5, 6):
            return s3_residual(self.b, c, z)
        return s4_residual(self.b, c, z)


LMFDB_LABELS = {5: "4050.y2", 6: "13230.dp1", 7: "94080.el2", 8: "40320.bf2"}


def specialize(m: int) -> Specialization:
    if m == 5:
        curve = CurveQ(0, -2475, -5850, LMFDB_LABELS[5])
        spec = MWSpec(curve, (PointQ.of(-5, 80),), ((PointQ.of(75, 480), 3),))
        return Specialization(5, curve, spec, LMFDB_LABELS[5], Fraction(-5, 2), 3)
    if m == 6:
        curve = CurveQ(0, -17787, 692566, LMFDB_LABELS[6])
        spec = MWSpec(curve, (PointQ.of(35, 336),), ((PointQ.of(147, 1120), 3),))
        return Specialization(6, curve, spec, LMFDB_LABELS[6], Fraction(-7, 2), 4)
    if m == 7:
        bundle = E4StarBundle(Fraction(-7, 2))
        gens = (PointQ.of("105/2", "-105/2"), PointQ.of(60, 15))
    elif m == 8:
        bundle = E4StarBundle(Fraction(-9, 2))
        gens = (PointQ.of("189/2", "-567/2"), PointQ.of("945/4", "14175/8"))
    else:
        raise ValueError(f"m must be one of 5, 6, 7, 8, got {m}")
    curve = CurveQ(bundle.curve.a2, bundle.curve.a4, bundle.curve.a6, LMFDB_LABELS[m])
    spec = MWSpec(curve, gens, ((bundle.torsion_point, 2),))
    return Specialization(m, curve, spec, LMFDB_LABELS[m], bundle.b, m - 3)


# --- the q = -3r curve at fixed m ---


def q3_bundle(m: int) -> E3Bundle:
    """Cubic-surface fiber for the two-linear maps with q = -3r: b = -m-1, z = lam."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return E3Bundle(-m - 1)


def q3_lambda_data(m: int, point: PointQ) -> tuple:
    """(p/r, lam) from a point of the q = -3r curve; c = m - 2 + p/r."""
    c, lam = q3_bundle(m).to_surface(point)
    return c - m + 2, lam


def q3_curve_spec(bound: int = 1) -> MWSpec:
    """The q = -3r curve at m = 6 with its rank-two generators."""
    bundle = q3_bundle(6)
    curve = CurveQ(bundle.curve.a2, bundle.curve.a4, bundle.curve.a6, "39690.bj2")
    gens = (PointQ.of(-56, 280), PointQ.of(-48, 48))
    return MWSpec(curve, gens, ((PointQ.of(0, 672), 3),), bound)


# --- real period ---


@dataclass(frozen=True)
class DensityReport:
    m: int
    rho: float
    alternative: float
    oval_period: float
    sub_integrals: tuple
    infinite_integral: float
    odds_ratio: float
    infinite_odds_ratio: float
    discrepancy: float = 0.0


# the two period integrals must agree to this absolute tolerance
_AGREEMENT = 1e-8

# (curve, first interval, second interval, numerator line A u + B v = C)
_DENSITY_DATA = {
    5: ((0, -2475, -5850), (-45, -5), (51, 315), (15, 11, 645)),
    6: ((0, -17787, 692566), (-133, 35), (107, 707), (63, 13, 5901)),
}


def _real_roots(coeffs) -> list[float]:
    roots = np.roots(coeffs)
    return sorted(float(r.real) for r in roots if abs(r.imag) < 1e-9 * max(1.0, abs(r.real)))


def _integrate(roots, lo, hi, lo_root: bool, hi_root: bool, tolerance: float) -> float:
    """Integral of 1/sqrt|f| over [lo, hi]; endpoint roots get an algebraic weight."""
    if hi == inf:
        start = lo + 1.0 if lo_root else lo
        head = _integrate(roots, lo, start, lo_root, False, tolerance) if lo_root else 0.0
        cubic = lambda u: abs((u - roots[0]) * (u - roots[1]) * (u - roots[2]))  # noqa: E731
        tail, err = quad(lambda u: 1.0 / sqrt(cubic(u)), start, inf, epsabs=tolerance, epsrel=1e-12, limit=200)
        if err > max(100 * tolerance, 1e-9):
            raise QuadratureFailure(f"tail integral from {start} has error {err}")
        return head + tail
    skip = {i for i, e in enumerate(roots) if (lo_root and e == lo) or (hi_root and e == hi)}

    def smooth(u):
        acc = 1.0
        for i, e in enumerate(roots):
            if i not in skip:
                acc *= abs(u - e)
        return 1.0 / sqrt(acc)

    weight = (-0.5 if lo_root else 0.0, -0.5 if hi_root else 0.0)
    if lo_root or hi_root:
        value, err = quad(smooth, lo, hi, weight="alg", wvar=weight, epsabs=tolerance, epsrel=1e-12, limit=200)
    else:
        value, err = quad(smooth, lo, hi, epsabs=tolerance, epsrel=1e-12, limit=200)
    if err > max(100 * tolerance, 1e-9):
        raise QuadratureFailure(f"integral over [{lo}, {hi}] has error {err}")
    return value


def period_density(m: int, tolerance: float = 1e-11) -> DensityReport:
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if m not in _DENSITY_DATA:
        raise ValueError(f"period densities are tabulated for m in {sorted(_DENSITY_DATA)}, got {m}")
    (a2, a4, a6), first, second, (A, B, C) = _DENSITY_DATA[m]
    roots = _real_roots([1.0, a2, a4, a6])
    if len(roots) != 3:
        raise QuadratureFailure(f"expected three real roots, got {roots}")
    e1, e2, e3 = roots

    def f(u):
        return ((u + a2) * u + a4) * u + a6

    for lo, hi in (first, second):
        if any(lo < e < hi for e in roots) or f(lo) <= 0 or f(hi) <= 0:
            raise QuadratureFailure(f"[{lo}, {hi}] meets a root of the cubic")
    rho = 3 * _integrate(roots, first[0], first[1], False, False, tolerance)
    alternative = 3 * _integrate(roots, second[0], second[1], False, False, tolerance)
    discrepancy = abs(rho - alternative)
    if discrepancy > _AGREEMENT:
        raise QuadratureFailure(f"period integrals disagree: {rho} vs {alternative}")
    oval_period = 2 * _integrate(roots, e1, e2, True, True, tolerance)

    crossings = _real_roots([B * B, B * B * a2 - A * A, B * B * a4 + 2 * A * C, B * B * a6 - C * C])

    def positive_arcs(lo, hi) -> list[float]:
        cuts = [x for x in crossings if lo < x < hi]
        points = [lo] + cuts + [hi]
        arcs = []
        for x0, x1 in zip(points, points[1:]):
            mid = x0 + 1.0 if x1 == inf else (x0 + x1) / 2
            for sign in (1.0, -1.0):
                v = sign * sqrt(max(f(mid), 0.0))
                if v != 0 and (C - A * mid - B * v) / v > 0:
                    arcs.append(_integrate(roots, x0, x1, x0 in (e1, e2, e3), x1 in (e1, e2, e3), tolerance))
        return arcs

    sub_integrals = tuple(positive_arcs(e1, e2))
    infinite_integral = sum(positive_arcs(e3, inf))
    positive = sum(sub_integrals)
    report = DensityReport(
        m=m,
        rho=rho,
        alternative=alternative,
        oval_period=oval_period,
        sub_integrals=sub_integrals,
        infinite_integral=infinite_integral,
        odds_ratio=(rho - positive) / positive if positive else inf,
        infinite_odds_ratio=(rho - infinite_integral) / infinite_integral if infinite_integral else inf,
        discrepancy=discrepancy,
    )
    logger.info(f"period_density(m={m}): rho={rho:.10f}, positive arcs={sub_integrals}")
    return report
