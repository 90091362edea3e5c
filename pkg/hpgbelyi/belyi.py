"""Belyi maps (1-x)^p (1-lam x)^q G(x)^r and (1+alpha x+beta x^2)^p G(x)^r.

Solving finds the parameter values (lam, or z = 4 beta/alpha^2) at which the
truncated series G gives phi(x) = 1 + O(x^(m+2)); certification checks that the
resulting map has exactly d+2 points above {0, 1, oo}.
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, factorial

import sympy
from sympy import factorint

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
from hpgbelyi.exact import (
    PolyExact,
    SeriesExact,
    all_roots,
    as_scalar,
    binomial_pow_coefficient,
    collapse,
    common_field,
    series_binomial_pow,
    series_pow,
    sort_key,
    split_roots,
    sqrt_in_field,
)
from hpgbelyi.hypergeom import pochhammer

logger = logging.getLogger(__name__)


class BelyiError(Exception):
    """Custom exception for Belyi map construction."""

    pass


class InputDegenerate(BelyiError):
    """The branching data violates a standing assumption of the form."""

    pass


class DegenerateRoot(BelyiError):
    """The truncated series does not give a proper companion polynomial."""

    pass


class AllDegenerate(BelyiError):
    """Every candidate of a closed-form family collapses."""

    pass


# --- maps ---


def _scaled(poly: PolyExact, s) -> PolyExact:
    """poly(s*x)."""
    if s == 1:
        return poly
    return PolyExact(tuple(c * s**k for k, c in enumerate(poly.coeffs)))


@dataclass(frozen=True)
class BelyiMap:
    form: str
    p: int
    r: int
    m: int
    G: PolyExact
    q: int | None = None
    lam: object = None
    alpha: object = None
    beta: object = None
    scale: Fraction = Fraction(1)

    def prefactors(self) -> list[tuple[PolyExact, int]]:
        if self.form == FORM_TWO_LINEAR:
            return [(PolyExact((1, -1)), self.p), (PolyExact((1, -self.lam)), self.q)]
        return [(PolyExact((1, self.alpha, self.beta)), self.p)]

    def factors(self) -> list[tuple[PolyExact, int]]:
        """Factored form (poly, power) after the x-scaling."""
        pieces = self.prefactors() + [(self.G, self.r)]
        return [(_scaled(poly, self.scale), power) for poly, power in pieces]

    @property
    def parameters(self) -> dict:
        if self.form == FORM_TWO_LINEAR:
            return {"lambda": self.lam}
        return {"alpha": self.alpha, "beta": self.beta}

    @property
    def field_d(self) -> int | None:
        values = list(self.parameters.values()) + list(self.G.coeffs)
        return common_field(values)

    @property
    def field(self) -> str:
        d = self.field_d
        return "Q" if d is None else f"Q(sqrt({d}))"

    def with_scale(self, s) -> "BelyiMap":
        return replace(self, scale=Fraction(s))

    def render(self) -> str:
        parts = []
        for poly, power in self.factors():
            if poly.degree <= 0:
                continue
            parts.append(f"({poly.render()})^{power}")
        return " * ".join(parts)

    def sort_key(self):
        if self.form == FORM_TWO_LINEAR:
            return (0, sort_key(self.lam))
        z = 4 * self.beta / (self.alpha * self.alpha) if self.alpha else None
        return (1,) + ((0,) if z is None else (1,) + sort_key(z))


def expected_degree(bmap: BelyiMap) -> int:
    """Degree from the branching data alone."""
    p, r, m = bmap.p, bmap.r, bmap.m
    if bmap.form == FORM_TWO_LINEAR:
        q = bmap.q
        return max(abs(p), abs(q), abs(p + q), m * abs(r), abs(p + m * r), abs(q + m * r), abs(p + q + m * r))
    return max(abs(2 * p), m * abs(r), abs(2 * p + m * r))


def rescale(bmap: BelyiMap) -> BelyiMap:
    """Smallest positive integer x-scaling that makes the prefactor polynomials integral."""
    need: dict[int, int] = {}
    for poly, _ in bmap.prefactors():
        for k, c in enumerate(poly.coeffs):
            c = collapse(c)
            if k == 0 or not isinstance(c, Fraction):
                continue
            for prime, e in factorint(c.denominator).items():
                need[prime] = max(need.get(prime, 0), ceil(e / k))
    s = 1
    for prime, e in need.items():
        s *= prime**e
    return bmap.with_scale(s)


# --- series ---


def h_coefficient(p: int, q: int, r: int, lam, k: int):
    """x^k coefficient of (1-x)^(-p/r) (1-lam x)^(-q/r); lam may be any ring value."""
    a, b = Fraction(p, r), Fraction(q, r)
    acc = Fraction(0)
    for j in range(k + 1):
        coeff = pochhammer(a, k - j) * pochhammer(b, j) / (factorial(k - j) * factorial(j))
        if coeff == 0:
            continue
        acc = acc + coeff * (lam**j if j else Fraction(1))
    return acc


def h_series(p: int, q: int, r: int, lam, order: int) -> SeriesExact:
    if r == 0:
        raise InputDegenerate("r must be nonzero")
    lam = as_scalar(lam)
    return SeriesExact(tuple(h_coefficient(p, q, r, lam, k) for k in range(order)))


def g_series(p: int, r: int, alpha, beta, order: int) -> SeriesExact:
    if r == 0:
        raise InputDegenerate("r must be nonzero")
    return series_binomial_pow(alpha, beta, Fraction(-p, r), order)


# --- degeneracy reports ---


@dataclass(frozen=True)
class DegeneracyReport:
    kind: str
    expected_count: int
    ell: int | None = None
    stripped: dict = field(default_factory=dict)
    computed_count: int | None = None

    @property
    def label(self) -> str:
        return self.kind if self.ell is None else f"{self.kind}({self.ell})"

    @property
    def mismatch(self) -> bool:
        """True when the solver found a different number of roots than the taxonomy predicts."""
        return self.computed_count is not None and self.computed_count != self.expected_count


def _neg_int(x: Fraction, m: int, allow_zero: bool = False) -> int | None:
    """l when x = -l with 1 <= l <= m (0 allowed on request)."""
    if x.denominator != 1 or x > 0:
        return None
    ell = int(-x)
    low = 0 if allow_zero else 1
    return ell if low <= ell <= m else None


def classify_form11(p: int, q: int, r: int, m: int, computed_count: int | None = None) -> DegeneracyReport:
    """Predict the root count of h_{m+1}(lam) away from lam in {0, 1}.

    ell1, ell2, ell3 mark p/r, q/r, (p+q)/r as nonpositive integers within reach of
    the truncation. A lam^(m+1-ell1) factor leaves ell1 roots, the degree drops to ell2,
    and (1-lam)^(ell3+1) leaves m-ell3. Two flags at once combine these cuts.
    """
    ell1 = _neg_int(Fraction(p, r), m)
    ell2 = _neg_int(Fraction(q, r), m)
    ell3 = _neg_int(Fraction(p + q, r), m, allow_zero=True)
    if ell1 is not None and ell2 is not None and ell1 + ell2 <= m:
        return DegeneracyReport(CLASS_NO_MAPS, 0, computed_count=computed_count)
    if ell1 is not None and ell2 is not None:
        # lam^(m+1-ell1) below, degree ell2 above; ell3 = ell1+ell2 > m is out of reach
        kind, ell, count = CLASS_LAMBDA_POWER, ell1, ell1 + ell2 - m - 1
    elif ell1 is not None and ell3 is not None:
        # q/r = ell1-ell3 > 0, so the degree stays m+1
        kind, ell, count = CLASS_LAMBDA_POWER, ell1, ell1 - ell3 - 1
    elif ell2 is not None and ell3 is not None:
        kind, ell, count = CLASS_REDUCED_DEGREE, ell2, ell2 - ell3 - 1
    elif ell1 is not None:
        kind, ell, count = CLASS_LAMBDA_POWER, ell1, ell1
    elif ell2 is not None:
        kind, ell, count = CLASS_REDUCED_DEGREE, ell2, ell2
    elif ell3 is not None:
        kind, ell, count = CLASS_ONE_MINUS_LAMBDA, ell3, m - ell3
    else:
        kind, ell, count = CLASS_GENERIC, None, m + 1
    return DegeneracyReport(kind, count, ell, computed_count=computed_count)


def classify_form2(p: int, r: int, m: int) -> DegeneracyReport:
    c = Fraction(p, r)
    ell = _neg_int(c, m)
    if ell is not None:
        if ell <= m // 2:
            return DegeneracyReport(CLASS_NO_MAPS, 0, ell)
        count = ell - ceil(m / 2)
        if count == 1 and m % 2 == 0:
            return DegeneracyReport(CLASS_ALPHA_ZERO_ONLY, 1, ell)
        return DegeneracyReport(CLASS_REDUCED_DEGREE, count, ell)
    twice = 2 * c
    if twice.denominator == 1 and twice < 0 and int(-twice) % 2 == 1 and int(-twice) <= m:
        ell = int(-twice)
        count = ceil((m - ell) / 2)
        if ell == m - 1:
            return DegeneracyReport(CLASS_ALPHA_ZERO_ONLY, count, ell)
        return DegeneracyReport(CLASS_SQUARE_ROOT, count, ell)
    return DegeneracyReport(CLASS_GENERIC, ceil((m + 1) / 2))


# --- solving ---


@dataclass(frozen=True)
class Solution:
    roots: list
    unresolved: PolyExact
    report: DegeneracyReport
    alpha_zero_map: bool = False


def _strip_endpoints(poly: PolyExact) -> tuple[PolyExact, int, int]:
    """Remove factors t^a and (1-t)^b; returns (rest, a, b)."""
    a = b = 0
    while poly and poly.coefficient(0) == 0:
        poly = poly // PolyExact.x()
        a += 1
    while poly.degree >= 1 and poly(1) == 0:
        poly = poly // PolyExact((-1, 1))
        b += 1
    return poly, a, b


def _resolve(poly: PolyExact) -> tuple[list, PolyExact]:
    if poly.degree < 1:
        return [], PolyExact((1,))
    split = split_roots(poly)
    return all_roots(split), split.residual


def lambda_polynomial(p: int, q: int, r: int, m: int) -> PolyExact:
    """h_{m+1} as a polynomial in lam."""
    result = h_coefficient(p, q, r, PolyExact.x(), m + 1)
    return result if isinstance(result, PolyExact) else PolyExact((result,))


def solve_form11(p: int, q: int, r: int, m: int) -> Solution:
    if r == 0:
        raise InputDegenerate("r must be nonzero")
    if p == 0:
        raise InputDegenerate("p=0 leaves only the (1-x^(m+2))^q family")
    if q == 0:
        raise InputDegenerate("q=0 removes the point 1/lambda from the zero/pole fibers")
    if p + q + m * r == 0:
        raise InputDegenerate("p+q+mr=0 makes x=oo a regular point")
    if m < 0:
        raise InputDegenerate("m must be nonnegative")

    poly = lambda_polynomial(p, q, r, m)
    if not poly:
        logger.info(f"h_{m + 1} vanishes identically for (p,q,r)=({p},{q},{r})")
        return Solution([], PolyExact((1,)), classify_form11(p, q, r, m, computed_count=0))
    rest, a, b = _strip_endpoints(poly)
    roots, residual = _resolve(rest)
    report = classify_form11(p, q, r, m, computed_count=len(roots) + residual.degree)
    report = replace(report, stripped={"lambda": a, "one_minus_lambda": b})
    if report.mismatch:
        logger.warning(
            f"solve_form11({p},{q},{r},{m}): {report.computed_count} roots found, "
            f"{report.label} predicts {report.expected_count}"
        )
    logger.debug(f"solve_form11({p},{q},{r},{m}): {len(roots)} roots, class {report.label}")
    return Solution(roots, residual, report)


def z_polynomial(p: int, r: int, m: int) -> PolyExact:
    """g_{m+1} at alpha=1, beta=z/4 as a polynomial in z."""
    beta = PolyExact((0, Fraction(1, 4)))
    result = binomial_pow_coefficient(Fraction(1), beta, Fraction(-p, r), m + 1)
    return result if isinstance(result, PolyExact) else PolyExact((result,))


def solve_form2(p: int, r: int, m: int) -> Solution:
    if r == 0:
        raise InputDegenerate("r must be nonzero")
    if p == 0:
        raise InputDegenerate("p=0 leaves phi = G^r with no branching at H2")
    if p == r:
        raise InputDegenerate("p=r is the (1-x^(m+2))^p family with a quadratic factor singled out")
    if 2 * p + m * r == 0:
        raise InputDegenerate("2p+mr=0 makes x=oo a regular point")
    if m < 0:
        raise InputDegenerate("m must be nonnegative")

    poly = z_polynomial(p, r, m)
    roots, residual = [], PolyExact((1,))
    stripped = {"z": 0, "one_minus_z": 0}
    if poly:
        rest, a, b = _strip_endpoints(poly)
        stripped = {"z": a, "one_minus_z": b}
        roots, residual = _resolve(rest)

    alpha_zero = False
    if m % 2 == 0:
        try:
            alpha_zero = certify(assemble_form2(p, r, m, 0, 1)).valid
        except DegenerateRoot:
            alpha_zero = False
    report = replace(classify_form2(p, r, m), stripped=stripped)
    logger.debug(f"solve_form2({p},{r},{m}): {len(roots)} z-roots, alpha=0 map {alpha_zero}")
    return Solution(roots, residual, report, alpha_zero_map=alpha_zero)


# --- assembly ---


def assemble_form11(p: int, q: int, r: int, m: int, lam) -> BelyiMap:
    lam = collapse(as_scalar(lam))
    if lam == 0 or lam == 1:
        raise DegenerateRoot(f"lambda={lam} merges branching points")
    series = h_series(p, q, r, lam, m + 1)
    G = series.to_poly()
    if G.degree < m:
        raise DegenerateRoot(f"G has degree {G.degree} < m={m} at lambda={lam}")
    if G(1) == 0 or G(1 / lam) == 0:
        raise DegenerateRoot(f"G shares a root with the linear factors at lambda={lam}")
    return BelyiMap(form=FORM_TWO_LINEAR, p=p, q=q, r=r, m=m, lam=lam, G=G.collapsed())


def assemble_form2(p: int, r: int, m: int, alpha, beta) -> BelyiMap:
    alpha, beta = collapse(as_scalar(alpha)), collapse(as_scalar(beta))
    if alpha == 0 and beta == 0:
        raise DegenerateRoot("H2 must not be constant")
    if alpha * alpha - 4 * beta == 0:
        raise DegenerateRoot("H2 is a full square")
    G = g_series(p, r, alpha, beta, m + 1).to_poly()
    if G.degree < m:
        raise DegenerateRoot(f"G has degree {G.degree} < m={m}")
    H2 = PolyExact((1, alpha, beta))
    if G.gcd(H2).degree > 0:
        raise DegenerateRoot("G shares a root with H2")
    return BelyiMap(form=FORM_ONE_QUADRATIC, p=p, r=r, m=m, alpha=alpha, beta=beta, G=G.collapsed())


def assemble_from_z(p: int, r: int, m: int, z) -> BelyiMap:
    return assemble_form2(p, r, m, 1, as_scalar(z) / 4)


# --- certification ---


@dataclass(frozen=True)
class FiberPoint:
    point: object  # exact scalar, "oo", or a "roots(...)" label for an unsplit factor
    order: int
    count: int = 1


@dataclass(frozen=True)
class BelyiCertificate:
    degree: int
    vanishing_order: int
    zero_fiber: tuple
    one_fiber: tuple
    infinity_fiber: tuple
    total_points: int
    valid: bool
    reason: str = ""
    extra_vanishing: tuple = ()


def _factor_points(poly: PolyExact, order: int) -> list[FiberPoint]:
    if poly.degree == 1:
        return [FiberPoint(collapse(-poly.coefficient(0) / poly.coefficient(1)), order)]
    if poly.is_rational():
        split = split_roots(poly.collapsed())
        points = [FiberPoint(root, order) for root in all_roots(split)]
        if split.residual.degree > 0:
            points.append(FiberPoint(f"roots({split.residual.render()})", order, split.residual.degree))
        return points
    return [FiberPoint(f"roots({poly.render()})", order, poly.degree)]


def certify_factors(factors: list[tuple[PolyExact, int]], m: int) -> BelyiCertificate:
    """Certify phi = prod f^e against phi = 1 + O(x^(m+2)) and the d+2 point count."""
    order = m + 3
    reasons = []
    series = SeriesExact((Fraction(1),) + (Fraction(0),) * (order - 1))
    polys = [(poly, e) for poly, e in factors if poly.degree > 0 and e != 0]
    for poly, e in polys:
        if poly.coefficient(0) != 1:
            reasons.append("factor with constant term other than 1")
            continue
        series = series * series_pow(poly, e, order)
    vanishing = series.vanishing_order(1)

    positive = sum(e * poly.degree for poly, e in polys if e > 0)
    negative = sum(-e * poly.degree for poly, e in polys if e < 0)
    degree = max(positive, negative)
    net = positive - negative

    for poly, _ in polys:
        if not poly.is_squarefree():
            reasons.append(f"factor {poly.render()} is not squarefree")
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if polys[i][0].gcd(polys[j][0]).degree > 0:
                reasons.append(f"factors {i} and {j} share a root")

    zero_fiber, infinity_fiber = [], []
    for poly, e in polys:
        target = zero_fiber if e > 0 else infinity_fiber
        target.extend(_factor_points(poly, abs(e)))
    if net > 0:
        infinity_fiber.append(FiberPoint("oo", net))
    elif net < 0:
        zero_fiber.append(FiberPoint("oo", -net))

    one_fiber = [FiberPoint(Fraction(0), min(vanishing, m + 2))]
    simple = degree - (m + 2)
    if simple > 0:
        one_fiber.append(FiberPoint("simple", 1, simple))

    extra = ()
    if vanishing < m + 2:
        reasons.append(f"phi-1 vanishes only to order {vanishing} at x=0")
    elif vanishing > m + 2:
        extra = tuple(range(m + 2, vanishing))
        reasons.append(f"extra vanishing at x^{m + 2}")
    if simple < 0:
        reasons.append(f"degree {degree} is below m+2={m + 2}")

    total = sum(pt.count for pt in zero_fiber + infinity_fiber) + 1 + max(simple, 0)
    if total != degree + 2:
        reasons.append(f"{total} points above 0, 1, oo instead of d+2={degree + 2}")
    valid = not reasons
    return BelyiCertificate(
        degree=degree,
        vanishing_order=vanishing,
        zero_fiber=tuple(zero_fiber),
        one_fiber=tuple(one_fiber),
        infinity_fiber=tuple(infinity_fiber),
        total_points=total,
        valid=valid,
        reason="; ".join(reasons),
        extra_vanishing=extra,
    )


def certify(bmap: BelyiMap) -> BelyiCertificate:
    return certify_factors(bmap.factors(), bmap.m)


# --- enumeration ---


@dataclass(frozen=True)
class Enumeration:
    maps: list  # [(BelyiMap, BelyiCertificate)]
    solution: Solution


def dedup_orbit(p: int, q: int, r: int, m: int, roots: list) -> list:
    """Canonical lambda per orbit of the symmetries that preserve the branching orders."""
    p_inf = -(p + q + m * r)
    moves = []
    if p == q:
        moves.append(lambda t: 1 / t)
    if p == p_inf:
        moves.append(lambda t: 1 - t)
    if q == p_inf:
        moves.append(lambda t: t / (t - 1))
    canonical = {}
    for root in roots:
        orbit, frontier = {root}, [root]
        while frontier:
            current = frontier.pop()
            for move in moves:
                image = collapse(move(current))
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        rep = min(orbit, key=sort_key)
        canonical[rep] = True
    return sorted(canonical, key=sort_key)


def enumerate_maps(form: str, p: int, q: int | None, r: int, m: int, dedup: bool = False) -> Enumeration:
    """Solve, assemble and certify every resolvable map of the requested form."""
    found = []
    if form == FORM_TWO_LINEAR:
        if q is None:
            raise InputDegenerate("the two-linear form needs q")
        solution = solve_form11(p, q, r, m)
        roots = dedup_orbit(p, q, r, m, solution.roots) if dedup else solution.roots
        for lam in roots:
            try:
                bmap = assemble_form11(p, q, r, m, lam)
            except DegenerateRoot as e:
                logger.warning(f"Skipping lambda={lam}: {e}")
                continue
            found.append((bmap, certify(bmap)))
    elif form == FORM_ONE_QUADRATIC:
        solution = solve_form2(p, r, m)
        if solution.alpha_zero_map:
            bmap = assemble_form2(p, r, m, 0, 1)
            found.append((bmap, certify(bmap)))
        for z in solution.roots:
            try:
                bmap = assemble_from_z(p, r, m, z)
            except DegenerateRoot as e:
                logger.warning(f"Skipping z={z}: {e}")
                continue
            found.append((bmap, certify(bmap)))
    else:
        raise InputDegenerate(f"Unknown form: {form}")
    found.sort(key=lambda item: item[0].sort_key())
    return Enumeration(found, solution)


# --- closed-form families ---


def sigma_squared(p: int, q: int, r: int) -> int:
    return -p * q * r * (p + q + r)


def sigma_parametrization(u, v) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(p, q, r, sigma) with sigma rational: p=u(uv+1), q=v(uv+1), r=-u-v."""
    u, v = Fraction(u), Fraction(v)
    w = u * v + 1
    return u * w, v * w, -u - v, -u * v * (u + v) * w


def m1_sigma_family(p: int, q: int, r: int) -> list[BelyiMap]:
    """The maps (1-x)^p (1-lam x)^q (1-mu x)^r with phi = 1 + O(x^3)."""
    if 0 in (p, q, r):
        raise InputDegenerate("p, q, r must be nonzero")
    candidates = []
    if q + r == 0:
        candidates.append((1 - Fraction(p, q)) / 2)
    else:
        sigma = sqrt_in_field(sigma_squared(p, q, r))
        for s in ((sigma, -sigma) if sigma != 0 else (sigma,)):
            mu = (-p * r + s) / (r * (r + q))
            candidates.append(collapse((-p - mu * r) / q))
    maps = []
    for lam in candidates:
        try:
            bmap = assemble_form11(p, q, r, 1, lam)
        except DegenerateRoot as e:
            logger.debug(f"sigma candidate lambda={lam} collapses: {e}")
            continue
        if certify(bmap).valid:
            maps.append(bmap)
    if not maps:
        raise AllDegenerate(f"every m=1 candidate collapses for (p,q,r)=({p},{q},{r})")
    return sorted(maps, key=lambda b: b.sort_key())


def single_map_lambda(p: int, q: int, r: int, m: int) -> Fraction:
    """Closed form of the only root on the lines q=-r and p=2r."""
    c_star, b_star = Fraction(p, r), Fraction(q, r)
    if q == -r:
        if pochhammer(c_star - 1, m) == 0:
            raise InputDegenerate(f"(p/r-1)_m vanishes for p/r={c_star}, m={m}")
        return (m + c_star) / (m + 1)
    if p == 2 * r and pochhammer(b_star, m + 1) == 0:
        return Fraction(m + 2) / (b_star + m + 2)
    raise InputDegenerate("single-map closed form needs q=-r, or p=2r with (q/r)_(m+1)=0")


def conic_pair(m: int, u) -> tuple[Fraction, tuple[Fraction, Fraction]]:
    """Rational two-map data on the line q=-2r: (p/r, (lam1, lam2))."""
    u = Fraction(u)
    den = m + 1 - u * u
    if den == 0 or m < 1:
        raise InputDegenerate(f"u={u} is a pole of the conic parametrization at m={m}")
    c_star = (m + 1 + (m - 1) * u * u) / den
    lams = tuple(sorted({(m + 1 + u) / den, (m + 1 - u) / den}))
    return c_star, lams


def lattice_divisibility(k: int) -> bool:
    """The x^k coefficient of (1-x)^-2 (1-(m+2)x/(b+m+2))^-b at m=k-1 is divisible by (b+1)_k."""
    b = sympy.Symbol("b")
    m = k - 1
    ratio = sympy.Integer(m + 2) / (b + m + 2)
    coeff = sum(
        sympy.rf(2, k - j) / sympy.factorial(k - j) * sympy.rf(b, j) / sympy.factorial(j) * ratio**j
        for j in range(k + 1)
    )
    num, _ = sympy.fraction(sympy.together(coeff))
    target = sympy.expand(sympy.rf(b + 1, k))
    return sympy.rem(sympy.expand(num), target, b) == 0


def zero_gap_extensions(bmap: BelyiMap, up_to: int | None = None) -> list[BelyiMap]:
    """Other m at which the same prefactors give a map: zero coefficients of the prefactor series."""
    if bmap.form == FORM_TWO_LINEAR:
        a, b = Fraction(-bmap.p, bmap.r), Fraction(-bmap.q, bmap.r)
        polynomial_degree = int(a + b) if a.denominator == b.denominator == 1 and a >= 0 and b >= 0 else None
    else:
        e = Fraction(-bmap.p, bmap.r)
        polynomial_degree = int(2 * e) if e.denominator == 1 and e >= 0 else None
    limit = up_to if up_to is not None else 3 * (bmap.m + 1)
    if polynomial_degree is not None:
        limit = min(limit, polynomial_degree)

    if bmap.form == FORM_TWO_LINEAR:
        series = h_series(bmap.p, bmap.q, bmap.r, bmap.lam, limit + 1)
    else:
        series = g_series(bmap.p, bmap.r, bmap.alpha, bmap.beta, limit + 1)

    found = []
    for k in range(2, limit + 1):
        if series.coefficient(k) != 0 or k - 1 == bmap.m:
            continue
        m_new = k - 1
        try:
            if bmap.form == FORM_TWO_LINEAR:
                candidate = assemble_form11(bmap.p, bmap.q, bmap.r, m_new, bmap.lam)
            else:
                candidate = assemble_form2(bmap.p, bmap.r, m_new, bmap.alpha, bmap.beta)
        except DegenerateRoot:
            continue
        if certify(candidate).valid:
            found.append(candidate)
    return found

