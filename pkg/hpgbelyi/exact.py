import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial, lcm, gcd

import sympy
from sympy import divisors, factorint, integer_nthroot

logger = logging.getLogger(__name__)

Rational = Fraction

# Rational-root search is skipped in favour of sympy factoring above this size.
_MAX_ROOT_CANDIDATES = 20000
_MAX_DIVISOR_TARGET = 10**12


class ExactError(Exception):
    """Custom exception for exact scalar, polynomial and series arithmetic."""

    pass


class MixedFieldError(ExactError):
    """Raised when two quadratic irrationals from different fields meet."""

    pass


@lru_cache(maxsize=1024)
def _is_squarefree(d: int) -> bool:
    return all(e == 1 for e in factorint(abs(d)).values())


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ExactError(f"Expected a rational value, got {x!r}")


@dataclass(frozen=True, slots=True, eq=False)
class QuadExt:
    """The element a + b*sqrt(d) of the quadratic field Q(sqrt d)."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d in (0, 1) or not _is_squarefree(self.d):
            raise ValueError(f"d must be a squarefree integer other than 0 and 1, got {self.d}")
        object.__setattr__(self, "a", _fraction(self.a))
        object.__setattr__(self, "b", _fraction(self.b))

    # --- field plumbing ---
    def _pair(self, other):
        if isinstance(other, QuadExt):
            if other.d == self.d:
                return self, other
            if other.b == 0:
                return self, QuadExt(other.a, 0, self.d)
            if self.b == 0:
                return QuadExt(self.a, 0, other.d), other
            raise MixedFieldError(f"Cannot combine Q(sqrt {self.d}) with Q(sqrt {other.d})")
        if isinstance(other, (int, Fraction)):
            return self, QuadExt(other, 0, self.d)
        return None

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadExt division by zero")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def is_rational(self) -> bool:
        return self.b == 0

    # --- arithmetic ---
    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QuadExt(x.a + y.a, x.b + y.b, x.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QuadExt(x.a - y.a, x.b - y.b, x.d)

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QuadExt(y.a - x.a, y.b - x.b, x.d)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return QuadExt(x.a * y.a + x.d * x.b * y.b, x.a * y.b + x.b * y.a, x.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x * y.inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return y * x.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadExt(1, 0, self.d)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- comparison ---
    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        radical = f"sqrt({self.d})"
        coeff = "" if abs(self.b) == 1 else f"{abs(self.b)}*"
        if self.a == 0:
            sign = "-" if self.b < 0 else ""
            return f"{sign}{coeff}{radical}"
        sign = "-" if self.b < 0 else "+"
        return f"{self.a} {sign} {coeff}{radical}"

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.d})"


def as_scalar(x):
    """Coerce ints and numeric strings to Fraction; leave exact scalars alone."""
    if isinstance(x, (Fraction, QuadExt)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise ExactError(f"Not an exact scalar: {x!r}")


def collapse(x):
    """Return a rational QuadExt as a plain Fraction."""
    if isinstance(x, QuadExt) and x.b == 0:
        return x.a
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) or (isinstance(x, QuadExt) and x.b == 0)


def sort_key(x):
    """Total order on exact scalars: rationals first, then by (d, a, b)."""
    x = collapse(x)
    if isinstance(x, Fraction):
        return (0, x, Fraction(0), Fraction(0))
    return (1, Fraction(x.d), x.a, x.b)


def field_tag(x) -> str:
    x = collapse(x)
    if isinstance(x, Fraction):
        return "Q"
    return f"Q(sqrt({x.d}))"


def common_field(values) -> int | None:
    """The d shared by the irrational entries of values, or None when all are rational."""
    d = None
    for v in values:
        v = collapse(v)
        if isinstance(v, QuadExt):
            if d is not None and v.d != d:
                raise MixedFieldError(f"Values span Q(sqrt {d}) and Q(sqrt {v.d})")
            d = v.d
    return d


# --- square roots ---


def sqrt_detect(x) -> Fraction | None:
    x = _fraction(x)
    if x < 0:
        return None
    num, num_exact = integer_nthroot(x.numerator, 2)
    den, den_exact = integer_nthroot(x.denominator, 2)
    if num_exact and den_exact:
        return Fraction(int(num), int(den))
    return None


def sqrt_detect_quad(x):
    """Exact square root of a + b*sqrt(d) inside Q(sqrt d), or None."""
    if not isinstance(x, QuadExt):
        return sqrt_detect(x)
    if x.b == 0:
        root = sqrt_detect(x.a)
        if root is not None:
            return QuadExt(root, 0, x.d)
        s = sqrt_detect(x.a / x.d)
        if s is not None:
            return QuadExt(0, s, x.d)
        return None
    n = sqrt_detect(x.norm())
    if n is None:
        return None
    for half in ((x.a + n) / 2, (x.a - n) / 2):
        s = sqrt_detect(half)
        if s:
            return QuadExt(s, x.b / (2 * s), x.d)
    return None


def squarefree_split(n) -> tuple[Fraction, int]:
    """Write a rational n as k**2 * d with d a squarefree integer."""
    n = _fraction(n)
    if n == 0:
        return Fraction(0), 1
    sign = -1 if n < 0 else 1
    p, q = abs(n.numerator), n.denominator
    d, k = sign, 1
    for prime, e in factorint(p * q).items():
        if e % 2:
            d *= prime
        k *= prime ** (e // 2)
    return Fraction(k, q), d


def sqrt_in_field(n):
    """sqrt of a rational as a Fraction when it is a square, else a QuadExt."""
    k, d = squarefree_split(n)
    if d == 1:
        return k
    return QuadExt(0, k, d)


# --- polynomials ---


def _coerce_coeff(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


@dataclass(frozen=True, slots=True)
class PolyExact:
    """Dense univariate polynomial; coeffs[i] multiplies x**i."""

    coeffs: tuple = ()

    def __post_init__(self):
        cs = [_coerce_coeff(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def x(cls) -> "PolyExact":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "PolyExact":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots) -> "PolyExact":
        result = cls((1,))
        for r in roots:
            result = result * cls((-r, 1))
        return result

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "PolyExact") -> "PolyExact":
        result = self(other)
        return result if isinstance(result, PolyExact) else PolyExact((result,))

    # --- arithmetic ---
    @staticmethod
    def _coerce(other):
        if isinstance(other, PolyExact):
            return other
        if isinstance(other, (int, Fraction, QuadExt)):
            return PolyExact((other,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyExact(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return PolyExact(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return PolyExact()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return PolyExact(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            inv = Fraction(1) / other if not isinstance(other, QuadExt) else other.inverse()
            return PolyExact(tuple(c * inv for c in self.coeffs))
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = PolyExact((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead_inv = 1 / other.leading
        for shift in range(len(quot) - 1, -1, -1):
            factor = rem[shift + len(other.coeffs) - 1] * lead_inv
            quot[shift] = factor
            if factor == 0:
                continue
            for j, b in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - factor * b
        return PolyExact(tuple(quot)), PolyExact(tuple(rem))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "PolyExact":
        return PolyExact(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def monic(self) -> "PolyExact":
        if not self.coeffs:
            return self
        return self / self.leading

    def gcd(self, other: "PolyExact") -> "PolyExact":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def is_squarefree(self) -> bool:
        if not self.coeffs:
            return False
        if self.degree < 2:
            return True
        return self.gcd(self.derivative()).degree == 0

    def is_rational(self) -> bool:
        return all(is_rational(c) for c in self.coeffs)

    def collapsed(self) -> "PolyExact":
        return PolyExact(tuple(collapse(c) for c in self.coeffs))

    def primitive(self) -> tuple[Fraction, "PolyExact"]:
        """Return (scale, P) with P = scale*self integral, content 1, positive leading."""
        if not self.coeffs:
            raise ExactError("the zero polynomial has no primitive form")
        cs = [collapse(c) for c in self.coeffs]
        if not all(isinstance(c, Fraction) for c in cs):
            raise ExactError("primitive form requires rational coefficients")
        den = lcm(*(c.denominator for c in cs))
        ints = [int(c * den) for c in cs]
        content = 0
        for v in ints:
            content = gcd(content, v)
        if ints[-1] < 0:
            content = -content
        scale = Fraction(den, content)
        return scale, PolyExact(tuple(Fraction(v // content) for v in ints))

    def to_sympy(self, var):
        cs = [collapse(c) for c in self.coeffs]
        if not all(isinstance(c, Fraction) for c in cs):
            raise ExactError("only rational polynomials convert to sympy")
        return sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(cs)] or [0],
            var,
            domain="QQ",
        )

    @classmethod
    def from_sympy(cls, poly) -> "PolyExact":
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return cls(tuple(coeffs))

    def render(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            c = collapse(c)
            if isinstance(c, QuadExt):
                body = f"({c})"
                negative = False
            else:
                negative = c < 0
                body = str(abs(c))
            if k > 0:
                power = var if k == 1 else f"{var}^{k}"
                body = power if body == "1" else f"{body}*{power}"
            if not terms:
                terms.append(f"-{body}" if negative else body)
            else:
                terms.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(terms)

    def __str__(self):
        return self.render()


# --- truncated series ---


@dataclass(frozen=True, slots=True)
class SeriesExact:
    """Power series known modulo x**order."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least one stored coefficient")
        object.__setattr__(self, "coeffs", tuple(_coerce_coeff(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_poly(cls, poly: PolyExact, order: int) -> "SeriesExact":
        return cls(tuple(poly.coefficient(k) for k in range(order)))

    def coefficient(self, k: int):
        return self.coeffs[k]

    def truncate(self, order: int) -> "SeriesExact":
        return SeriesExact(self.coeffs[: min(order, self.order)])

    def to_poly(self) -> PolyExact:
        return PolyExact(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, SeriesExact):
            return NotImplemented
        n = min(self.order, other.order)
        return SeriesExact(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)))

    def __neg__(self):
        return SeriesExact(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, SeriesExact):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)):
            return SeriesExact(tuple(c * other for c in self.coeffs))
        if not isinstance(other, SeriesExact):
            return NotImplemented
        n = min(self.order, other.order)
        out = []
        for k in range(n):
            acc = Fraction(0)
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return SeriesExact(tuple(out))

    __rmul__ = __mul__

    def vanishing_order(self, at=1) -> int:
        """Order of (self - at) at x=0; returns self.order when no nonzero term is stored."""
        shifted = list(self.coeffs)
        shifted[0] = shifted[0] - at
        for k, c in enumerate(shifted):
            if c != 0:
                return k
        return self.order


def generalized_binomial(e, j: int) -> Fraction:
    acc = Fraction(1)
    for i in range(j):
        acc = acc * (e - i)
    return acc / factorial(j)


def binomial_pow_coefficient(alpha, beta, e, k: int):
    """Coefficient of x**k in (1 + alpha*x + beta*x**2)**e; works over any ring values."""
    acc = Fraction(0)
    for i in range(k // 2 + 1):
        j = k - i
        term = generalized_binomial(e, j) * generalized_binomial(j, i)
        if term == 0:
            continue
        a_pow = alpha ** (j - i) if j - i else Fraction(1)
        b_pow = beta**i if i else Fraction(1)
        acc = acc + term * a_pow * b_pow
    return acc


def series_binomial_pow(alpha, beta, e, order: int) -> SeriesExact:
    if order < 1:
        raise ValueError("order must be positive")
    e = _fraction(e)
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    return SeriesExact(tuple(binomial_pow_coefficient(alpha, beta, e, k) for k in range(order)))


def series_pow(poly: PolyExact, e, order: int) -> SeriesExact:
    """poly**e modulo x**order by the standard power recurrence."""
    if order < 1:
        raise ValueError("order must be positive")
    e = _fraction(e)
    f0 = poly.coefficient(0)
    if f0 == 0:
        raise ExactError("series power needs a nonzero constant term")
    scale = Fraction(1)
    if f0 != 1:
        if e.denominator != 1:
            raise ExactError("fractional powers need constant term 1")
        scale = f0 ** int(e)
        poly = poly / f0
    f = poly.coeffs
    g = [Fraction(1)]
    for k in range(1, order):
        acc = Fraction(0)
        for i in range(1, min(k, len(f) - 1) + 1):
            acc = acc + ((e + 1) * i - k) * f[i] * g[k - i]
        g.append(acc / k)
    return SeriesExact(tuple(c * scale for c in g))


# --- root splitting ---


@dataclass(frozen=True)
class RootSplit:
    leading: object
    rational_roots: tuple  # ((root, multiplicity), ...)
    quadratic_factors: tuple  # ((monic quadratic, multiplicity), ...)
    residual: PolyExact  # monic, no rational roots, no quadratic factors found

    def product(self) -> PolyExact:
        result = PolyExact.constant(self.leading)
        for root, mult in self.rational_roots:
            result = result * PolyExact((-root, 1)) ** mult
        for quad, mult in self.quadratic_factors:
            result = result * quad**mult
        return result * self.residual


def _root_candidates(a0: int, an: int):
    if max(abs(a0), abs(an)) > _MAX_DIVISOR_TARGET:
        return None
    nums, dens = divisors(abs(a0)), divisors(abs(an))
    if len(nums) * len(dens) > _MAX_ROOT_CANDIDATES:
        return None
    found = {Fraction(n, d) for n, d in product(nums, dens)}
    return sorted(found | {-c for c in found})


def split_roots(poly: PolyExact) -> RootSplit:
    """Split a rational polynomial into rational roots, quadratic factors and a residual."""
    if not poly:
        raise ExactError("cannot split the zero polynomial")
    leading = collapse(poly.leading)
    _, work = poly.primitive()
    roots: dict[Fraction, int] = {}

    zeros = 0
    while work.coefficient(0) == 0:
        work = work // PolyExact.x()
        zeros += 1
    if zeros:
        roots[Fraction(0)] = zeros

    candidates = None
    if work.degree >= 1:
        candidates = _root_candidates(int(work.coefficient(0)), int(work.leading))
    if candidates is not None:
        for cand in candidates:
            while work.degree >= 1 and work(cand) == 0:
                work = work // PolyExact((-cand, 1))
                roots[cand] = roots.get(cand, 0) + 1
    else:
        logger.debug(f"Skipping rational-root search for degree {work.degree}; using sympy factoring")

    quadratics: list[tuple[PolyExact, int]] = []
    residual = work.monic()
    if residual.degree == 2 and candidates is not None:
        quadratics.append((residual, 1))
        residual = PolyExact((1,))
    elif residual.degree >= 2:
        var = sympy.Symbol("x")
        _, factors = sympy.factor_list(residual.to_sympy(var).as_expr(), var)
        residual = PolyExact((1,))
        for factor, mult in factors:
            piece = PolyExact.from_sympy(sympy.Poly(factor, var)).monic()
            if piece.degree == 1:
                root = -piece.coefficient(0)
                roots[root] = roots.get(root, 0) + mult
            elif piece.degree == 2:
                quadratics.append((piece, mult))
            else:
                residual = residual * piece**mult

    return RootSplit(
        leading=leading,
        rational_roots=tuple(sorted(roots.items())),
        quadratic_factors=tuple(quadratics),
        residual=residual,
    )


def quadratic_roots(quad: PolyExact) -> tuple:
    """Both roots of a quadratic, as Fractions or conjugate QuadExt values."""
    if quad.degree != 2:
        raise ExactError(f"expected a quadratic, got degree {quad.degree}")
    monic = quad.monic()
    B, C = collapse(monic.coefficient(1)), collapse(monic.coefficient(0))
    disc = B * B - 4 * C
    k, d = squarefree_split(disc)
    if d == 1:
        return tuple(sorted({-B / 2 + k / 2, -B / 2 - k / 2}))
    return (QuadExt(-B / 2, -k / 2, d), QuadExt(-B / 2, k / 2, d))


def all_roots(split: RootSplit) -> list:
    """Distinct roots resolved by a split (rational and quadratic), in sort_key order."""
    found = [r for r, _ in split.rational_roots]
    for quad, _ in split.quadratic_factors:
        found.extend(quadratic_roots(quad))
    return sorted(found, key=sort_key)
