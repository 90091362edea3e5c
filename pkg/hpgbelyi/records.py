"""JSON records for maps, certificates, curve points, Pell candidates and densities.

Exact scalars are written as strings ("num/den", den omitted when 1); elements of
a quadratic field as {"a": ..., "b": ..., "d": ...}.
"""

import logging
from fractions import Fraction
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

from constants import FORM_ONE_QUADRATIC, FORM_TWO_LINEAR, SCHEMA_VERSION
from hpgbelyi.belyi import BelyiCertificate, BelyiMap
from hpgbelyi.exact import ExactError, PolyExact, QuadExt, collapse

logger = logging.getLogger(__name__)


class RecordError(Exception):
    """Custom exception for malformed JSON records."""

    pass


class ScalarRecord(BaseModel):
    a: str
    b: str
    d: int


Scalar = str | ScalarRecord


def scalar_out(x) -> Scalar:
    """Record form of an exact scalar; labels such as "oo" pass through."""
    if isinstance(x, str):
        return x
    x = collapse(x)
    if isinstance(x, QuadExt):
        return ScalarRecord(a=str(x.a), b=str(x.b), d=x.d)
    return str(Fraction(x))


def scalar_in(data: Scalar):
    try:
        if isinstance(data, ScalarRecord):
            return collapse(QuadExt(Fraction(data.a), Fraction(data.b), data.d))
        return Fraction(data)
    except (ValueError, ZeroDivisionError, ExactError) as e:
        raise RecordError(f"Malformed scalar: {data!r}") from e


class FiberRecord(BaseModel):
    point: Scalar
    order: int
    count: int = 1


class CertificateRecord(BaseModel):
    degree: int
    vanishing_order: int
    zero_fiber: list[FiberRecord]
    one_fiber: list[FiberRecord]
    infinity_fiber: list[FiberRecord]
    total_points: int
    valid: bool
    reason: str = ""
    extra_vanishing: list[int] = Field(default_factory=list)

    @classmethod
    def from_certificate(cls, cert: BelyiCertificate) -> "CertificateRecord":
        def fiber(points):
            return [FiberRecord(point=scalar_out(pt.point), order=pt.order, count=pt.count) for pt in points]

        return cls(
            degree=cert.degree,
            vanishing_order=cert.vanishing_order,
            zero_fiber=fiber(cert.zero_fiber),
            one_fiber=fiber(cert.one_fiber),
            infinity_fiber=fiber(cert.infinity_fiber),
            total_points=cert.total_points,
            valid=cert.valid,
            reason=cert.reason,
            extra_vanishing=list(cert.extra_vanishing),
        )


class MapRecord(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    form: Literal["two-linear", "one-quadratic"]
    p: int
    q: int | None = None
    r: int
    m: int
    parameters: dict[str, Scalar]
    G: list[Scalar]
    scale: str = "1"
    field: str = "Q"
    rendered: str = ""
    certificate: CertificateRecord | None = None

    model_config = {"populate_by_name": True}

    @classmethod
    def from_map(cls, bmap: BelyiMap, cert: BelyiCertificate | None = None) -> "MapRecord":
        return cls(
            form=bmap.form,
            p=bmap.p,
            q=bmap.q,
            r=bmap.r,
            m=bmap.m,
            parameters={name: scalar_out(value) for name, value in bmap.parameters.items()},
            G=[scalar_out(c) for c in bmap.G.coeffs],
            scale=str(bmap.scale),
            field=bmap.field,
            rendered=bmap.render(),
            certificate=CertificateRecord.from_certificate(cert) if cert is not None else None,
        )

    def to_map(self) -> BelyiMap:
        if self.schema_version != SCHEMA_VERSION:
            raise RecordError(f"Unsupported schema {self.schema_version}")
        G = PolyExact(tuple(scalar_in(c) for c in self.G))
        params = {name: scalar_in(value) for name, value in self.parameters.items()}
        common = dict(form=self.form, p=self.p, r=self.r, m=self.m, G=G, scale=Fraction(self.scale))
        try:
            if self.form == FORM_TWO_LINEAR:
                return BelyiMap(q=self.q, lam=params["lambda"], **common)
            if self.form == FORM_ONE_QUADRATIC:
                return BelyiMap(alpha=params["alpha"], beta=params["beta"], **common)
        except KeyError as e:
            raise RecordError(f"Missing map parameter {e}") from e
        raise RecordError(f"Unknown form {self.form}")

    def dump(self) -> dict:
        return self.model_dump(by_alias=True, mode="json")


def load_map_records(payload) -> list[MapRecord]:
    """Accept a single record or a list of records."""
    items = payload if isinstance(payload, list) else [payload]
    try:
        return [MapRecord.model_validate(item) for item in items]
    except ValidationError as e:
        raise RecordError(f"Invalid map record: {e}") from e


class PellRecord(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    family: str
    n: int
    m: int
    d: int
    element: dict[str, str]
    z_roots: list[Scalar]
    companion_roots: list[Scalar]
    parity_valid: bool

    model_config = {"populate_by_name": True}


class ImageRecord(BaseModel):
    p_over_r: Scalar
    z: Scalar


class PointRecord(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    m: int
    u: str
    v: str
    images: list[ImageRecord] = Field(default_factory=list)

    model_config = {"populate_by_name": True}


class DensityRecord(BaseModel):
    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    approx: bool = True
    m: int
    rho: float
    alternative: float
    oval_period: float
    sub_integrals: list[float]
    infinite_integral: float
    odds_ratio: float
    infinite_odds_ratio: float
    discrepancy: float = 0.0

    model_config = {"populate_by_name": True}


class ValueRecord(BaseModel):
    """Named exact values from the surface and hypergeometric subcommands."""

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    kind: str
    values: dict[str, Scalar | list[Scalar]]

    model_config = {"populate_by_name": True}
