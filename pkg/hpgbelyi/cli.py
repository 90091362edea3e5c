"""Command-line front end: enumerate, certify, surface, ec, pell, hpg and serve."""

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Literal

from pydantic import BaseModel, Field, ValidationError, field_validator

import config
from constants import EXIT_EMPTY, EXIT_OK, EXIT_USAGE, FORM_TWO_LINEAR, FORMS
from hpgbelyi.belyi import BelyiError, assemble_form2, certify, enumerate_maps, rescale
from hpgbelyi.elliptic import EllipticError, PointQ, mw_enumerate, period_density, specialize
from hpgbelyi.exact import ExactError, as_scalar
from hpgbelyi.hypergeom import HpgSpec, HypergeomError, hpg_poly
from hpgbelyi.pell import PellError, pell_to_candidates, solve_pell6, solve_pell10
from hpgbelyi.records import (
    DensityRecord,
    ImageRecord,
    MapRecord,
    PellRecord,
    PointRecord,
    RecordError,
    ValueRecord,
    load_map_records,
    scalar_out,
)
from hpgbelyi.surfaces import (
    SurfaceError,
    s3_param,
    s3_residual,
    s3_split_param,
    s4_param,
    s4_residual,
)

logger = logging.getLogger(__name__)

LIBRARY_ERRORS = (
    ExactError,
    HypergeomError,
    BelyiError,
    SurfaceError,
    EllipticError,
    PellError,
    RecordError,
    ValueError,
    ZeroDivisionError,
)


class CliError(Exception):
    """Custom exception for command-line usage problems."""

    pass


class RunConfig(BaseModel):
    command: str
    action: str | None = None
    output: str | None = None
    format: Literal["json", "table"] = "json"
    threads: int = Field(default=1, ge=1)
    verbose: bool = False
    params: dict = Field(default_factory=dict)

    @field_validator("command")
    @classmethod
    def known_command(cls, value):
        if value not in COMMANDS:
            raise ValueError(f"unknown command {value}")
        return value


# --- shared operations (also used by the web app) ---


def enumerate_records(
    form: str, p: int, q: int | None, r: int, m: int, do_rescale: bool = False, dedup: bool = False
) -> list[MapRecord]:
    if form not in FORMS:
        raise CliError(f"--form must be one of {', '.join(FORMS)}")
    result = enumerate_maps(form, p, q, r, m, dedup=dedup)
    records = []
    for bmap, cert in result.maps:
        if do_rescale:
            bmap = rescale(bmap)
            cert = certify(bmap)
        records.append(MapRecord.from_map(bmap, cert))
    logger.info(
        f"enumerate {form} (p,q,r,m)=({p},{q},{r},{m}): {len(records)} maps, class {result.solution.report.label}"
    )
    return records


def certify_records(payload) -> list[MapRecord]:
    return [MapRecord.from_map(bmap, certify(bmap)) for bmap in (rec.to_map() for rec in load_map_records(payload))]


def hpg_value(N: int, b, c, z) -> ValueRecord:
    poly = hpg_poly(HpgSpec(N, as_scalar(b), as_scalar(c)))
    value = poly(as_scalar(z))
    return ValueRecord(kind="hpg", values={"poly": [scalar_out(x) for x in poly.coeffs], "value": scalar_out(value)})


def _parse_point(text: str) -> PointQ:
    try:
        u, v = text.split(",")
        return PointQ.of(u, v)
    except ValueError as e:
        raise CliError(f"--point must look like u,v, got {text!r}") from e


def _point_record(m: int, spec, point: PointQ) -> PointRecord:
    try:
        images = [ImageRecord(p_over_r=scalar_out(c), z=scalar_out(z)) for c, z in spec.image(point)]
    except (EllipticError, SurfaceError) as e:
        logger.debug(f"No image for {point}: {e}")
        images = []
    return PointRecord(m=m, u=str(point.u), v=str(point.v), images=images)


# --- command handlers: each returns a list of records ---


def _cmd_enumerate(cfg: RunConfig) -> list:
    prm = cfg.params
    form = prm["form"]
    if form == FORM_TWO_LINEAR and prm.get("q") is None:
        raise CliError("--form two-linear needs -q")
    m_values = range(prm["m"], (prm.get("m_max") or prm["m"]) + 1)

    def job(m):
        return enumerate_records(form, prm["p"], prm.get("q"), prm["r"], m, prm["rescale"], prm["dedup"] == "orbit")

    if cfg.threads > 1 and len(m_values) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            batches = list(pool.map(job, m_values))
    else:
        batches = [job(m) for m in m_values]
    return [record for batch in batches for record in batch]


def _cmd_certify(cfg: RunConfig) -> list:
    path = cfg.params["input"]
    try:
        if path == "-":
            payload = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as handle:
                payload = json.load(handle)
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(f"cannot read map records from {path}: {e}") from e
    return certify_records(payload)


def _cmd_surface(cfg: RunConfig) -> list:
    prm = cfg.params
    degree = prm["degree"]
    if cfg.action == "eval":
        b, c, z = (as_scalar(prm[k]) for k in ("b", "c", "z"))
        residual = s3_residual(b, c, z) if degree == 3 else s4_residual(b, c, z)
        return [ValueRecord(kind=f"s{degree}", values={"residual": scalar_out(residual)})]
    if cfg.action == "param":
        if degree == 3:
            point = s3_param(prm["e"], prm["z"])
        else:
            point = s4_param(prm["t"], prm["y"])
        values = {"b": scalar_out(point.b), "c": scalar_out(point.c), "z": scalar_out(point.z)}
        return [ValueRecord(kind=f"s{degree}-param", values=values)]
    split = s3_split_param(prm["t"], prm["y"])
    values = {"b": scalar_out(split.b), "c": scalar_out(split.c), "roots": [scalar_out(x) for x in split.roots]}
    return [ValueRecord(kind="s3-split", values=values)]


def _cmd_ec(cfg: RunConfig) -> list:
    prm = cfg.params
    m = prm["m"]
    if cfg.action == "density":
        report = period_density(m, prm["tolerance"])
        return [
            DensityRecord(
                m=report.m,
                rho=report.rho,
                alternative=report.alternative,
                oval_period=report.oval_period,
                sub_integrals=list(report.sub_integrals),
                infinite_integral=report.infinite_integral,
                odds_ratio=report.odds_ratio,
                infinite_odds_ratio=report.infinite_odds_ratio,
                discrepancy=report.discrepancy,
            )
        ]
    spec = specialize(m)
    if cfg.action == "map":
        return [_point_record(m, spec, spec.curve.check(_parse_point(prm["point"])))]
    points = mw_enumerate(spec.spec.with_bound(prm["bound"]))
    return [_point_record(m, spec, point) for point in points]


def _cmd_pell(cfg: RunConfig) -> list:
    prm = cfg.params
    candidates = solve_pell6(prm["n_max"]) if prm["d"] == 6 else solve_pell10(prm["n_max"])
    if not prm["maps"]:
        return [
            PellRecord(
                family=c.family,
                n=c.n,
                m=c.m,
                d=c.d,
                element={"a": str(c.element.a), "b": str(c.element.b)},
                z_roots=[scalar_out(z) for z in c.z_roots],
                companion_roots=[scalar_out(z) for z in c.companion_roots],
                parity_valid=c.parity_valid,
            )
            for c in candidates
        ]
    records = []
    for c in candidates:
        if not c.parity_valid or c.m > prm["m_max"]:
            continue
        for item in pell_to_candidates(c):
            bmap = rescale(assemble_form2(item.p, item.r, item.m, item.alpha, item.beta))
            records.append(MapRecord.from_map(bmap, certify(bmap)))
    return records


def _cmd_hpg(cfg: RunConfig) -> list:
    prm = cfg.params
    return [hpg_value(prm["N"], prm["b"], prm["c"], prm["z"])]


def _cmd_serve(cfg: RunConfig) -> list:
    from webapp import create_app

    app = create_app()
    app.run(debug=False, use_reloader=False, host=cfg.params["host"], port=cfg.params["port"])
    return [None]


COMMANDS = {
    "enumerate": _cmd_enumerate,
    "certify": _cmd_certify,
    "surface": _cmd_surface,
    "ec": _cmd_ec,
    "pell": _cmd_pell,
    "hpg": _cmd_hpg,
    "serve": _cmd_serve,
}


# --- argument parsing ---


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hpgbelyi", description="Hypergeometric Belyi maps in exact arithmetic")
    ap.add_argument("--output", help="Write results to this file instead of stdout")
    ap.add_argument("--format", choices=["json", "table"], default="json")
    ap.add_argument("--threads", type=int, default=config.BELYI_THREADS, help="Worker cap (env BELYI_THREADS)")
    ap.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    sub = ap.add_subparsers(dest="command", required=True)

    en = sub.add_parser("enumerate", help="Solve, assemble and certify maps")
    en.add_argument("--form", choices=list(FORMS), required=True)
    en.add_argument("-p", type=int, required=True)
    en.add_argument("-q", type=int, default=None)
    en.add_argument("-r", type=int, required=True)
    en.add_argument("-m", type=int, required=True)
    en.add_argument("--m-max", type=int, default=None, help="Enumerate every m up to this value")
    en.add_argument("--rescale", action="store_true", help="Scale x so the prefactors are integral")
    en.add_argument("--dedup", choices=["orbit"], default=None)

    ce = sub.add_parser("certify", help="Re-certify JSON map records")
    ce.add_argument("--input", required=True, help="JSON file, or - for stdin")

    su = sub.add_parser("surface", help="Evaluate or parametrize the cubic and quartic surfaces")
    su_sub = su.add_subparsers(dest="action", required=True)
    ev = su_sub.add_parser("eval")
    ev.add_argument("--degree", type=int, choices=[3, 4], default=3)
    for name in ("b", "c", "z"):
        ev.add_argument(f"--{name}", required=True)
    pa = su_sub.add_parser("param")
    pa.add_argument("--degree", type=int, choices=[3, 4], default=3)
    for name in ("e", "z", "t", "y"):
        pa.add_argument(f"--{name}")
    sp = su_sub.add_parser("split")
    sp.add_argument("--degree", type=int, choices=[3], default=3)
    sp.add_argument("--t", required=True)
    sp.add_argument("--y", required=True)

    ec = sub.add_parser("ec", help="Curves for the one-quadratic maps at m = 5..8")
    ec_sub = ec.add_subparsers(dest="action", required=True)
    pts = ec_sub.add_parser("points")
    pts.add_argument("--m", type=int, choices=[5, 6, 7, 8], required=True)
    pts.add_argument("--bound", type=int, default=config.BELYI_MW_BOUND, help="Env BELYI_MW_BOUND")
    mp = ec_sub.add_parser("map")
    mp.add_argument("--m", type=int, choices=[5, 6, 7, 8], required=True)
    mp.add_argument("--point", required=True, help="u,v")
    de = ec_sub.add_parser("density")
    de.add_argument("--m", type=int, choices=[5, 6], required=True)
    de.add_argument("--tolerance", type=float, default=config.BELYI_QUAD_TOLERANCE, help="Env BELYI_QUAD_TOLERANCE")

    pe = sub.add_parser("pell", help="Pell-equation families")
    pe.add_argument("--d", type=int, choices=[6, 10], required=True)
    pe.add_argument("--n-max", type=int, default=4)
    pe.add_argument("--maps", action="store_true", help="Assemble and certify the maps of valid candidates")
    pe.add_argument("--m-max", type=int, default=30, help="Skip map assembly above this m")

    hp = sub.add_parser("hpg", help="Terminating 2F1 polynomials")
    hp_sub = hp.add_subparsers(dest="action", required=True)
    he = hp_sub.add_parser("eval")
    he.add_argument("-N", type=int, required=True)
    he.add_argument("--b", required=True)
    he.add_argument("--c", required=True)
    he.add_argument("--z", required=True)

    se = sub.add_parser("serve", help="Run the JSON web service")
    se.add_argument("--host", default="127.0.0.1")
    se.add_argument("--port", type=int, default=5000)
    return ap


def parse_config(argv) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    common = {key: args.pop(key) for key in ("command", "output", "format", "threads", "verbose")}
    action = args.pop("action", None)
    params = {key: value for key, value in args.items()}
    if common["command"] == "surface" and action == "param":
        needed = ("e", "z") if params["degree"] == 3 else ("t", "y")
        missing = [name for name in needed if params.get(name) is None]
        if missing:
            raise CliError(f"surface param --degree {params['degree']} needs {', '.join('--' + n for n in missing)}")
    return RunConfig(action=action, params=params, **common)


# --- output ---


def _record_dump(record) -> dict:
    return record.model_dump(by_alias=True, mode="json")


def _table_line(record) -> str:
    if isinstance(record, MapRecord):
        cert = record.certificate
        status = "valid" if cert and cert.valid else f"invalid ({cert.reason if cert else 'uncertified'})"
        params = ", ".join(f"{k}={v if isinstance(v, str) else _record_dump(v)}" for k, v in record.parameters.items())
        return f"{record.rendered}  [{record.field}] {params}  {status}"
    data = _record_dump(record)
    data.pop("schema", None)
    return "  ".join(f"{k}={v}" for k, v in data.items())


def render(records: list, fmt: str) -> str:
    if fmt == "table":
        return "\n".join(_table_line(r) for r in records) + "\n"
    return json.dumps([_record_dump(r) for r in records], indent=2) + "\n"


def run(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    except (CliError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if cfg.verbose else logging.INFO,
        format="%(asctime)s - %(levelname)s - %(message)s",
    )
    try:
        records = COMMANDS[cfg.command](cfg)
    except (CliError, *LIBRARY_ERRORS) as e:
        logger.error(f"{cfg.command} failed: {e}", exc_info=cfg.verbose)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if cfg.command == "serve":
        return EXIT_OK
    text = render(records, cfg.format)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if records else EXIT_EMPTY


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
