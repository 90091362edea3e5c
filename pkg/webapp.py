import json
import logging
import os

from flask import Flask, jsonify, request
from pydantic import ValidationError

from extensions import db
from hpgbelyi.cli import LIBRARY_ERRORS, CliError, certify_records, enumerate_records, hpg_value
from models import CertifiedMap

logger = logging.getLogger(__name__)


def create_app(test_config=None):
    """Create and configure the JSON service for certified maps."""
    app = Flask(__name__, instance_relative_config=True)

    # Load configuration from config.py, then any overrides
    app.config.from_object("config")
    if test_config:
        app.config.update(test_config)

    try:
        os.makedirs(app.instance_path)
    except OSError:
        pass

    # --- Initialize extensions ---
    db.init_app(app)
    with app.app_context():
        db.create_all()

    def bad_request(e):
        logger.warning(f"Rejected request to {request.path}: {e}")
        return jsonify({"error": str(e)}), 400

    # --- Routes ---
    @app.route("/api/enumerate", methods=["POST"])
    def enumerate_route():
        body = request.get_json(silent=True) or {}
        try:
            form = body["form"]
            p, r, m = int(body["p"]), int(body["r"]), int(body["m"])
            q = int(body["q"]) if body.get("q") is not None else None
            records = enumerate_records(
                form, p, q, r, m, bool(body.get("rescale", False)), body.get("dedup") == "orbit"
            )
        except KeyError as e:
            return bad_request(f"missing field {e}")
        except (CliError, TypeError, *LIBRARY_ERRORS) as e:
            return bad_request(e)

        for record in records:
            db.session.add(
                CertifiedMap(
                    form=record.form,
                    p=record.p,
                    q=record.q,
                    r=record.r,
                    m=record.m,
                    field=record.field,
                    rendered=record.rendered,
                    record=json.dumps(record.dump()),
                    valid=bool(record.certificate and record.certificate.valid),
                )
            )
        db.session.commit()
        logger.info(f"Stored {len(records)} maps for {form} m={m}")
        return jsonify([record.dump() for record in records])

    @app.route("/api/certify", methods=["POST"])
    def certify_route():
        payload = request.get_json(silent=True)
        if payload is None:
            return bad_request("expected a JSON map record or a list of them")
        try:
            records = certify_records(payload)
        except (ValidationError, *LIBRARY_ERRORS) as e:
            return bad_request(e)
        return jsonify([record.dump() for record in records])

    @app.route("/api/maps", methods=["GET"])
    def maps_route():
        query = CertifiedMap.query
        if request.args.get("form"):
            query = query.filter_by(form=request.args["form"])
        if request.args.get("m"):
            try:
                query = query.filter_by(m=int(request.args["m"]))
            except ValueError:
                return bad_request(f"m must be an integer, got {request.args['m']!r}")
        rows = query.order_by(CertifiedMap.id).all()
        return jsonify([json.loads(row.record) for row in rows])

    @app.route("/api/hpg", methods=["GET"])
    def hpg_route():
        try:
            record = hpg_value(
                int(request.args["N"]), request.args["b"], request.args["c"], request.args.get("z", "1")
            )
        except KeyError as e:
            return bad_request(f"missing query parameter {e}")
        except LIBRARY_ERRORS as e:
            return bad_request(e)
        return jsonify(record.model_dump(by_alias=True, mode="json"))

    return app
