from extensions import db


class CertifiedMap(db.Model):
    """One enumerated map with its certificate, stored as its JSON record."""

    __tablename__ = "certified_map"

    id = db.Column(db.Integer, primary_key=True)
    form = db.Column(db.String(20), nullable=False, index=True)
    p = db.Column(db.Integer, nullable=False)
    q = db.Column(db.Integer, nullable=True)
    r = db.Column(db.Integer, nullable=False)
    m = db.Column(db.Integer, nullable=False, index=True)
    field = db.Column(db.String(40), nullable=False, default="Q")
    rendered = db.Column(db.Text, nullable=False)
    record = db.Column(db.Text, nullable=False)
    valid = db.Column(db.Boolean, nullable=False, default=False)

    def __init__(self, **kwargs):
        super(CertifiedMap, self).__init__(**kwargs)

    def __repr__(self):
        return f"<CertifiedMap {self.id} {self.form} ({self.p},{self.q},{self.r}) m={self.m}>"
