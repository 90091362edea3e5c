# Flask extensions are created unbound here so that models.py and webapp.py can
# both import `db`; create_app binds it with init_app.

from flask_sqlalchemy import SQLAlchemy

db = SQLAlchemy()
