import pytest

from webapp import create_app


@pytest.fixture
def client(tmp_path):
    app = create_app({"TESTING": True, "SQLALCHEMY_DATABASE_URI": "sqlite://"})
    app.instance_path = str(tmp_path)
    with app.test_client() as client:
        yield client


def test_enumerate_stores_maps(client):
    response = client.post("/api/enumerate", json={"form": "one-quadratic", "p": 1, "r": 2, "m": 1})
    assert response.status_code == 200
    records = response.get_json()
    assert len(records) == 1
    assert records[0]["certificate"]["valid"] is True

    stored = client.get("/api/maps?m=1").get_json()
    assert len(stored) == 1
    assert stored[0]["G"] == records[0]["G"]
    assert client.get("/api/maps?form=two-linear").get_json() == []


def test_enumerate_rejects_bad_requests(client):
    response = client.post("/api/enumerate", json={"form": "one-quadratic", "p": 1, "m": 1})
    assert response.status_code == 400
    assert "r" in response.get_json()["error"]
    response = client.post("/api/enumerate", json={"form": "two-linear", "p": 1, "q": 1, "r": 0, "m": 1})
    assert response.status_code == 400
    assert client.get("/api/maps?m=one").status_code == 400


def test_certify_route(client):
    records = client.post("/api/enumerate", json={"form": "two-linear", "p": 1, "q": 1, "r": 1, "m": 1}).get_json()
    response = client.post("/api/certify", json=records)
    assert response.status_code == 200
    assert all(r["certificate"]["valid"] for r in response.get_json())
    assert client.post("/api/certify", json={"form": "nope"}).status_code == 400


def test_hpg_route(client):
    response = client.get("/api/hpg?N=2&b=1&c=1&z=1")
    assert response.status_code == 200
    assert response.get_json()["values"]["value"] == "0"
    assert client.get("/api/hpg?N=2&b=1").status_code == 400
    assert client.get("/api/hpg?N=3&b=1&c=-1").status_code == 400
