"""
Tests for the HTTP report service
"""

import pytest
from fastapi.testclient import TestClient

from main import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as test_client:
        yield test_client


class TestHealth:
    def test_root(self, client):
        response = client.get("/")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"

    def test_health(self, client):
        body = client.get("/health").json()
        assert body["status"] == "healthy"
        assert body["services"]["lab_service"] is True


class TestReports:
    def test_classify(self, client):
        response = client.post("/classify", json={"ring": "Z8", "ideal": [0]})
        assert response.status_code == 200
        body = response.json()
        assert body["nil_prime"] is True
        assert body["witnesses"]["nil_prime"] == [4]
        assert body["witnesses"]["nil_principal"] == [0, 0]

    def test_ring_info(self, client):
        body = client.post("/rings/info", json={"ring": "Z8 x Z3"}).json()
        assert body["size"] == 24
        assert body["ideal_count"] == 8
        assert body["reduced"] is False

    def test_ring_ideals(self, client):
        body = client.post("/rings/ideals", json={"ring": "Z12"}).json()
        assert len(body["ideals"]) == 6

    def test_verify_one_ring(self, client):
        body = client.post("/verify", json={"ring": "Z8"}).json()
        assert body["rings"] == 1
        assert body["failed"] == 0

    def test_search_posted_catalog(self, client):
        body = client.post("/search", json={"catalog": ["Z8", "Z32"]}).json()
        assert [s["found"] for s in body["separators"]] == [True, True, True, False]
        assert body["separators"][0]["ring"] == "Z8"


class TestErrors:
    def test_parse_error_detail(self, client):
        response = client.post("/rings/info", json={"ring": "Z8 x"})
        assert response.status_code == 400
        detail = response.json()["detail"]
        assert detail["error"] == "ParseError"
        assert detail["offset"] == 4

    def test_invalid_descriptor(self, client):
        response = client.post("/classify", json={"ring": "Z4(+)Z3", "ideal": [0]})
        assert response.status_code == 400
        assert response.json()["detail"]["error"] == "InvalidDescriptor"

    def test_bad_catalog_line(self, client):
        response = client.post("/search", json={"catalog": ["Z8", "Z0"]})
        assert response.status_code == 400
        assert response.json()["detail"]["error"] == "CatalogError"

    def test_unbuildable_catalog_line(self, client):
        response = client.post("/verify", json={"catalog": ["Z8", "Z8/<9>"]})
        assert response.status_code == 400
        assert response.json()["detail"]["error"] == "CatalogError"
        assert "line 2" in response.json()["detail"]["message"]

    def test_missing_field(self, client):
        assert client.post("/classify", json={"ring": "Z8"}).status_code == 422
