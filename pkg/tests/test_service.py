import pytest
from fastapi.testclient import TestClient

from podosnova.service import create_app
from podosnova.textdoc import model_to_doc


@pytest.fixture()
def client():
    return TestClient(create_app())


@pytest.fixture()
def model_id(client, ref_model):
    response = client.post("/models", json=model_to_doc(ref_model))
    assert response.status_code == 200
    return response.json()["id"]


def place_text_op(expected=None):
    body = {
        "op": "place_text",
        "params": {"lines": "проба", "origin": [0, 0], "leader_target": [500, 500]},
    }
    if expected is not None:
        body["expected_revision"] = expected
    return body


def test_create_and_fetch(client, ref_model, model_id):
    response = client.get(f"/models/{model_id}")
    assert response.status_code == 200
    assert response.json() == model_to_doc(ref_model)


def test_unknown_model_404(client):
    assert client.get("/models/nope").status_code == 404
    assert client.post("/models/nope/ops", json=place_text_op()).status_code == 404


def test_create_rejects_bad_doc(client):
    response = client.post("/models", json={"format": "wrong"})
    assert response.status_code == 400
    assert response.json()["error"] == "SchemaError"


def test_op_advances_revision(client, model_id):
    response = client.post(f"/models/{model_id}/ops", json=place_text_op(0))
    assert response.status_code == 200
    body = response.json()
    assert body["revision"] == 1
    assert len(body["affected_ids"]) == 1


def test_stale_revision_conflicts(client, model_id):
    assert client.post(f"/models/{model_id}/ops", json=place_text_op(0)).status_code == 200
    response = client.post(f"/models/{model_id}/ops", json=place_text_op(0))
    assert response.status_code == 409
    assert response.json()["current"] == 1


def test_kernel_error_maps_to_422(client, model_id):
    body = {
        "op": "place_beam",
        "params": {
            "end_a": {"group": 5, "ix": 0, "iy": 0},
            "end_b": {"group": 5, "ix": 1, "iy": 0},
            "mark": "2БСО 12-6 АШв",
        },
        "expected_revision": 0,
    }
    response = client.post(f"/models/{model_id}/ops", json=body)
    assert response.status_code == 422
    assert response.json()["error"] == "PlanKindForbidden"


def test_span_mismatch_error_name(client, ref_model):
    from podosnova.derive import derive_ceiling_plan

    ceiling_doc = model_to_doc(derive_ceiling_plan(ref_model))
    model_id = client.post("/models", json=ceiling_doc).json()["id"]
    body = {
        "op": "place_beam",
        "params": {
            "end_a": {"group": 5, "ix": 0, "iy": 0},
            "end_b": {"group": 5, "ix": 3, "iy": 0},
            "mark": "ИБ 8-21",
        },
    }
    response = client.post(f"/models/{model_id}/ops", json=body)
    assert response.status_code == 422
    assert response.json()["error"] == "SpanMismatch"


def test_unknown_op_is_schema_error(client, model_id):
    response = client.post(
        f"/models/{model_id}/ops", json={"op": "explode", "params": {}}
    )
    assert response.status_code == 400
    assert response.json()["error"] == "SchemaError"


def test_display_reproducible_per_revision(client, model_id):
    first = client.get(f"/models/{model_id}/display").json()
    client.post(f"/models/{model_id}/ops", json=place_text_op(0))
    again = client.get(f"/models/{model_id}/display", params={"rev": 0}).json()
    assert again == {**first, "revision": 0}
    latest = client.get(f"/models/{model_id}/display").json()
    assert latest["revision"] == 1
    assert len(latest["primitives"]) > len(first["primitives"])


def test_preview_leaves_model_untouched(client, model_id):
    before = client.get(f"/models/{model_id}").json()
    response = client.post(f"/models/{model_id}/preview", json=place_text_op())
    assert response.status_code == 200
    assert response.json()["ghost"]["primitives"]
    assert client.get(f"/models/{model_id}").json() == before


def test_preview_snap_opening(client, model_id):
    body = {
        "op": "snap_opening_preview",
        "params": {"cursor": [4500, 100], "width_mm": 900, "gost_type": 1},
    }
    response = client.post(f"/models/{model_id}/preview", json=body)
    assert response.status_code == 200
    placement = response.json()["placement"]
    assert placement is not None and placement["offset_mm"] == 4050
    assert response.json()["ghost"]["primitives"]


def test_preview_snap_misses(client, model_id):
    body = {
        "op": "snap_opening_preview",
        "params": {"cursor": [-9000, -9000], "width_mm": 900},
    }
    response = client.post(f"/models/{model_id}/preview", json=body)
    assert response.json() == {"placement": None, "ghost": {"primitives": []}}


def test_catalog_endpoint(client):
    response = client.get("/catalog/beam")
    assert response.status_code == 200
    names = {r["name"] for r in response.json()}
    assert "2БСО 12-6 АШв" in names
    assert client.get("/catalog/nonsense").status_code == 404


def test_op_roundtrip_axis_group(client, ref_model):
    from podosnova.entities import Model, PlanKind

    empty_doc = model_to_doc(Model(kind=PlanKind.FLOOR))
    model_id = client.post("/models", json=empty_doc).json()["id"]
    body = {
        "op": "upsert_axis_group",
        "params": {"orientation": "h", "count": 3, "step_mm": 6000,
                   "label_start": "А"},
        "expected_revision": 0,
    }
    response = client.post(f"/models/{model_id}/ops", json=body)
    assert response.status_code == 200
    doc = client.get(f"/models/{model_id}").json()
    assert len(doc["axis_groups_h"]) == 1
    assert doc["axis_groups_h"][0]["count"] == 3
