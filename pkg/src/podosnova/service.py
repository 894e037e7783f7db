"""HTTP facade over the kernel for interactive editors.

JSON over HTTP with optimistic concurrency: mutations carry the revision
they were computed against and conflict with 409 when stale. Previews
apply an op to a scratch copy and return the display difference as a
ghost; the stored model is never touched.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import asdict
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from . import ops
from .catalog import MarkFamily, default_catalog
from .displaydoc import display_to_doc, primitive_to_doc
from .drafting import generate_plan_display
from .entities import (
    Anchor,
    AxisGroup,
    ColumnRef,
    FootingRef,
    Model,
    Orientation,
    PartitionType,
    Seat,
)
from .errors import KernelError, SchemaError, UnknownEntity
from .textdoc import doc_to_model, model_to_doc


class ModelStore:
    """In-memory store: one lock and a full revision history per model."""

    def __init__(self):
        self._lock = threading.Lock()
        self._models: dict[str, list[Model]] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._ids = itertools.count(1)

    def create(self, model: Model) -> str:
        with self._lock:
            model_id = f"m{next(self._ids)}"
            self._models[model_id] = [model]
            self._locks[model_id] = threading.Lock()
        return model_id

    def lock(self, model_id: str) -> threading.Lock:
        lock = self._locks.get(model_id)
        if lock is None:
            raise KeyError(model_id)
        return lock

    def revisions(self, model_id: str) -> list[Model]:
        revisions = self._models.get(model_id)
        if revisions is None:
            raise KeyError(model_id)
        return revisions


def _anchor_param(doc: dict) -> Anchor:
    return Anchor(
        h_axis=int(doc["h_axis"]),
        v_axis=int(doc["v_axis"]),
        dx_mm=int(doc.get("dx_mm", 0)),
        dy_mm=int(doc.get("dy_mm", 0)),
    )


def _column_ref(doc: dict) -> ColumnRef:
    return ColumnRef(group_id=int(doc["group"]), ix=int(doc["ix"]), iy=int(doc["iy"]))


def _footing_ref(doc: dict) -> FootingRef:
    return FootingRef(group_id=int(doc["group"]), ix=int(doc["ix"]), iy=int(doc["iy"]))


def _point(doc) -> tuple[int, int]:
    return (int(doc[0]), int(doc[1]))


def _dims(doc) -> tuple[int, int, int] | None:
    if doc is None:
        return None
    return (int(doc[0]), int(doc[1]), int(doc[2]))


def apply_op(model: Model, op: str, params: dict[str, Any]) -> Model:
    """Dispatch a named mutation with JSON params onto the kernel."""
    catalog = default_catalog()
    if op == "upsert_axis_group":
        group = AxisGroup(
            id=int(params.get("id", 0)),
            orientation=Orientation(params["orientation"]),
            count=int(params["count"]),
            label_start=str(params.get("label_start", "1")),
            step_mm=params.get("step_mm"),
            base_axis=params.get("base_axis"),
            offset_mm=params.get("offset_mm"),
        )
        return ops.upsert_axis_group(model, group)
    if op == "delete_axis_group":
        return ops.delete_axis_group(model, int(params["id"]))
    if op == "place_column_group":
        return ops.place_column_group(
            model,
            start=_anchor_param(params["start"]),
            end=_anchor_param(params["end"]),
            mark=params.get("mark"),
            unmarked_type=params.get("unmarked_type"),
            console_len_mm=params.get("console_len_mm"),
            console_left=bool(params.get("console_left", False)),
            center_offset=_point(params.get("center_offset", [0, 0])),
            along_x=bool(params.get("along_x", True)),
            is_new=bool(params.get("is_new", True)),
            catalog=catalog,
        )
    if op == "place_partition_chain":
        return ops.place_partition_chain(
            model,
            gost_type=PartitionType(params["gost_type"]),
            thickness_mm=int(params["thickness_mm"]),
            bearing=bool(params.get("bearing", False)),
            polyline=[_point(p) for p in params["polyline"]],
            is_new=bool(params.get("is_new", True)),
        )
    if op == "place_opening":
        placement = ops.OpeningPlacement(
            partition_id=int(params["partition"]),
            offset_mm=int(params["offset_mm"]),
            along_x=bool(params.get("along_x", True)),
            rot180=bool(params.get("rot180", False)),
        )
        return ops.place_opening(
            model,
            placement,
            gost_type=int(params["gost_type"]),
            mark=params.get("mark"),
            width_mm=params.get("width_mm"),
            height_mm=params.get("height_mm"),
            is_new=bool(params.get("is_new", True)),
            catalog=catalog,
        )
    if op == "cycle_opening_variant":
        return ops.cycle_opening_variant(model, int(params["id"]))
    if op == "place_beam":
        return ops.place_beam(
            model,
            end_a=_column_ref(params["end_a"]),
            end_b=_column_ref(params["end_b"]),
            mark=params.get("mark"),
            dims_mm=_dims(params.get("dims_mm")),
            is_new=bool(params.get("is_new", True)),
            catalog=catalog,
        )
    if op == "place_slab_group":
        return ops.place_slab_group(
            model,
            anchor=_anchor_param(params["anchor"]),
            count=int(params["count"]),
            mark=params.get("mark"),
            dims_mm=_dims(params.get("dims_mm")),
            along_x=bool(params.get("along_x", True)),
            is_new=bool(params.get("is_new", True)),
            catalog=catalog,
        )
    if op == "place_strip_foundation_chain":
        return ops.place_strip_foundation_chain(
            model,
            width_mm=int(params["width_mm"]),
            polyline=[_point(p) for p in params["polyline"]],
            is_new=bool(params.get("is_new", True)),
        )
    if op == "place_footing_group":
        return ops.place_footing_group(
            model,
            start=_anchor_param(params["start"]),
            end=_anchor_param(params["end"]),
            mark=params.get("mark"),
            dims_mm=_dims(params.get("dims_mm")),
            center_offset=_point(params.get("center_offset", [0, 0])),
            along_x=bool(params.get("along_x", True)),
            is_new=bool(params.get("is_new", True)),
            catalog=catalog,
        )
    if op == "place_foundation_beam":
        return ops.place_foundation_beam(
            model,
            end_a=_footing_ref(params["end_a"]),
            end_b=_footing_ref(params["end_b"]),
            seat_a=Seat(params.get("seat_a", "center")),
            mark=params.get("mark"),
            dims_mm=_dims(params.get("dims_mm")),
            is_new=bool(params.get("is_new", True)),
            catalog=catalog,
        )
    if op == "place_text":
        return ops.place_text(
            model,
            lines=str(params["lines"]),
            origin=_point(params["origin"]),
            leader_target=_point(params["leader_target"]),
            font_height_mm=params.get("font_height_mm"),
            line_step_mm=int(params.get("line_step_mm", 500)),
        )
    if op == "delete_entity":
        return ops.delete_entity(model, int(params["id"]))
    raise SchemaError(f"unknown op {op!r}", "$.op")


def _entity_ids(model: Model) -> set[int]:
    return {e.id for e in model.iter_entities()}


def _ghost_diff(before: Model, after: Model) -> dict:
    """Primitives present in the new display but not the old one."""
    old = {repr(p) for p in generate_plan_display(before).primitives}
    ghost = [
        primitive_to_doc(p)
        for p in generate_plan_display(after).primitives
        if repr(p) not in old
    ]
    return {"primitives": ghost}


def create_app(store: ModelStore | None = None) -> FastAPI:
    store = store or ModelStore()
    app = FastAPI(title="podosnova service")

    @app.exception_handler(KernelError)
    async def kernel_error_handler(_request, exc: KernelError):
        status = 400 if isinstance(exc, SchemaError) else 422
        if isinstance(exc, UnknownEntity):
            status = 404
        return JSONResponse(
            status_code=status, content={"error": exc.name, "detail": str(exc)}
        )

    @app.post("/models")
    async def create_model(body: dict):
        model = doc_to_model(body)
        model_id = store.create(model)
        return {"id": model_id, "revision": 0}

    def _revisions(model_id: str) -> list[Model]:
        try:
            return store.revisions(model_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"model {model_id} unknown")

    @app.get("/models/{model_id}")
    async def get_model(model_id: str, rev: int | None = None):
        revisions = _revisions(model_id)
        index = len(revisions) - 1 if rev is None else rev
        if not (0 <= index < len(revisions)):
            raise HTTPException(status_code=404, detail=f"revision {rev} unknown")
        return model_to_doc(revisions[index])

    @app.post("/models/{model_id}/ops")
    async def post_op(model_id: str, body: dict):
        op = body.get("op")
        params = body.get("params", {})
        expected = body.get("expected_revision")
        if not isinstance(op, str) or not isinstance(params, dict):
            raise SchemaError("body needs op (string) and params (object)", "$")
        _revisions(model_id)  # 404 before trying to lock
        with store.lock(model_id):
            revisions = _revisions(model_id)
            current = len(revisions) - 1
            if expected is not None and expected != current:
                return JSONResponse(
                    status_code=409,
                    content={
                        "error": "RevisionConflict",
                        "expected": expected,
                        "current": current,
                    },
                )
            before = revisions[-1]
            try:
                after = apply_op(before, op, params)
            except (KeyError, TypeError, ValueError) as exc:
                raise SchemaError(f"bad params for {op}: {exc}", "$.params")
            revisions.append(after)
            affected = sorted(_entity_ids(after) ^ _entity_ids(before))
            return {"revision": len(revisions) - 1, "affected_ids": affected}

    @app.get("/models/{model_id}/display")
    async def get_display(model_id: str, rev: int | None = None):
        revisions = _revisions(model_id)
        index = len(revisions) - 1 if rev is None else rev
        if not (0 <= index < len(revisions)):
            raise HTTPException(status_code=404, detail=f"revision {rev} unknown")
        doc = display_to_doc(generate_plan_display(revisions[index]))
        doc["revision"] = index
        return doc

    @app.post("/models/{model_id}/preview")
    async def post_preview(model_id: str, body: dict):
        op = body.get("op")
        params = body.get("params", {})
        if not isinstance(op, str) or not isinstance(params, dict):
            raise SchemaError("body needs op (string) and params (object)", "$")
        revisions = _revisions(model_id)
        model = revisions[-1]

        if op == "snap_opening_preview":
            cursor = _point(params["cursor"])
            width = int(params["width_mm"])
            placement = ops.snap_opening_preview(
                model,
                cursor,
                width,
                capture_radius_mm=int(
                    params.get("capture_radius_mm", ops.SNAP_CAPTURE_RADIUS_MM)
                ),
            )
            if placement is None:
                return {"placement": None, "ghost": {"primitives": []}}
            ghost_model = ops.place_opening(
                model,
                placement,
                gost_type=int(params.get("gost_type", 1)),
                width_mm=width,
                height_mm=int(params.get("height_mm", 2000)),
            )
            return {
                "placement": asdict(placement),
                "ghost": _ghost_diff(model, ghost_model),
            }

        try:
            after = apply_op(model, op, params)
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad params for {op}: {exc}", "$.params")
        return {"placement": None, "ghost": _ghost_diff(model, after)}

    @app.get("/catalog/{family}")
    async def get_catalog(family: str):
        try:
            fam = MarkFamily(family)
        except ValueError:
            raise HTTPException(status_code=404, detail=f"unknown family {family!r}")
        records = []
        for record in default_catalog().family(fam):
            records.append(
                {
                    "family": record.family.value,
                    "name": record.name,
                    "dims_mm": list(record.dims_mm),
                    "metric": None if record.metric is None else str(record.metric),
                    "trailer": record.trailer,
                    "series_note": record.series_note,
                    "bearing": record.bearing,
                }
            )
        return records

    return app


app = create_app()
