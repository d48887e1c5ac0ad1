"""FastAPI application wiring the engine and the record/replay store."""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException

from .engine import MASK_TOKEN, EngineError, ModelEngine
from .schemas import (
    Candidate,
    FillRequest,
    FillResponse,
    HealthResponse,
    LossRequest,
    LossResponse,
)
from .store import FixtureStore


def create_app(
    model_name: str | None = None,
    engine: "ModelEngine | None" = None,
    record_dir: str | Path | None = None,
    replay_dir: str | Path | None = None,
) -> FastAPI:
    if replay_dir is not None and (model_name or engine or record_dir):
        raise ValueError("replay mode excludes model and record options")
    if engine is None and model_name is not None:
        engine = ModelEngine(model_name)
    store: FixtureStore | None = None
    if replay_dir is not None:
        store = FixtureStore(replay_dir, writable=False)
        mode = "fixture"
    elif record_dir is not None:
        store = FixtureStore(record_dir, writable=True)
        mode = "record"
    else:
        mode = "model"

    app = FastAPI(title="uslt-sidecar")

    @app.post("/v1/fill", response_model=FillResponse)
    def fill(request: FillRequest) -> FillResponse:
        if request.masked.count(MASK_TOKEN) == 0:
            raise HTTPException(400, "masked sentence contains no mask token")
        if mode == "fixture":
            recorded = store.lookup_fill(request.original, request.masked, request.top_n)
            if recorded is None:
                raise HTTPException(404, "no recorded response for this request")
            return FillResponse(**recorded)
        if engine is None:
            raise HTTPException(503, "model not loaded")
        try:
            slots = engine.fill(request.original, request.masked, request.top_n)
        except EngineError as exc:
            raise HTTPException(400, str(exc)) from exc
        response = FillResponse(
            slots=[[Candidate(token=t, prob=p) for t, p in slot] for slot in slots]
        )
        if mode == "record":
            store.record_fill(
                request.model_dump(), response.model_dump(mode="json")
            )
        return response

    @app.post("/v1/loss", response_model=LossResponse)
    def loss(request: LossRequest) -> LossResponse:
        if mode == "fixture":
            recorded = store.lookup_loss(request.sentence, request.position)
            if recorded is None:
                raise HTTPException(404, "no recorded response for this request")
            return LossResponse(**recorded)
        if engine is None:
            raise HTTPException(503, "model not loaded")
        try:
            value = engine.loss(request.sentence, request.position)
        except EngineError as exc:
            raise HTTPException(400, str(exc)) from exc
        response = LossResponse(loss=value)
        if mode == "record":
            store.record_loss(request.model_dump(), response.model_dump(mode="json"))
        return response

    @app.get("/v1/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        ready = mode == "fixture" or engine is not None
        if not ready:
            raise HTTPException(503, "model not loaded")
        return HealthResponse(
            status="ready",
            model=getattr(engine, "model_name", "none") if engine else "none",
            mode=mode,
        )

    return app
