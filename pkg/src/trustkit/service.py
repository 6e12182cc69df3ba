"""HTTP session service exposing the engine to the study console.

JSON in, JSON out; the engine underneath is pure, so concurrent sessions
need no coordination beyond the store's per-session write lock.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .errors import ContradictionError, UnknownSessionError, ValidationError
from .scenario import fixture_names, load_fixture, load_scenario
from .session import SessionStore, state_document


def build_app(store: SessionStore, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="trustkit session service")

    @app.exception_handler(ValidationError)
    async def _validation(request: Request, exc: ValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(UnknownSessionError)
    async def _unknown(request: Request, exc: UnknownSessionError):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(ContradictionError)
    async def _contradiction(request: Request, exc: ContradictionError):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.get("/scenarios")
    async def list_scenarios():
        entries = []
        for name in fixture_names():
            scenario = load_fixture(name)
            entries.append(
                {
                    "name": scenario.name,
                    "narrative": scenario.narrative,
                    "models": [
                        {"id": m.id, "description": scenario.descriptions[m.id], "weight": w}
                        for m, w in zip(scenario.models, scenario.weights)
                    ],
                }
            )
        return entries

    @app.post("/sessions")
    async def create_session(body: dict):
        if "scenario" in body:
            scenario = load_scenario(body["scenario"])
        elif "scenario_name" in body:
            name = body["scenario_name"]
            if name not in fixture_names():
                raise ValidationError(f"unknown scenario name {name!r}; shipped: {fixture_names()}")
            scenario = load_fixture(name)
        else:
            raise ValidationError("request must carry 'scenario_name' or an inline 'scenario'")
        state = store.create(scenario, body.get("session_id"))
        return {"session_id": state.session_id, "state": state_document(state)}

    @app.get("/sessions/{session_id}")
    async def read_session(session_id: str):
        return state_document(store.get(session_id))

    @app.post("/sessions/{session_id}/observe")
    async def observe(session_id: str, body: dict):
        return store.step(session_id, {"kind": "observe", "observation": body.get("observation", body)})

    @app.post("/sessions/{session_id}/whatif")
    async def whatif(session_id: str, body: dict):
        return store.step(session_id, {"kind": "whatif", "observation": body.get("observation", body)})

    @app.post("/sessions/{session_id}/report")
    async def report(session_id: str, body: dict):
        return store.step(session_id, {"kind": "report", "responses": body.get("responses", body)})

    @app.get("/sessions/{session_id}/log", response_class=PlainTextResponse)
    async def session_log(session_id: str):
        return store.log_text(session_id)

    if static_dir is not None:
        root = Path(static_dir)
        if not root.is_dir():
            raise ValidationError(f"static dir {static_dir!r} does not exist")
        app.mount("/", StaticFiles(directory=str(root), html=True), name="console")

    return app
