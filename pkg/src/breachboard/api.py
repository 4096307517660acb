"""HTTP wire protocol over the session service.

JSON over HTTP, deliberately plain so any client language can speak it:

    POST /sessions                  create a session
    GET  /sessions/{id}?since=seq   view plus events after ``seq``
    POST /sessions/{id}/commands    place_token | request_ai_move | resign
    GET  /sessions/{id}/report      final report of a finished session
    GET  /sessions/{id}/hint        greedy suggestion for the seat to move
    GET  /catalog                   token catalog and factor taxonomy

Clients poll ``GET /sessions/{id}?since=`` for new events; verdicts are
computed server-side only.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .board import IllegalMoveError, ReplayError
from .catalog import CatalogError
from .service import SessionError, SessionService, UnknownSessionError
from .strategies import UnknownPolicyError


def make_app(service: SessionService) -> FastAPI:
    app = FastAPI(title="breachboard", docs_url=None, redoc_url=None)

    @app.exception_handler(UnknownSessionError)
    async def _unknown_session(_req: Request, exc: UnknownSessionError):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(UnknownPolicyError)
    async def _unknown_policy(_req: Request, exc: UnknownPolicyError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(IllegalMoveError)
    async def _illegal_move(_req: Request, exc: IllegalMoveError):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.exception_handler(SessionError)
    async def _session_error(_req: Request, exc: SessionError):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.exception_handler(CatalogError)
    async def _catalog_error(_req: Request, exc: CatalogError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.exception_handler(ReplayError)
    async def _replay_error(_req: Request, exc: ReplayError):
        return JSONResponse(status_code=500, content={"error": str(exc)})

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        return service.create_session(body or {})

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str, since: int = -1):
        return service.events_since(session_id, since)

    @app.post("/sessions/{session_id}/commands")
    async def post_command(session_id: str, request: Request):
        body = await request.json()
        return service.command(session_id, body or {})

    @app.get("/sessions/{session_id}/report")
    async def get_report(session_id: str):
        return service.report(session_id)

    @app.get("/sessions/{session_id}/hint")
    async def get_hint(session_id: str):
        return service.hint(session_id)

    @app.get("/catalog")
    async def get_catalog():
        return service.catalog_payload()

    return app
