"""HTTP facade over the hub.

All routes live under /api. Every mutating route requires a bearer
token; reads are open except the project file download, which must be
authenticated because the served file's ledger names the requester.
Errors come back as {code, message} with a stable code string per error
class, and every JSON response is canonically encoded (sorted keys) so
responses are byte-deterministic given state.
"""

from __future__ import annotations

import socket
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Any, Optional

import uvicorn
from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .canonical import canonical_bytes
from .config import Config
from .errors import BindFailure, Forbidden, RemixHubError, SchemaViolation, Unauthorized
from .platform import Hub


class CanonicalJSONResponse(JSONResponse):
    media_type = "application/json"

    def render(self, content: Any) -> bytes:
        return canonical_bytes(content)


def _bearer_token(request: Request) -> Optional[str]:
    header = request.headers.get("authorization", "")
    if not header:
        return None
    scheme, _, token = header.partition(" ")
    if scheme.lower() != "bearer" or not token.strip():
        raise Unauthorized("authorization header must be 'Bearer <token>'")
    return token.strip()


def _require_actor(hub: Hub, request: Request) -> str:
    token = _bearer_token(request)
    if token is None:
        raise Unauthorized("missing bearer token")
    return hub.authenticate(token)


def _optional_actor(hub: Hub, request: Request) -> Optional[str]:
    token = _bearer_token(request)
    return hub.authenticate(token) if token is not None else None


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception:
        raise SchemaViolation("request body must be a JSON object") from None
    if not isinstance(body, dict):
        raise SchemaViolation("request body must be a JSON object")
    return body


def _field(body: dict, name: str):
    if name not in body:
        raise SchemaViolation(f"missing field {name!r}")
    return body[name]


def create_app(hub: Hub, static_dir: Optional[Path] = None) -> FastAPI:
    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        hub.close()  # graceful shutdown flushes the commit point

    app = FastAPI(title="remixhub", default_response_class=CanonicalJSONResponse,
                  lifespan=lifespan)
    app.state.hub = hub

    @app.exception_handler(RemixHubError)
    async def platform_error(request: Request, exc: RemixHubError):
        return CanonicalJSONResponse(
            status_code=exc.http_status,
            content={"code": exc.code, "message": exc.message},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return CanonicalJSONResponse(
            status_code=400,
            content={"code": "SchemaViolation", "message": str(exc.errors()[:1])},
        )

    # -- health ----------------------------------------------------------

    @app.get("/api/health")
    async def health():
        return {"status": "ok"}

    # -- users ------------------------------------------------------------

    @app.post("/api/users", status_code=201)
    async def create_user(request: Request):
        _require_actor(hub, request)
        body = await _json_body(request)
        user = hub.create_user(str(_field(body, "username")))
        return {"token": user.token, "username": user.username}

    @app.get("/api/users/{name}")
    async def user_profile(name: str):
        return hub.user_profile(name)

    @app.post("/api/users/{name}/friends", status_code=201)
    async def add_friend(name: str, request: Request):
        actor = _require_actor(hub, request)
        if actor != name and not hub.community.require_user(actor).is_admin:
            raise Forbidden(f"token does not belong to {name!r}")
        body = await _json_body(request)
        return hub.add_friend(name, str(_field(body, "to")))

    # -- projects ------------------------------------------------------------

    @app.post("/api/projects", status_code=201)
    async def upload(request: Request):
        actor = _require_actor(hub, request)
        data = await request.body()
        return hub.upload_project(data, actor)

    @app.get("/api/projects/{project_id}")
    async def project_summary(project_id: int, request: Request):
        viewer = _optional_actor(hub, request)
        if viewer is not None:
            hub.record_view(project_id, viewer)
        return hub.project_summary(project_id)

    @app.get("/api/projects/{project_id}/file")
    async def download(project_id: int, request: Request):
        actor = _require_actor(hub, request)
        data = hub.fetch_project_file(project_id, actor)
        return Response(
            content=data,
            media_type="application/octet-stream",
            headers={"Content-Disposition": f'attachment; filename="{project_id}.pmp"'},
        )

    @app.get("/api/projects/{project_id}/lineage")
    async def lineage(project_id: int, direction: str = "ancestors", depth: int = 5):
        try:
            return hub.lineage_tree(project_id, depth, direction)
        except ValueError as exc:
            raise SchemaViolation(str(exc)) from None

    @app.post("/api/projects/{project_id}/tags", status_code=201)
    async def tag(project_id: int, request: Request):
        actor = _require_actor(hub, request)
        body = await _json_body(request)
        return hub.tag_project(project_id, actor, _field(body, "label"))

    @app.post("/api/projects/{project_id}/comments", status_code=201)
    async def comment(project_id: int, request: Request):
        actor = _require_actor(hub, request)
        body = await _json_body(request)
        return hub.comment_project(project_id, actor, _field(body, "text"))

    @app.post("/api/projects/{project_id}/rating", status_code=201)
    async def rate(project_id: int, request: Request):
        actor = _require_actor(hub, request)
        body = await _json_body(request)
        return hub.rate_project(project_id, actor, _field(body, "stars"))

    # -- galleries --------------------------------------------------------------

    @app.post("/api/galleries", status_code=201)
    async def create_gallery(request: Request):
        actor = _require_actor(hub, request)
        body = await _json_body(request)
        return hub.create_gallery(str(_field(body, "name")), actor)

    @app.post("/api/galleries/{gallery_id}/projects", status_code=201)
    async def gallery_add(gallery_id: int, request: Request):
        actor = _require_actor(hub, request)
        body = await _json_body(request)
        project_id = _field(body, "project_id")
        if type(project_id) is not int:
            raise SchemaViolation("project_id must be an integer")
        return hub.add_to_gallery(gallery_id, project_id, actor)

    # -- discovery & analytics ------------------------------------------------------

    @app.get("/api/front")
    async def front():
        return hub.front_page()

    @app.get("/api/stats")
    async def stats(window_days: Optional[int] = None):
        return hub.stats(window_days)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


def check_bind(host: str, port: int) -> None:
    """Probe the address before handing it to the server loop."""
    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
        probe.close()
    except OSError as exc:
        raise BindFailure(f"cannot bind {host}:{port}: {exc}") from None


def serve(config: Config, static_dir: Optional[Path] = None) -> None:
    """Open the data directory, bind, and serve until shutdown.

    Shutdown (signal or ^C) flushes the commit point via the app's
    shutdown hook.
    """
    hub = Hub(config.data_dir, config)
    app = create_app(hub, static_dir)
    check_bind(config.host, config.port)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
