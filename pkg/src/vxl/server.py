"""HTTP/JSON service for editor frontends and external runtimes.

Owns one program session: current source, last run report, history, and a
buffer for probe values reported by processes outside the interpreter
(POST /report-probe, default port 9911). Mutations are serialized through a
lock; GET endpoints never mutate. GET /events is a server-sent-event stream
of {programChanged, runCompleted, probeReported} notifications with no
payloads, so clients re-fetch what they display.
"""

from __future__ import annotations

import json
import queue
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, StreamingResponse

from . import markers
from .errors import (ConfigError, GuardError, MarkerError, ParseError,
                     UnknownIdError)
from .grid import build_grid, grid_to_json, grid_to_markdown
from .history import HistoryError, SnapshotStore
from .parser import parse
from . import nodes as N
from .runner import (RunReport, report_to_json, run_all_universes)
from .universes import collect_variation_tree, enumerate_universes

DEFAULT_PORT = 9911


@dataclass
class ExternalCapture:
    probe_id: str
    value: object  # raw JSON value
    universe: str
    unmatched: bool


@dataclass
class Session:
    source: str
    tree: N.Program = None
    last_report: Optional[RunReport] = None
    last_report_json: Optional[dict] = None
    history: SnapshotStore = field(default_factory=SnapshotStore)
    idgen: object = field(default_factory=markers.RandomIdGenerator)
    external_captures: List[ExternalCapture] = field(default_factory=list)

    def __post_init__(self):
        if self.tree is None:
            self.tree = parse(self.source)

    @classmethod
    def from_file(cls, path, idgen=None):
        source = Path(path).read_text(encoding="utf-8")
        session = cls(source=source)
        if idgen is not None:
            session.idgen = idgen
        return session

    def set_tree(self, tree: N.Program):
        self.tree = tree
        self.source = markers.print_program(tree)


def _error(status: int, message: str, **extra):
    return JSONResponse({"error": message, **extra}, status_code=status)


def _status_for(exc: Exception) -> int:
    if isinstance(exc, UnknownIdError):
        return 404
    if isinstance(exc, (GuardError,)):
        return 409
    if isinstance(exc, (MarkerError, ConfigError, ParseError, HistoryError)):
        return 422
    raise exc


def create_app(session: Session) -> FastAPI:
    app = FastAPI(title="multiverse exploration server")
    lock = threading.RLock()
    subscribers: List[queue.Queue] = []
    subscribers_lock = threading.Lock()

    def publish(event_type: str):
        with subscribers_lock:
            for q in list(subscribers):
                q.put(event_type)

    async def body_json(request: Request):
        raw = await request.body()
        if not raw:
            return {}
        try:
            data = json.loads(raw)
        except json.JSONDecodeError:
            return None
        if not isinstance(data, dict):
            return None
        return data

    def probe_ids_in_tree() -> set:
        return {n.pid for n in N.walk(session.tree)
                if isinstance(n, N.Probe)}

    # --- program ---

    @app.get("/program")
    async def get_program():
        with lock:
            return {"source": session.source}

    @app.put("/program")
    async def put_program(request: Request):
        data = await body_json(request)
        if data is None or "source" not in data \
                or not isinstance(data["source"], str):
            return _error(400, "body must be JSON with a 'source' string")
        source = data["source"]
        try:
            tree = parse(source)
        except ParseError as exc:
            return _error(422, exc.message, line=exc.line, column=exc.col,
                          expected=exc.expected)
        with lock:
            session.tree = tree
            session.source = source
            session.history.record(source, report=session.last_report_json)
        publish("programChanged")
        return {"source": session.source}

    # --- runs, universes, grid ---

    @app.post("/run")
    async def post_run(request: Request):
        data = await body_json(request)
        if data is None:
            return _error(400, "body must be a JSON object")
        entry = data.get("entry")
        if entry is not None and not isinstance(entry, str):
            return _error(400, "'entry' must be a string")
        with lock:
            try:
                report = run_all_universes(session.tree, entry)
            except (ConfigError, GuardError) as exc:
                return _error(_status_for(exc), str(exc))
            session.last_report = report
            session.last_report_json = report_to_json(report)
            session.external_captures.clear()
        publish("runCompleted")
        return session.last_report_json

    @app.get("/universes")
    async def get_universes():
        with lock:
            try:
                vt = collect_variation_tree(session.tree)
                universes = enumerate_universes(vt)
            except (ConfigError, GuardError) as exc:
                return _error(_status_for(exc), str(exc))
            statuses = {}
            if session.last_report is not None:
                statuses = {run.universe.label: run.status
                            for run in session.last_report.universes}
            return [
                {"index": u.index, "label": u.label,
                 "assignment": u.assignment,
                 **({"status": statuses[u.label]}
                    if u.label in statuses else {})}
                for u in universes
            ]

    @app.get("/grid")
    async def get_grid(pivot: Optional[str] = None, format: str = "json"):
        if format not in ("json", "markdown"):
            return _error(400, f"unknown format '{format}'")
        with lock:
            if session.last_report is None:
                return _error(409, "no run available; POST /run first")
            try:
                model = build_grid(session.last_report, pivot)
            except (ConfigError, GuardError) as exc:
                return _error(_status_for(exc), str(exc))
            if format == "markdown":
                from fastapi.responses import PlainTextResponse
                return PlainTextResponse(grid_to_markdown(model))
            return grid_to_json(model)

    # --- marker editing ---

    def _edit(op):
        with lock:
            try:
                result = op()
            except (MarkerError, ConfigError, ParseError) as exc:
                return _error(_status_for(exc), str(exc))
        publish("programChanged")
        return result

    def _span_from(data):
        if data is None or "start" not in data or "end" not in data:
            return None
        try:
            start, end = int(data["start"]), int(data["end"])
        except (TypeError, ValueError):
            return None
        return N.Span(start, end)

    @app.post("/markers/variation")
    async def post_marker_variation(request: Request):
        data = await body_json(request)
        span = _span_from(data)
        if span is None:
            return _error(400, "body must carry integer 'start' and 'end'")

        def op():
            tree, vid = markers.wrap_in_variation(session.tree, span,
                                                  session.idgen)
            session.set_tree(tree)
            return {"id": vid}

        return _edit(op)

    @app.post("/markers/probe")
    async def post_marker_probe(request: Request):
        data = await body_json(request)
        span = _span_from(data)
        if span is None:
            return _error(400, "body must carry integer 'start' and 'end'")

        def op():
            tree, pid = markers.wrap_in_probe(session.tree, span,
                                              session.idgen)
            session.set_tree(tree)
            return {"id": pid}

        return _edit(op)

    @app.post("/markers/replacement")
    async def post_marker_replacement(request: Request):
        data = await body_json(request)
        span = _span_from(data)
        if span is None or not isinstance(data.get("replacement"), str):
            return _error(400, "body must carry 'start', 'end', and a "
                               "'replacement' expression string")

        def op():
            tree, rid = markers.wrap_in_replacement(
                session.tree, span, data["replacement"], session.idgen)
            session.set_tree(tree)
            return {"id": rid}

        return _edit(op)

    @app.post("/variation/{vp_id}/active")
    async def post_active(vp_id: str, request: Request):
        data = await body_json(request)
        if data is None or not isinstance(data.get("index"), int):
            return _error(400, "body must carry an integer 'index'")

        def op():
            session.set_tree(markers.set_active(session.tree, vp_id,
                                                data["index"]))
            return {"source": session.source}

        return _edit(op)

    @app.post("/variation/{vp_id}/alt/{index}/disabled")
    async def post_disabled(vp_id: str, index: int, request: Request):
        data = await body_json(request)
        if data is None or not isinstance(data.get("disabled"), bool):
            return _error(400, "body must carry a boolean 'disabled'")

        def op():
            session.set_tree(markers.set_disabled(session.tree, vp_id,
                                                  index, data["disabled"]))
            return {"source": session.source}

        return _edit(op)

    @app.post("/variation/{vp_id}/rename")
    async def post_rename(vp_id: str, request: Request):
        data = await body_json(request)
        if data is None or not isinstance(data.get("name"), str):
            return _error(400, "body must carry a 'name' string")
        alt_index = data.get("altIndex")
        if alt_index is not None and not isinstance(alt_index, int):
            return _error(400, "'altIndex' must be an integer")

        def op():
            session.set_tree(markers.rename(session.tree, vp_id, alt_index,
                                            data["name"]))
            return {"source": session.source}

        return _edit(op)

    @app.post("/variation/{vp_id}/alternative")
    async def post_alternative(vp_id: str, request: Request):
        data = await body_json(request)
        if data is None:
            return _error(400, "body must be a JSON object")
        body = data.get("body")
        if body is not None and not isinstance(body, str):
            return _error(400, "'body' must be a string")

        def op():
            session.set_tree(markers.add_alternative(session.tree, vp_id,
                                                     body))
            return {"source": session.source}

        return _edit(op)

    @app.post("/cleanup")
    async def post_cleanup():
        def op():
            session.set_tree(markers.cleanup(session.tree))
            return {"source": session.source}

        return _edit(op)

    # --- history ---

    @app.get("/history")
    async def get_history():
        with lock:
            return [{"index": s.index, "timestamp": s.timestamp,
                     "hasReport": s.report is not None}
                    for s in session.history.snapshots]

    @app.get("/history/{index}")
    async def get_snapshot(index: int):
        with lock:
            try:
                snap = session.history.get(index)
            except HistoryError as exc:
                return _error(404, str(exc))
            return snap.to_json()

    @app.post("/history/{index}/restore")
    async def post_restore(index: int):
        with lock:
            try:
                source = session.history.restore(index)
            except HistoryError as exc:
                return _error(404, str(exc))
            session.tree = parse(source)
            session.source = source
            # a restore is a save of old code, so it snapshots too
            session.history.record(source, report=session.last_report_json)
        publish("programChanged")
        return {"source": source}

    # --- external probe reports (the localhost wire protocol) ---

    @app.post("/report-probe")
    async def post_report_probe(request: Request):
        data = await body_json(request)
        if data is None or "id" not in data \
                or not isinstance(data["id"], str):
            return _error(400, "body must carry a string 'id'")
        if "value" not in data:
            return _error(400, "body must carry a 'value'")
        universe = data.get("universe", "external")
        if not isinstance(universe, str):
            universe = str(universe)
        with lock:
            capture = ExternalCapture(
                probe_id=data["id"], value=data["value"], universe=universe,
                unmatched=data["id"] not in probe_ids_in_tree())
            session.external_captures.append(capture)
        publish("probeReported")
        return {"ok": True, "unmatched": capture.unmatched}

    @app.get("/external-captures")
    async def get_external_captures():
        with lock:
            return [{"id": c.probe_id, "value": c.value,
                     "universe": c.universe, "unmatched": c.unmatched}
                    for c in session.external_captures]

    # --- events ---

    @app.get("/events")
    async def get_events():
        q: queue.Queue = queue.Queue()
        with subscribers_lock:
            subscribers.append(q)

        def stream():
            try:
                while True:
                    try:
                        event_type = q.get(timeout=15)
                    except queue.Empty:
                        yield ": keepalive\n\n"
                        continue
                    yield f"data: {json.dumps({'type': event_type})}\n\n"
            finally:
                with subscribers_lock:
                    if q in subscribers:
                        subscribers.remove(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    _mount_frontend(app)
    return app


def _mount_frontend(app: FastAPI):
    """Serve the companion web UI when its build output is present."""
    dist = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if dist.is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/ui", StaticFiles(directory=str(dist), html=True),
                  name="ui")


def serve(session: Session, port: int = DEFAULT_PORT, host: str = "127.0.0.1"):
    import uvicorn

    app = create_app(session)
    uvicorn.run(app, host=host, port=port, log_level="warning")
