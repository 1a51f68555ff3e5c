"""HTTP study service: serves stimuli in plan order and records sketches.

JSON API:
  POST /api/sessions                      {participant?} -> {id, participant}
  GET  /api/sessions/{id}/stimulus        -> current stimulus (series + svg)
  POST /api/sessions/{id}/sketch          {stimulus, action, stroke?}
  GET  /api/sessions/{id}/report          -> preservation reports

Stimuli are regenerated deterministically from the service seed, so a
session's stimuli can always be re-derived for analysis.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .classify import DatasetProperties
from .core import (
    DEFAULT_RESAMPLE_COUNT,
    CanvasSpec,
    StrokeRecord,
    TimeSeries,
    load_series_csv,
    rescale_to_canvas,
)
from .errors import DataError, InvalidStrokeError, LineSketchError, SequencingError
from .report import analyze_pair, corpus_report
from .study import Session, SessionStore, build_stimulus_plan, make_stimulus
from .svgplot import line_chart_svg

DATA_DIR_ENV = "LINESKETCH_DATA"


@dataclass
class ServiceConfig:
    data_dir: Path
    seed: int = 7
    n_target: int = DEFAULT_RESAMPLE_COUNT
    canvas: CanvasSpec = field(default_factory=CanvasSpec)
    store_dir: Path | None = None
    allow_custom_counts: bool = False


class StudyService:
    """Session bookkeeping plus stimulus generation over a dataset directory.

    The data directory holds one CSV per dataset and, optionally,
    ``properties.json`` mapping dataset name to its feature catalog.
    """

    def __init__(self, config: ServiceConfig):
        self.config = config
        data_dir = Path(config.data_dir)
        csvs = sorted(data_dir.glob("*.csv"))
        if not csvs:
            raise DataError(f"no dataset CSV files in {data_dir}")
        self.datasets = {path.stem: load_series_csv(path) for path in csvs}
        self.dataset_names = [path.stem for path in csvs]
        self.properties = self._load_properties(data_dir / "properties.json")
        self.store = SessionStore(config.store_dir or data_dir / "sessions")
        self._sessions: dict[str, Session] = {}
        self._guard = threading.Lock()
        self._session_locks: dict[str, threading.Lock] = {}
        for session_id in self.store.list_ids():
            self._sessions[session_id] = self.store.load(session_id)

    def _session_lock(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._session_locks.setdefault(session_id, threading.Lock())

    @staticmethod
    def _load_properties(path: Path) -> dict[str, DatasetProperties]:
        if not path.exists():
            return {}
        with open(path) as fh:
            raw = json.load(fh)
        return {name: DatasetProperties.from_json(obj) for name, obj in raw.items()}

    # -- sessions ---------------------------------------------------------

    def create_session(self, participant: int | None = None) -> Session:
        with self._guard:
            if participant is None:
                participant = len(self._sessions)
            plan = build_stimulus_plan(
                self.dataset_names,
                participant,
                self.config.seed,
                allow_custom_counts=self.config.allow_custom_counts,
            )
            session = self.store.create(plan)
            self._sessions[session.id] = session
        return session

    def get_session(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise DataError(f"no such session: {session_id}") from None

    # -- stimuli ----------------------------------------------------------

    def stimulus_series(self, dataset: str, level) -> TimeSeries:
        base = self.datasets[dataset]
        return make_stimulus(base, level, self.config.seed, self.dataset_names.index(dataset))

    def stimulus_payload(self, session: Session) -> dict:
        if session.complete:
            return {"complete": True, "index": None, "total": len(session.plan)}
        index = session.current_index
        assignment = session.plan.assignments[index]
        series = self.stimulus_series(assignment.dataset, assignment.level)
        canvas_series = rescale_to_canvas(series, self.config.canvas)
        return {
            "complete": False,
            "index": index,
            "total": len(session.plan),
            "dataset": assignment.dataset,
            "level": assignment.level.value,
            "canvas": self.config.canvas.to_json(),
            "series": {
                "xs": [float(x) for x in canvas_series.xs],
                "ys": [float(y) for y in canvas_series.ys],
            },
            "svg": line_chart_svg(canvas_series, self.config.canvas),
        }

    # -- sketches ---------------------------------------------------------

    def submit_sketch(self, session_id: str, stimulus_index: int, stroke_obj: dict | None, action: str) -> dict:
        stroke = None
        if stroke_obj is not None:
            stroke = StrokeRecord.from_json(stroke_obj)
            stroke.validate_bounds()
        if action == "accept" and stroke is None:
            raise InvalidStrokeError("accept requires a stroke")
        # Read-check-append must be atomic per session, or racing accepts
        # would both pass the sequencing check against the same state.
        with self._session_lock(session_id):
            session = self.get_session(session_id)
            if stroke is not None:
                assignment = session.plan.assignments[stimulus_index] if stimulus_index < len(session.plan) else None
                stroke = StrokeRecord(
                    points=stroke.points,
                    canvas=stroke.canvas,
                    session=session_id,
                    stimulus=assignment.dataset if assignment else "",
                )
            updated = self.store.record(session, stimulus_index, stroke, action)
            with self._guard:
                self._sessions[session_id] = updated
        return {
            "action": action,
            "stimulus": stimulus_index,
            "accepted": action == "accept",
            "complete": updated.complete,
            "next_index": None if updated.complete else updated.current_index,
        }

    # -- reports ----------------------------------------------------------

    def session_reports(self, session_id: str) -> dict:
        session = self.get_session(session_id)
        reports = []
        for index, stroke in enumerate(session.accepted):
            assignment = session.plan.assignments[index]
            stimulus = self.stimulus_series(assignment.dataset, assignment.level)
            reports.append(
                analyze_pair(
                    stimulus,
                    stroke,
                    canvas=self.config.canvas,
                    props=self.properties.get(assignment.dataset),
                    n_target=self.config.n_target,
                    session=session_id,
                    participant=session.participant,
                    stimulus_index=index,
                    dataset=assignment.dataset,
                    noise_level=assignment.level,
                )
            )
        return corpus_report(reports)


_SESSION_ROUTE = re.compile(r"^/api/sessions/([A-Za-z0-9_-]+)/(stimulus|sketch|report)$")


class _Handler(BaseHTTPRequestHandler):
    service: StudyService  # injected by make_server

    protocol_version = "HTTP/1.1"

    def log_message(self, format, *args):  # quiet by default
        pass

    def _send(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        try:
            return json.loads(self.rfile.read(length) or b"{}")
        except json.JSONDecodeError as exc:
            raise DataError(f"request body is not valid JSON: {exc}") from exc

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        match = _SESSION_ROUTE.match(self.path)
        if not match:
            self._send(404, {"error": f"unknown path {self.path}"})
            return
        session_id, tail = match.groups()
        try:
            if tail == "stimulus":
                session = self.service.get_session(session_id)
                self._send(200, self.service.stimulus_payload(session))
            elif tail == "report":
                self._send(200, self.service.session_reports(session_id))
            else:
                self._send(405, {"error": "use POST for sketch submission"})
        except DataError as exc:
            self._send(404, {"error": str(exc)})
        except LineSketchError as exc:
            self._send(400, {"error": str(exc)})

    def do_POST(self):
        try:
            if self.path == "/api/sessions":
                body = self._read_body()
                participant = body.get("participant")
                session = self.service.create_session(
                    None if participant is None else int(participant)
                )
                self._send(201, {"id": session.id, "participant": session.participant})
                return
            match = _SESSION_ROUTE.match(self.path)
            if not match or match.group(2) != "sketch":
                self._send(404, {"error": f"unknown path {self.path}"})
                return
            session_id = match.group(1)
            body = self._read_body()
            if "action" not in body or "stimulus" not in body:
                raise DataError("sketch submission needs 'stimulus' and 'action'")
            result = self.service.submit_sketch(
                session_id,
                int(body["stimulus"]),
                body.get("stroke"),
                str(body["action"]),
            )
            self._send(200, result)
        except SequencingError as exc:
            self._send(409, {"error": str(exc)})
        except (DataError, InvalidStrokeError) as exc:
            self._send(400, {"error": str(exc)})
        except LineSketchError as exc:
            self._send(400, {"error": str(exc)})


def make_server(config: ServiceConfig, port: int = 0) -> ThreadingHTTPServer:
    """Build the threaded HTTP server; port 0 picks an ephemeral port."""
    service = StudyService(config)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


def serve(config: ServiceConfig, port: int) -> None:
    server = make_server(config, port)
    host, bound_port = server.server_address[:2]
    print(f"study service listening on http://{host}:{bound_port}")
    try:
        server.serve_forever()
    finally:
        server.server_close()
