"""Session service: a human (or remote client) as the unfair scheduler.

Each session holds one execution: frozen boundaries, the current
configuration and the event history. Clients see which particles can move
and what each move would do, fire one, let a strategy autoplay, or undo.
Undo replays the remaining history from the initial configuration, which
reuses the deterministic engine instead of inverting moves. Sessions are
in-memory; mutations on one session are serialized by a per-session lock.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import engine, verify
from .algorithm import decide, resulting_nodes
from .configuration import (
    Boundaries,
    ConfigError,
    Configuration,
    boundaries,
    is_connected,
    parse_config,
)
from .engine import StepEvent


@dataclass
class Session:
    id: str
    initial: Configuration
    current: Configuration
    bounds: Boundaries
    history: list[StepEvent] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class _Store:
    def __init__(self):
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def add(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.id] = session

    def get(self, sid: str) -> Optional[Session]:
        with self._lock:
            return self._sessions.get(sid)

    def remove(self, sid: str) -> bool:
        with self._lock:
            return self._sessions.pop(sid, None) is not None


def _event_payload(event: StepEvent) -> dict:
    return {
        "step": event.step_index,
        "pid": event.pid,
        "condition": event.condition.value,
        "nodes_before": [[n.q, n.r] for n in event.nodes_before],
        "nodes_after": [[n.q, n.r] for n in event.nodes_after],
        "progress_after": list(event.progress_after),
    }


def _state_payload(session: Session) -> dict:
    config = session.current
    moves = []
    for particle in config.particles:
        decision = decide(config, particle.pid)
        if decision is not None:
            moves.append(
                {
                    "pid": particle.pid,
                    "condition": decision.condition.value,
                    "resulting_nodes": [
                        [n.q, n.r]
                        for n in resulting_nodes(config, particle.pid, decision)
                    ],
                }
            )
    progress = verify.progress_vector(config, session.bounds)
    return {
        "id": session.id,
        "occupancy": {
            f"{n.q},{n.r}": pid for n, pid in sorted(config.occupancy.items())
        },
        "particles": [
            {
                "pid": p.pid,
                "nodes": [[n.q, n.r] for n in p.nodes],
                "shape": "expanded" if p.expanded else "contracted",
            }
            for p in sorted(config.particles, key=lambda p: p.pid)
        ],
        "activable": moves,
        "progress": list(progress),
        "leaders": verify.leaders(config),
        "final": not moves,
        "step_count": len(session.history),
        "boundaries": {"r_max": session.bounds.r_max, "q_max": session.bounds.q_max},
    }


def _error(status: int, code: str, message: str, detail=None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "detail": detail},
    )


class AutoRequest(BaseModel):
    strategy: str = "random"
    steps: int = 1
    seed: int = 0


class ActivateRequest(BaseModel):
    pid: int


def create_app(static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="trielect session service")
    store = _Store()

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.body()
        try:
            config = parse_config(body.decode("utf-8"))
        except (ConfigError, UnicodeDecodeError) as exc:
            return _error(400, "invalid-config", "configuration rejected", str(exc))
        if not config.particles:
            return _error(400, "invalid-config", "configuration rejected", "no particles")
        if not is_connected(config):
            return _error(
                400, "not-connected", "configuration rejected", "occupied nodes are not connected"
            )
        session = Session(
            id=uuid.uuid4().hex[:12],
            initial=config,
            current=config,
            bounds=boundaries(config),
        )
        store.add(session)
        return _state_payload(session)

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        session = store.get(sid)
        if session is None:
            return _error(404, "unknown-session", f"no session {sid}")
        with session.lock:
            return _state_payload(session)

    @app.post("/sessions/{sid}/activate")
    def activate(sid: str, body: ActivateRequest):
        session = store.get(sid)
        if session is None:
            return _error(404, "unknown-session", f"no session {sid}")
        with session.lock:
            config = session.current
            try:
                config.particle(body.pid)
            except KeyError:
                return _error(404, "unknown-pid", f"no particle {body.pid}")
            decision = decide(config, body.pid)
            if decision is None:
                activable = [pid for pid, _ in engine.activable(config)]
                return _error(
                    409,
                    "not-activable",
                    f"particle {body.pid} cannot move; the scheduler must pick an activable one",
                    {"activable": activable},
                )
            before = tuple(config.particle(body.pid).nodes)
            after_config = config.with_nodes(
                body.pid, resulting_nodes(config, body.pid, decision)
            )
            event = StepEvent(
                step_index=len(session.history),
                pid=body.pid,
                condition=decision.condition,
                nodes_before=before,
                nodes_after=tuple(after_config.particle(body.pid).nodes),
                progress_after=verify.progress_vector(after_config, session.bounds),
            )
            check = verify.check_transition(config, after_config, event, session.bounds)
            session.current = after_config
            session.history.append(event)
            return {
                "state": _state_payload(session),
                "event": _event_payload(event),
                "check": {
                    "passed": check.passed,
                    "violations": [
                        {"invariant": v.invariant, "subject": v.subject, "detail": v.detail}
                        for v in check.violations
                    ],
                },
            }

    @app.post("/sessions/{sid}/auto")
    def auto(sid: str, body: AutoRequest):
        session = store.get(sid)
        if session is None:
            return _error(404, "unknown-session", f"no session {sid}")
        try:
            strategy = engine.make_strategy(body.strategy, seed=body.seed)
        except ValueError as exc:
            return _error(400, "unknown-strategy", str(exc))
        if body.steps < 0:
            return _error(400, "invalid-steps", "steps must be nonnegative")
        with session.lock:
            trace = engine.run(session.current, strategy, max_steps=body.steps)
            config = session.current
            events = []
            for event in trace.events:
                config = config.with_nodes(event.pid, event.nodes_after)
                shifted = StepEvent(
                    step_index=len(session.history),
                    pid=event.pid,
                    condition=event.condition,
                    nodes_before=event.nodes_before,
                    nodes_after=event.nodes_after,
                    progress_after=verify.progress_vector(config, session.bounds),
                )
                session.history.append(shifted)
                events.append(shifted)
            session.current = config
            return {
                "state": _state_payload(session),
                "events": [_event_payload(e) for e in events],
            }

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        session = store.get(sid)
        if session is None:
            return _error(404, "unknown-session", f"no session {sid}")
        with session.lock:
            if not session.history:
                return _error(409, "empty-history", "nothing to undo")
            session.history.pop()
            config = session.initial
            for event in session.history:
                config = config.with_nodes(event.pid, event.nodes_after)
            session.current = config
            return _state_payload(session)

    @app.delete("/sessions/{sid}")
    def delete(sid: str):
        if not store.remove(sid):
            return _error(404, "unknown-session", f"no session {sid}")
        return Response(status_code=204)

    @app.get("/healthz")
    def healthz():
        return {"ok": True}

    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
