"""JSON-over-HTTP session service for playing the certificate game.

Single process, in-memory sessions, one lock per session.  The client never
computes field arithmetic: every displayed fact (labels, dimensions, graph,
exponent, status, hints) is a field of the served state.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .ffield import FpMatrix
from .lindata import (
    CSStep,
    EndgameStep,
    LinearDatum,
    MergeStep,
    Step,
    TrivialStep,
    apply_cs,
    apply_merge,
    check_trivial,
    step_to_json,
)
from .planner import (
    LABELS,
    AugmentedDatum,
    FormSystem,
    HypothesesFail,
    analyze,
    assign_roles,
    block_datum,
    initial_augmented,
    make_augmented_forward,
    make_augmented_reverse,
    make_endgame,
    euclid_word,
)
from .geometry import X5EqualsX6, x5_coordinates


class IllegalMove(ValueError):
    pass


@dataclass
class Session:
    sid: str
    system: FormSystem
    datum: LinearDatum
    steps: list[Step] = field(default_factory=list)
    history: list = field(default_factory=list)  # snapshots for undo
    graph_verts: list[str] = field(default_factory=lambda: ["o"])
    graph_edges: list[tuple[str, str, str]] = field(default_factory=list)
    locs: dict[str, list[tuple[str, str]]] = field(default_factory=dict)
    aug: AugmentedDatum | None = None
    respected: str | None = "1"
    status: str = "InProgress"
    won_variant: str | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def exponent_log2(self) -> int:
        return sum(getattr(s, "exponent_log2", 0) for s in self.steps)


def new_session(system: FormSystem) -> Session:
    d = system.standard_datum()
    s = Session(uuid.uuid4().hex[:12], system, d)
    s.locs = {l: [(l, "o")] for l in LABELS}
    return s


def _snapshot(s: Session):
    return (
        s.datum,
        list(s.steps),
        list(s.graph_verts),
        list(s.graph_edges),
        {k: list(v) for k, v in s.locs.items()},
        s.aug,
        s.respected,
        s.status,
        s.won_variant,
    )


def _restore(s: Session, snap) -> None:
    s.datum, steps, verts, edges, locs, s.aug, s.respected, s.status, s.won_variant = snap
    s.steps = list(steps)
    s.graph_verts = list(verts)
    s.graph_edges = list(edges)
    s.locs = {k: list(v) for k, v in locs.items()}


def _is_standard_shape(d: LinearDatum) -> bool:
    return d.base_dim == 3 and len(d.labels) == 6 and all(d.target_dim(l) == 1 for l in d.labels)


def _endgame_available(s: Session) -> EndgameStep | None:
    if not _is_standard_shape(s.datum):
        return None
    rows = {l: s.datum.maps[l].row(0) for l in s.datum.labels}
    if sorted(rows) != list(LABELS):
        return None
    try:
        return make_endgame(rows, s.datum.p, "1")
    except HypothesesFail:
        return None


def session_state(s: Session) -> dict:
    hint_endgame = _endgame_available(s)
    return {
        "session": s.sid,
        "prime": s.datum.p,
        "status": s.status if s.status != "Won" else f"Won({s.won_variant})",
        "exponent": {"log2_denominator": s.exponent_log2},
        "labels": [
            {"label": l, "target_dim": s.datum.target_dim(l)} for l in s.datum.labels
        ],
        "base_dim": s.datum.base_dim,
        "graph": {
            "vertices": list(s.graph_verts),
            "edges": [{"a": a, "b": b, "label": lbl} for a, b, lbl in s.graph_edges],
        },
        "moves": len(s.steps),
        "history": [step_to_json(st) for st in s.steps],
        "legal_moves": {
            "cs": [l for l in s.datum.labels],
            "merge": "any surjective relabelling of the current labels",
            "endgame": hint_endgame is not None,
            "block": s.aug is not None,
        },
        "can_win": hint_endgame is not None,
    }


def _graph_cs(s: Session, label: str) -> None:
    cross = [(v + "0", v + "1", orig) for (orig, v) in s.locs[label]]
    s.graph_edges = [
        (a + "0", b + "0", l) for a, b, l in s.graph_edges
    ] + [(a + "1", b + "1", l) for a, b, l in s.graph_edges] + cross
    s.graph_verts = [v + "0" for v in s.graph_verts] + [v + "1" for v in s.graph_verts]
    new_locs = {}
    for lbl, cons in s.locs.items():
        if lbl == label:
            continue
        new_locs[lbl + ".0"] = [(o, v + "0") for o, v in cons]
        new_locs[lbl + ".1"] = [(o, v + "1") for o, v in cons]
    s.locs = new_locs


def apply_move(s: Session, move: dict) -> dict:
    with s.lock:
        if s.status != "InProgress":
            raise IllegalMove(f"session is {s.status}")
        kind = move.get("kind")
        snap = _snapshot(s)
        try:
            if kind == "cs":
                _move_cs(s, move)
            elif kind == "merge":
                _move_merge(s, move)
            elif kind == "trivial":
                _move_trivial(s, move)
            elif kind == "block":
                _move_block(s, move)
            elif kind == "make_augmented":
                _move_make_augmented(s)
            elif kind == "make_standard":
                _move_make_standard(s)
            elif kind == "endgame":
                _move_endgame(s)
            else:
                raise IllegalMove(f"unknown move kind {kind!r}")
        except IllegalMove:
            _restore(s, snap)
            raise
        except Exception as e:
            _restore(s, snap)
            raise IllegalMove(str(e)) from e
        s.history.append(snap)
        return session_state(s)


def _move_cs(s: Session, move: dict) -> None:
    j = move.get("j")
    if j not in s.datum.maps:
        raise IllegalMove(f"no label {j}")
    d2 = apply_cs(s.datum, j)
    before = s.respected or "?"
    if s.respected is not None and j != s.respected:
        s.respected = s.respected + ".0"
    else:
        s.respected = None
    s.steps.append(CSStep(j, before, s.respected or "?"))
    _graph_cs(s, j)
    s.datum = d2
    s.aug = None


def _move_merge(s: Session, move: dict) -> None:
    tau = move.get("tau")
    if not isinstance(tau, dict):
        raise IllegalMove("merge needs a tau mapping")
    d2 = apply_merge(s.datum, tau)
    before = s.respected or "?"
    if s.respected is not None:
        cls = [l for l in s.datum.labels if tau.get(l, l) == tau.get(s.respected, s.respected)]
        s.respected = tau.get(s.respected, s.respected) if cls == [s.respected] else None
    s.steps.append(MergeStep(dict(tau), before, s.respected or "?"))
    new_locs: dict[str, list[tuple[str, str]]] = {}
    for lbl, cons in s.locs.items():
        new_locs.setdefault(tau.get(lbl, lbl), []).extend(cons)
    s.locs = new_locs
    s.datum = d2
    s.aug = None


def _move_trivial(s: Session, move: dict) -> None:
    p = s.datum.p
    to = move.get("to")
    theta = move.get("theta")
    sigmas = move.get("sigmas")
    respected = move.get("respected", "1")
    if to is None or theta is None or sigmas is None:
        raise IllegalMove("trivial move needs to/theta/sigmas")
    d_to = LinearDatum(
        p, int(to["base_dim"]), tuple(to["labels"]),
        {l: FpMatrix(to["maps"][l], p) for l in to["labels"]},
    )
    ok = check_trivial(
        s.datum, d_to, FpMatrix(theta, p),
        {l: FpMatrix(m, p) for l, m in sigmas.items()}, respected,
    )
    if not ok:
        raise IllegalMove("trivial witness fails its commuting squares")
    s.steps.append(
        TrivialStep(d_to, FpMatrix(theta, p), {l: FpMatrix(m, p) for l, m in sigmas.items()}, respected, respected)
    )
    s.datum = d_to
    s.graph_verts = ["o"]
    s.graph_edges = []
    s.locs = {l: [(l, "o")] for l in d_to.labels}
    s.aug = None


def _move_make_augmented(s: Session) -> None:
    if not _is_standard_shape(s.datum):
        raise IllegalMove("augmentation needs a six-form system")
    rows = {l: s.datum.maps[l].row(0) for l in s.datum.labels}
    sys = FormSystem(s.datum.p, tuple(rows[l] for l in LABELS))
    roles = assign_roles(sys, "1")
    aug = initial_augmented(sys, roles)
    step = make_augmented_forward(aug, s.datum, "1")
    s.steps.append(step)
    s.datum = step.to_datum
    s.aug = aug
    s.graph_verts = ["o"]
    s.graph_edges = []
    s.locs = {l: [(l, "o")] for l in LABELS}


def _move_make_standard(s: Session) -> None:
    if s.aug is None:
        raise IllegalMove("no augmented structure to drop")
    step, d_std = make_augmented_reverse(s.aug, "1")
    s.steps.append(step)
    s.datum = d_std
    s.aug = None
    s.graph_verts = ["o"]
    s.graph_edges = []
    s.locs = {l: [(l, "o")] for l in LABELS}


def _move_block(s: Session, move: dict) -> None:
    if s.aug is None:
        raise IllegalMove("block moves need an augmented session (make_augmented first)")
    i, j = int(move.get("i", 0)), int(move.get("j", 0))
    aug2, steps, _state = block_datum(s.aug, i, j)
    s.steps.extend(steps)
    s.aug = aug2
    s.datum = aug2.to_datum()
    s.graph_verts = ["o"]
    s.graph_edges = []
    s.locs = {l: [(l, "o")] for l in LABELS}


def _move_endgame(s: Session) -> None:
    step = _endgame_available(s)
    if step is None:
        raise IllegalMove("endgame hypotheses are not satisfied")
    s.steps.append(step)
    s.status = "Won"
    s.won_variant = step.variant


def hint(s: Session) -> dict:
    with s.lock:
        eg = _endgame_available(s)
        if eg is not None:
            return {
                "move": {"kind": "endgame"},
                "detail": {
                    "variant": eg.variant,
                    "collinear": list(eg.collinear),
                    "exponent_log2": eg.exponent_log2,
                },
            }
        if s.aug is not None:
            try:
                rs = x5_coordinates(s.aug.block_state())
            except X5EqualsX6:
                return {"move": None, "detail": "moving points coincide"}
            r = rs[0] if rs[0] <= s.datum.p - rs[0] else rs[0] - s.datum.p
            t = rs[1] if rs[1] <= s.datum.p - rs[1] else rs[1] - s.datum.p
            word = euclid_word(r, t) if (r, t) != (0, 0) else []
            if word:
                return {"move": {"kind": "block", "i": word[0][0], "j": word[0][1]}, "detail": {"word_length": len(word)}}
            return {"move": {"kind": "make_standard"}, "detail": "walk complete"}
        if _is_standard_shape(s.datum):
            return {"move": {"kind": "make_augmented"}, "detail": "start a walk"}
        return {"move": None, "detail": "no planner hint for this shape"}


class GameService:
    def __init__(self):
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()

    def create(self, forms, p: int) -> Session:
        if isinstance(forms, str):
            system = FormSystem.parse(forms, p)
        else:
            system = FormSystem(p, tuple(tuple(int(c) for c in r) for r in forms))
        s = new_session(system)
        with self.lock:
            self.sessions[s.sid] = s
        return s

    def get(self, sid: str) -> Session | None:
        with self.lock:
            return self.sessions.get(sid)


def make_handler(service: GameService):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # quiet test runs
            pass

        def _send(self, code: int, payload: dict) -> None:
            body = json.dumps(payload).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length", "0"))
            if length == 0:
                return {}
            return json.loads(self.rfile.read(length))

        def do_GET(self):
            parts = [x for x in self.path.split("/") if x]
            if len(parts) == 2 and parts[0] == "game":
                s = service.get(parts[1])
                if s is None:
                    return self._send(404, {"error": "unknown session"})
                with s.lock:
                    return self._send(200, session_state(s))
            return self._send(404, {"error": "not found"})

        def do_POST(self):
            parts = [x for x in self.path.split("/") if x]
            try:
                body = self._body()
            except json.JSONDecodeError:
                return self._send(400, {"error": "bad json"})
            if parts == ["game", "new"]:
                try:
                    s = service.create(body.get("forms"), int(body.get("p", 0)))
                except Exception as e:
                    return self._send(422, {"error": str(e)})
                with s.lock:
                    return self._send(200, {"session": s.sid, "state": session_state(s)})
            if len(parts) == 3 and parts[0] == "game":
                s = service.get(parts[1])
                if s is None:
                    return self._send(404, {"error": "unknown session"})
                action = parts[2]
                if action == "move":
                    try:
                        return self._send(200, apply_move(s, body))
                    except IllegalMove as e:
                        return self._send(422, {"error": str(e)})
                if action == "undo":
                    with s.lock:
                        if not s.history:
                            return self._send(422, {"error": "nothing to undo"})
                        _restore(s, s.history.pop())
                        return self._send(200, session_state(s))
                if action == "hint":
                    return self._send(200, hint(s))
                if action == "analyze":
                    rep = analyze(s.system)
                    return self._send(200, rep.to_json())
            return self._send(404, {"error": "not found"})

    return Handler


def serve(port: int, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    service = GameService()
    server = ThreadingHTTPServer((host, port), make_handler(service))
    return server
