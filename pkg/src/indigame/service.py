"""HTTP/JSON session service for interactive play against the engine.

Sessions live in memory; an optional append-only journal replays them on
restart.  Every mutation is serialized per session; game legality is always
re-checked server-side.
"""

from __future__ import annotations

import json
import os
import random
import secrets
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import BudgetExceededError, IndigameError, ResourceLimitError, ValidationError
from .graphs import LabeledPair, ListAssignment, pair_from_json, pair_to_json
from .solver import (
    ANN_TO_PICK,
    Budget,
    GamePosition,
    MoveSuggestion,
    best_move,
)

DEFAULT_PORT = 8642
OPTIMAL_DEFAULT_CAP = 14
OPTIMAL_DEFAULT_BUDGET_MS = 4000


class ApiError(IndigameError):
    def __init__(self, status: int, kind: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.kind = kind


@dataclass
class Session:
    id: str
    pair: LabeledPair
    human_role: str  # "ann" | "ben"
    policy: dict
    position: GamePosition
    history: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    rng: random.Random = field(default_factory=random.Random, repr=False)
    last_policy_used: str | None = None

    def status(self) -> str:
        over = self.position.is_over()
        if over == "ann":
            return "ann_won"
        if over == "ben":
            return "ben_won"
        return "in_play"

    def side_to_move(self) -> str:
        return "ann" if self.position.turn == ANN_TO_PICK else "ben"

    def view(self) -> dict:
        pos = self.position
        remaining = pos.remaining()
        return {
            "id": self.id,
            "status": self.status(),
            "turn": pos.turn,
            "side_to_move": self.side_to_move(),
            "human_role": self.human_role,
            "engine_policy": self.policy,
            "policy_used": self.last_policy_used,
            "graph": {
                "vertices": list(pos.pair.graph.vertices),
                "edges": [list(e) for e in sorted(pos.pair.graph.edges)],
            },
            "lists": {str(v): sorted(pos.pair.list_of(v)) for v in pos.pair.graph.vertices},
            "coloured": {str(v): c for v, c in pos.coloured},
            "picked": pos.picked,
            "effective_lists": {str(v): sorted(pos.effective_list(v)) for v in remaining},
            "dead_vertices": [v for v in remaining if not pos.effective_list(v)],
            "history": list(self.history),
        }


def _verify_position(pos: GamePosition) -> None:
    """Defensive re-check of the effective-list law after each mutation."""
    for v in pos.remaining():
        used = {c for u, c in pos.coloured if pos.pair.graph.has_edge(u, v)}
        if pos.effective_list(v) != pos.pair.list_of(v) - used:
            raise AssertionError("effective list law violated")


# ---------------------------------------------------------------------------
# presets


def _cycle_pair(n: int, colours) -> LabeledPair:
    from .graphs import Graph

    g = Graph.build(range(n), [(i, (i + 1) % n) for i in range(n)])
    return LabeledPair.build(g, ListAssignment.uniform(g, colours))


def preset_catalogue() -> list:
    return [
        {"name": "odd_cycle", "params": {"n": "odd cycle length >= 3"},
         "description": "odd cycle with the two-colour list everywhere (infeasible)"},
        {"name": "even_cycle", "params": {"n": "even cycle length >= 4"},
         "description": "even cycle with the two-colour list everywhere (feasible)"},
        {"name": "complete", "params": {"n": "clique size"},
         "description": "complete graph with the same n-1 colours everywhere"},
        {"name": "theta", "params": {"lengths": "1,2k1,...,2km"},
         "description": "generalized theta with its canonical lists"},
        {"name": "fig5_cubic", "params": {},
         "description": "10-vertex cubic graph with uniform 3-colour lists"},
        {"name": "c5_blowup", "params": {"k": "class size"},
         "description": "blow-up of the 5-cycle with uniform [3k-1] lists"},
    ]


def build_preset(name: str, params: dict) -> LabeledPair:
    from . import construct

    if name == "odd_cycle":
        n = int(params.get("n", 5))
        if n % 2 == 0:
            raise ApiError(400, "invalid_preset", "odd_cycle needs odd n")
        return _cycle_pair(n, (1, 2))
    if name == "even_cycle":
        n = int(params.get("n", 4))
        if n % 2:
            raise ApiError(400, "invalid_preset", "even_cycle needs even n")
        return _cycle_pair(n, (1, 2))
    if name == "complete":
        return construct.gen_complete(int(params.get("n", 4))).pair
    if name == "theta":
        lengths = params.get("lengths", [1, 2, 2])
        return construct.gen_theta(*[int(x) for x in lengths]).builder.pair
    if name == "fig5_cubic":
        return construct.gen_fig5_cubic().pair
    if name == "c5_blowup":
        k = int(params.get("k", 2))
        g = construct.gen_c5_blowup(k).graph
        return LabeledPair.build(g, ListAssignment.uniform(g, range(1, 3 * k)))
    raise ApiError(400, "invalid_preset", f"unknown preset {name!r}")


# ---------------------------------------------------------------------------
# engine policies


def _greedy_move(pos: GamePosition) -> MoveSuggestion:
    if pos.turn == ANN_TO_PICK:
        rem = [v for v in pos.remaining() if pos.effective_list(v)]
        v = min(rem, key=lambda v: (len(pos.effective_list(v)), v))
        return MoveSuggestion("vertex", v, "heuristic", -1)
    picked = pos.picked
    options = sorted(pos.effective_list(picked))

    def pressure(c):
        return sum(
            1
            for u in pos.pair.graph.adjacency[picked]
            if u in pos.remaining() and c in pos.effective_list(u)
        )

    c = max(options, key=lambda c: (pressure(c), -c))
    return MoveSuggestion("colour", c, "heuristic", -1)


def engine_choose(session: Session) -> MoveSuggestion:
    policy = session.policy
    kind = policy.get("kind", "optimal")
    if kind == "random":
        pos = session.position
        if pos.turn == ANN_TO_PICK:
            rem = [v for v in pos.remaining() if pos.effective_list(v)]
            return MoveSuggestion("vertex", session.rng.choice(rem), "random", -1)
        return MoveSuggestion("colour", session.rng.choice(sorted(pos.effective_list(pos.picked))), "random", -1)
    if kind == "greedy":
        session.last_policy_used = "greedy"
        return _greedy_move(session.position)
    cap = int(policy.get("cap", OPTIMAL_DEFAULT_CAP))
    budget_ms = int(policy.get("budget_ms", OPTIMAL_DEFAULT_BUDGET_MS))
    try:
        move = best_move(session.position, cap=cap, budget=Budget.of(budget_ms / 1000))
        session.last_policy_used = "optimal"
        return move
    except (BudgetExceededError, ResourceLimitError):
        session.last_policy_used = "greedy"
        return _greedy_move(session.position)


# ---------------------------------------------------------------------------
# application


class SessionStore:
    def __init__(self, journal: str | None = None):
        self.sessions: dict = {}
        self.guard = threading.Lock()
        self.journal = journal
        if journal and os.path.exists(journal):
            self._recover(journal)

    def log(self, event: dict) -> None:
        if not self.journal:
            return
        with open(self.journal, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def _recover(self, path: str) -> None:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                event = json.loads(line)
                kind = event["event"]
                sid = event["session"]
                if kind == "created":
                    pair = pair_from_json(event["pair"])
                    s = Session(sid, pair, event["human_role"], event["policy"],
                                GamePosition(pair))
                    s.rng.seed(event.get("seed", 0))
                    self.sessions[sid] = s
                elif sid in self.sessions:
                    s = self.sessions[sid]
                    if kind == "pick":
                        s.position = s.position.pick(event["vertex"])
                        s.history.append({"pick": event["vertex"], "by": event.get("by")})
                    elif kind == "colour":
                        s.position = s.position.colour(event["colour"])
                        s.history.append({"colour": event["colour"], "by": event.get("by")})
                    elif kind == "undo":
                        _apply_undo(s)
                    elif kind == "deleted":
                        del self.sessions[sid]

    def get(self, sid: str) -> Session:
        s = self.sessions.get(sid)
        if s is None:
            raise ApiError(404, "unknown_session", f"no session {sid}")
        return s


def _apply_undo(s: Session) -> None:
    pos = s.position
    if pos.picked is not None:
        s.position = GamePosition(pos.pair, pos.coloured, None)
    elif pos.coloured:
        *rest, (v, _) = pos.coloured
        s.position = GamePosition(pos.pair, tuple(rest), v)
    else:
        raise ApiError(409, "empty_history", "nothing to undo")
    if s.history:
        s.history.pop()


def create_app(journal: str | None = None, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="indigame service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = SessionStore(journal)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def api_error_handler(_req: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status,
                            content={"error": {"kind": exc.kind, "detail": str(exc)}})

    @app.exception_handler(IndigameError)
    async def domain_error_handler(_req: Request, exc: IndigameError):
        return JSONResponse(status_code=400,
                            content={"error": {"kind": exc.kind, "detail": str(exc)}})

    def _engine_turn(s: Session) -> None:
        """Let the engine move whenever it is its turn and the game is live."""
        while s.status() == "in_play" and s.side_to_move() != s.human_role:
            move = engine_choose(s)
            if move.kind == "vertex":
                s.position = s.position.pick(move.value)
                s.history.append({"pick": move.value, "by": "engine"})
                store.log({"event": "pick", "session": s.id, "vertex": move.value, "by": "engine"})
            else:
                s.position = s.position.colour(move.value)
                s.history.append({"colour": move.value, "by": "engine"})
                store.log({"event": "colour", "session": s.id, "colour": move.value, "by": "engine"})
            _verify_position(s.position)

    @app.get("/presets")
    async def presets():
        return {"presets": preset_catalogue()}

    @app.post("/sessions", status_code=201)
    async def create_session(body: dict):
        human_role = body.get("human_role", "ann")
        if human_role not in ("ann", "ben"):
            raise ApiError(400, "invalid_role", "human_role must be 'ann' or 'ben'")
        policy = body.get("engine_policy", {"kind": "optimal"})
        if policy.get("kind", "optimal") not in ("optimal", "greedy", "random"):
            raise ApiError(400, "invalid_policy", "engine_policy.kind unknown")
        if "pair" in body:
            try:
                pair = pair_from_json(body["pair"])
            except (ValidationError, IndigameError) as exc:
                raise ApiError(400, "invalid_pair", str(exc)) from exc
            if pair.lists is None:
                raise ApiError(400, "invalid_pair", "pair needs lists")
        elif "preset" in body:
            preset = body["preset"]
            pair = build_preset(preset.get("name", ""), preset.get("params", {}))
        else:
            raise ApiError(400, "invalid_request", "need 'pair' or 'preset'")
        if policy.get("kind", "optimal") == "optimal":
            cap = int(policy.get("cap", OPTIMAL_DEFAULT_CAP))
            if pair.graph.n > cap:
                raise ApiError(422, "cap_exceeded",
                               f"pair has {pair.graph.n} vertices, optimal engine cap is {cap}")
        sid = secrets.token_hex(16)
        s = Session(sid, pair, human_role, policy, GamePosition(pair))
        seed = int(policy.get("seed", 0))
        s.rng.seed(seed)
        with store.guard:
            store.sessions[sid] = s
        store.log({"event": "created", "session": sid, "pair": pair_to_json(pair),
                   "human_role": human_role, "policy": policy, "seed": seed})
        with s.lock:
            _engine_turn(s)
        return s.view()

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        return store.get(sid).view()

    @app.post("/sessions/{sid}/moves")
    async def apply_move(sid: str, body: dict):
        s = store.get(sid)
        with s.lock:
            if s.status() != "in_play":
                raise ApiError(409, "game_over", "the game is over")
            if s.side_to_move() != s.human_role:
                raise ApiError(409, "not_your_turn", "it is the engine's turn")
            pos = s.position
            if "vertex" in body:
                if pos.turn != ANN_TO_PICK:
                    raise ApiError(409, "not_your_turn", "a vertex is already picked")
                v = int(body["vertex"])
                if v not in pos.pair.graph.vertices:
                    raise ApiError(422, "illegal_move", f"no vertex {v}")
                if v not in pos.remaining():
                    raise ApiError(422, "illegal_move", f"vertex {v} already coloured")
                s.position = pos.pick(v)
                s.history.append({"pick": v, "by": "human"})
                store.log({"event": "pick", "session": sid, "vertex": v, "by": "human"})
            elif "colour" in body:
                if pos.turn == ANN_TO_PICK:
                    raise ApiError(409, "not_your_turn", "no vertex picked yet")
                c = int(body["colour"])
                picked = pos.picked
                if c not in pos.pair.list_of(picked):
                    raise ApiError(422, "illegal_move",
                                   f"colour {c} not in the list of vertex {picked}")
                if c not in pos.effective_list(picked):
                    blocker = next(u for u, cu in pos.coloured
                                   if cu == c and pos.pair.graph.has_edge(u, picked))
                    raise ApiError(422, "illegal_move",
                                   f"colour {c} used by neighbour {blocker}")
                s.position = pos.colour(c)
                s.history.append({"colour": c, "by": "human"})
                store.log({"event": "colour", "session": sid, "colour": c, "by": "human"})
            else:
                raise ApiError(422, "illegal_move", "move needs 'vertex' or 'colour'")
            _verify_position(s.position)
            _engine_turn(s)
            return s.view()

    @app.post("/sessions/{sid}/engine-move")
    async def engine_move(sid: str):
        s = store.get(sid)
        with s.lock:
            if s.status() != "in_play":
                raise ApiError(409, "game_over", "the game is over")
            if s.side_to_move() == s.human_role:
                raise ApiError(409, "not_your_turn", "it is the human's turn")
            _engine_turn(s)
            return s.view()

    @app.get("/sessions/{sid}/hint")
    async def hint(sid: str):
        s = store.get(sid)
        if s.status() != "in_play":
            raise ApiError(409, "game_over", "the game is over")
        try:
            move = best_move(s.position, cap=OPTIMAL_DEFAULT_CAP,
                             budget=Budget.of(OPTIMAL_DEFAULT_BUDGET_MS / 1000))
        except (BudgetExceededError, ResourceLimitError):
            move = _greedy_move(s.position)
        return {"kind": move.kind, "value": move.value,
                "evaluation": move.evaluation, "plies": move.plies}

    @app.post("/sessions/{sid}/undo")
    async def undo(sid: str):
        s = store.get(sid)
        with s.lock:
            if not s.position.coloured and s.position.picked is None:
                raise ApiError(409, "empty_history", "nothing to undo")
            _apply_undo(s)
            store.log({"event": "undo", "session": sid})
            return s.view()

    @app.delete("/sessions/{sid}", status_code=204)
    async def delete_session(sid: str):
        store.get(sid)
        with store.guard:
            del store.sessions[sid]
        store.log({"event": "deleted", "session": sid})
        return None

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def serve(host: str = "127.0.0.1", port: int = DEFAULT_PORT,
          static_dir: str | None = None, journal: str | None = None) -> None:
    import uvicorn

    app = create_app(journal=journal, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")
