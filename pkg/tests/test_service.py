"""HTTP session service: creation, legality, engine play, undo, recovery."""

import itertools

import pytest
from fastapi.testclient import TestClient

from indigame.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def make_session(client, preset=None, pair=None, human_role="ann", policy=None):
    body = {"human_role": human_role, "engine_policy": policy or {"kind": "optimal"}}
    if preset is not None:
        body["preset"] = preset
    if pair is not None:
        body["pair"] = pair
    r = client.post("/sessions", json=body)
    return r


class TestPresets:
    def test_catalogue(self, client):
        r = client.get("/presets")
        names = {p["name"] for p in r.json()["presets"]}
        assert {"odd_cycle", "even_cycle", "complete", "fig5_cubic"} <= names


class TestCreate:
    def test_preset_session_ann(self, client):
        r = make_session(client, preset={"name": "odd_cycle", "params": {"n": 5}})
        assert r.status_code == 201
        view = r.json()
        assert view["status"] == "in_play"
        assert view["side_to_move"] == "ann" and view["turn"] == "ann_to_pick"
        assert len(view["graph"]["vertices"]) == 5

    def test_engine_moves_first_for_human_ben(self, client):
        r = make_session(client, preset={"name": "even_cycle", "params": {"n": 4}},
                         human_role="ben")
        view = r.json()
        # engine Ann has already picked; a vertex awaits Ben's colour
        assert view["picked"] is not None and view["side_to_move"] == "ben"

    def test_bad_pair_rejected(self, client):
        r = make_session(client, pair={"vertices": [0, 1], "edges": [[0, 7]],
                                       "lists": {"0": [1], "1": [1]}})
        assert r.status_code == 400
        assert r.json()["error"]["kind"] == "invalid_pair"

    def test_cap_exceeded_for_optimal(self, client):
        n = 17
        pair = {
            "vertices": list(range(n)),
            "edges": [[i, (i + 1) % n] for i in range(n)],
            "lists": {str(v): [1, 2] for v in range(n)},
        }
        r = make_session(client, pair=pair)
        assert r.status_code == 422
        assert r.json()["error"]["kind"] == "cap_exceeded"


class TestMoves:
    def test_pick_then_engine_colours(self, client):
        r = make_session(client, preset={"name": "odd_cycle", "params": {"n": 5}})
        sid = r.json()["id"]
        r = client.post(f"/sessions/{sid}/moves", json={"vertex": 0})
        assert r.status_code == 200
        view = r.json()
        # engine Ben answered immediately, so vertex 0 is coloured
        assert "0" in view["coloured"]
        assert view["side_to_move"] == "ann"

    def test_illegal_colour_rejected_with_reason(self, client):
        pair = {
            "vertices": [0, 1], "edges": [[0, 1]],
            "lists": {"0": [1], "1": [1, 2]},
        }
        r = make_session(client, pair=pair, human_role="ben",
                         policy={"kind": "greedy"})
        sid = r.json()["id"]
        view = r.json()
        picked = view["picked"]
        assert picked is not None
        bad = 9
        r = client.post(f"/sessions/{sid}/moves", json={"colour": bad})
        assert r.status_code == 422
        assert "not in the list" in r.json()["error"]["detail"]

    def test_neighbour_conflict_names_blocker(self, client):
        pair = {
            "vertices": [0, 1, 2], "edges": [[0, 1], [1, 2]],
            "lists": {"0": [1, 9], "1": [1, 2], "2": [1, 2]},
        }
        r = make_session(client, pair=pair, human_role="ben", policy={"kind": "greedy"})
        sid = r.json()["id"]
        view = r.json()
        # engine picked some vertex; colour it legally, then force a conflict
        first = view["picked"]
        c = view["effective_lists"][str(first)][0]
        view = client.post(f"/sessions/{sid}/moves", json={"colour": c}).json()
        second = view["picked"]
        taken = [cc for cc in view["lists"][str(second)]
                 if cc not in view["effective_lists"][str(second)]]
        if taken:
            r = client.post(f"/sessions/{sid}/moves", json={"colour": taken[0]})
            assert r.status_code == 422
            assert "used by neighbour" in r.json()["error"]["detail"]

    def test_not_your_turn(self, client):
        r = make_session(client, preset={"name": "odd_cycle", "params": {"n": 5}},
                         human_role="ben")
        sid = r.json()["id"]
        r = client.post(f"/sessions/{sid}/moves", json={"vertex": 0})
        assert r.status_code == 409

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope").status_code == 404
        assert client.post("/sessions/nope/moves", json={"vertex": 0}).status_code == 404

    def test_vertex_already_coloured(self, client):
        r = make_session(client, preset={"name": "even_cycle", "params": {"n": 4}})
        sid = r.json()["id"]
        view = client.post(f"/sessions/{sid}/moves", json={"vertex": 0}).json()
        assert "0" in view["coloured"]
        r = client.post(f"/sessions/{sid}/moves", json={"vertex": 0})
        assert r.status_code == 422


class TestEndings:
    def test_ben_win_detected_on_dead_vertex(self, client):
        # C5 with identical lists: optimal Ben always wins
        r = make_session(client, preset={"name": "odd_cycle", "params": {"n": 5}})
        sid = r.json()["id"]
        view = r.json()
        while view["status"] == "in_play":
            v = int(view["effective_lists"] and sorted(
                int(x) for x in view["effective_lists"]
                if view["effective_lists"][x]
            )[0])
            view = client.post(f"/sessions/{sid}/moves", json={"vertex": v}).json()
        assert view["status"] == "ben_won"
        assert view["dead_vertices"]

    def test_engine_ann_wins_even_cycle_against_all_ben_lines(self, client):
        # exhaustive scripted adversary: every Ben reply sequence loses
        def play(colour_choices):
            r = make_session(client, preset={"name": "even_cycle", "params": {"n": 4}},
                             human_role="ben")
            sid = r.json()["id"]
            view = r.json()
            for choice in colour_choices:
                if view["status"] != "in_play":
                    break
                opts = view["effective_lists"][str(view["picked"])]
                colour = opts[choice % len(opts)]
                view = client.post(f"/sessions/{sid}/moves", json={"colour": colour}).json()
            return view["status"]

        for line in itertools.product(range(2), repeat=4):
            assert play(line) == "ann_won"


class TestHintUndo:
    def test_hint_on_even_cycle(self, client):
        r = make_session(client, preset={"name": "even_cycle", "params": {"n": 6}})
        sid = r.json()["id"]
        hint = client.get(f"/sessions/{sid}/hint").json()
        assert hint["kind"] == "vertex" and hint["evaluation"] == "win"

    def test_hint_does_not_mutate(self, client):
        r = make_session(client, preset={"name": "odd_cycle", "params": {"n": 5}})
        sid = r.json()["id"]
        before = client.get(f"/sessions/{sid}").json()
        client.get(f"/sessions/{sid}/hint")
        after = client.get(f"/sessions/{sid}").json()
        assert before == after

    def test_undo_then_replay_reproduces_state(self, client):
        r = make_session(client, preset={"name": "even_cycle", "params": {"n": 4}})
        sid = r.json()["id"]
        view1 = client.post(f"/sessions/{sid}/moves", json={"vertex": 0}).json()
        # undo engine's colour and our pick, then redo the same pick
        client.post(f"/sessions/{sid}/undo")
        client.post(f"/sessions/{sid}/undo")
        base = client.get(f"/sessions/{sid}").json()
        assert base["coloured"] == {} and base["picked"] is None
        view2 = client.post(f"/sessions/{sid}/moves", json={"vertex": 0}).json()
        for key in ("coloured", "picked", "status", "effective_lists"):
            assert view1[key] == view2[key]

    def test_undo_empty_history(self, client):
        r = make_session(client, preset={"name": "odd_cycle", "params": {"n": 5}})
        sid = r.json()["id"]
        assert client.post(f"/sessions/{sid}/undo").status_code == 409

    def test_delete(self, client):
        r = make_session(client, preset={"name": "odd_cycle", "params": {"n": 5}})
        sid = r.json()["id"]
        assert client.delete(f"/sessions/{sid}").status_code == 204
        assert client.get(f"/sessions/{sid}").status_code == 404


class TestJournal:
    def test_recovery(self, tmp_path):
        journal = str(tmp_path / "journal.ndjson")
        app = create_app(journal=journal)
        with TestClient(app) as client:
            r = make_session(client, preset={"name": "even_cycle", "params": {"n": 4}})
            sid = r.json()["id"]
            view = client.post(f"/sessions/{sid}/moves", json={"vertex": 0}).json()
        app2 = create_app(journal=journal)
        with TestClient(app2) as client2:
            restored = client2.get(f"/sessions/{sid}").json()
            assert restored["coloured"] == view["coloured"]
            assert restored["status"] == view["status"]


class TestOptimalEngineNeverLosesWonPositions:
    def test_engine_ben_wins_all_lines_on_c5(self, client):
        # solver certifies Ben's win; scripted Ann adversaries up to
        # exhaustion must never beat the optimal engine
        def play(order):
            r = make_session(client, preset={"name": "odd_cycle", "params": {"n": 5}})
            sid = r.json()["id"]
            view = r.json()
            for v in order:
                if view["status"] != "in_play":
                    break
                if str(v) in view["coloured"]:
                    continue
                resp = client.post(f"/sessions/{sid}/moves", json={"vertex": v})
                if resp.status_code != 200:
                    continue
                view = resp.json()
            return view["status"]

        import random

        rng = random.Random(7)
        for _ in range(12):
            order = list(range(5))
            rng.shuffle(order)
            assert play(order + order) == "ben_won"
