"""Event-sourced sessions: commands, persistence, replay, concurrency."""

import json
import threading

import pytest

from breachboard.board import IllegalMoveError, ReplayError, new_game, GameConfig
from breachboard.catalog import Role
from breachboard.service import (
    EventKind,
    SessionConfig,
    SessionError,
    SessionService,
    UnknownSessionError,
    WireEvent,
    load_event_log,
    replay_events,
)
from breachboard.strategies import Policy, UnknownPolicyError, choose_action


@pytest.fixture()
def service(tmp_path, catalog):
    return SessionService(tmp_path, catalog)


def _drive_to_completion(service, session_id, view):
    """Finish a session by AI moves and first-legal human moves."""
    while view["status"] == "open":
        seat = view["state"]["to_move"]
        if view["config"][seat] == "human":
            token = view["legal"]["tokens"][0]["id"]
            region = view["legal"]["regions"][0]
            angles = view["legal"]["opening_angles"].get(region)
            view = service.command(session_id, {
                "type": "place_token", "token": token, "region": region,
                "opening_angle": angles[0] if angles else None,
            })
        else:
            view = service.command(session_id, {"type": "request_ai_move"})
    return view


class TestSessionCreate:
    def test_initial_view(self, service):
        view = service.create_session({"attacker": "greedy", "defender": "human"})
        assert view["status"] == "open"
        assert view["last_sequence"] == 0
        assert view["state"]["to_move"] == "attacker"
        assert view["state"]["ply"] == 0

    def test_unknown_policy_rejected(self, service):
        with pytest.raises(UnknownPolicyError, match="unknown policy"):
            service.create_session({"attacker": "PPO", "defender": "human"})

    def test_distinct_ids(self, service):
        first = service.create_session({})
        second = service.create_session({})
        assert first["session_id"] != second["session_id"]

    def test_persisted_on_create(self, service, tmp_path):
        view = service.create_session({})
        assert (tmp_path / f"{view['session_id']}.jsonl").exists()


class TestCommands:
    def test_table_row_one_flow(self, service):
        view = service.create_session({"attacker": "human", "defender": "human"})
        sid = view["session_id"]
        view = service.command(sid, {
            "type": "place_token", "token": "Email", "region": "inner",
            "opening_angle": 1,
        })
        assert view["last_verdict"] is None
        view = service.command(sid, {
            "type": "place_token", "token": "No trust", "region": "center",
        })
        verdict = view["last_verdict"]
        assert verdict["winner"] == "defender"
        assert verdict["comment"] == "Never trust malicious emails"
        assert verdict["d_points"] == 1
        assert view["totals"] == {"attacker": 0, "defender": 1}

    def test_failed_command_appends_nothing(self, service):
        view = service.create_session({"attacker": "human", "defender": "human"})
        sid = view["session_id"]
        view = service.command(sid, {"type": "place_token", "token": "A1",
                                     "region": "center"})
        before = view["last_sequence"]
        with pytest.raises(IllegalMoveError, match="center occupied"):
            service.command(sid, {"type": "place_token", "token": "D1",
                                  "region": "center"})
        assert service.view(sid)["last_sequence"] == before

    def test_request_ai_move_delegates_to_policy(self, service, matrix, catalog):
        view = service.create_session({"attacker": "greedy", "defender": "human",
                                       "seed": 5})
        sid = view["session_id"]
        expected = choose_action(Policy.greedy(), new_game(GameConfig(catalog)), matrix)
        view = service.command(sid, {"type": "request_ai_move"})
        move = view["state"]["cells"][0]
        assert move["token"] == str(expected.token)

    def test_ai_move_on_human_seat_rejected(self, service):
        view = service.create_session({"attacker": "human", "defender": "greedy"})
        with pytest.raises(SessionError, match="human"):
            service.command(view["session_id"], {"type": "request_ai_move"})

    def test_place_on_ai_seat_rejected(self, service):
        view = service.create_session({"attacker": "greedy", "defender": "human"})
        with pytest.raises(SessionError, match="not human"):
            service.command(view["session_id"], {
                "type": "place_token", "token": "A1", "region": "center",
            })

    def test_out_of_turn_seat_rejected(self, service):
        view = service.create_session({"attacker": "human", "defender": "human"})
        with pytest.raises(SessionError, match="out-of-turn"):
            service.command(view["session_id"], {
                "type": "place_token", "token": "D1", "region": "center",
                "seat": "defender",
            })

    def test_unknown_command(self, service):
        view = service.create_session({})
        with pytest.raises(SessionError, match="unknown command"):
            service.command(view["session_id"], {"type": "undo"})

    def test_unknown_session(self, service):
        with pytest.raises(UnknownSessionError):
            service.command("missing", {"type": "resign"})

    def test_resign(self, service):
        view = service.create_session({"attacker": "human", "defender": "greedy"})
        sid = view["session_id"]
        view = service.command(sid, {"type": "resign"})
        assert view["status"] == "finished"
        assert view["result"]["reason"] == "resigned"
        assert view["result"]["resigned_by"] == "attacker"
        assert view["result"]["final_result"]["outcome"] == "defender_win"

    def test_finished_session_rejects_commands(self, service):
        view = service.create_session({"attacker": "human", "defender": "greedy"})
        sid = view["session_id"]
        service.command(sid, {"type": "resign"})
        with pytest.raises(SessionError, match="finished"):
            service.command(sid, {"type": "resign"})


class TestGameEnd:
    def test_completed_game_event_stream(self, service):
        view = service.create_session({"attacker": "greedy", "defender": "random",
                                       "seed": 9})
        sid = view["session_id"]
        view = _drive_to_completion(service, sid, view)
        assert view["status"] == "finished"
        assert view["result"]["reason"] == "completed"
        events = load_event_log(service._path(sid))
        kinds = [e.kind for e in events]
        assert kinds[0] is EventKind.GAME_CREATED
        assert kinds[-1] is EventKind.GAME_ENDED
        assert kinds.count(EventKind.MOVE_PLACED) == 25
        sequences = [e.sequence for e in events]
        assert sequences == list(range(len(events)))

    def test_report_requires_finished(self, service):
        view = service.create_session({})
        with pytest.raises(SessionError, match="open"):
            service.report(view["session_id"])

    def test_report_matches_game_ended_payload(self, service):
        view = service.create_session({"attacker": "random", "defender": "random",
                                       "seed": 2})
        sid = view["session_id"]
        view = _drive_to_completion(service, sid, view)
        assert service.report(sid) == view["result"]["report"]


class TestReplay:
    def _finished_session(self, service, seed=4):
        view = service.create_session({"attacker": "greedy", "defender": "random",
                                       "seed": seed})
        sid = view["session_id"]
        view = _drive_to_completion(service, sid, view)
        return sid, view

    def test_round_trip_byte_identical(self, service, catalog):
        sid, view = self._finished_session(service)
        events = load_event_log(service._path(sid))
        _, state, ended = replay_events(events, catalog)
        persisted = json.dumps(view["result"]["final_result"], sort_keys=True)
        replayed = json.dumps(ended["final_result"], sort_keys=True)
        assert replayed == persisted

    def test_sequence_gap_rejected(self, service, catalog):
        sid, _ = self._finished_session(service)
        events = load_event_log(service._path(sid))
        del events[3]
        with pytest.raises(ReplayError, match="sequence gap at 3"):
            replay_events(events, catalog)

    def test_tampered_total_rejected(self, service, catalog):
        sid, _ = self._finished_session(service)
        events = load_event_log(service._path(sid))
        payload = dict(events[-1].payload)
        final = dict(payload["final_result"])
        final["attacker_total"] += 1
        payload["final_result"] = final
        events[-1] = WireEvent(EventKind.GAME_ENDED, payload, events[-1].sequence)
        with pytest.raises(ReplayError, match="divergence"):
            replay_events(events, catalog)

    def test_tampered_move_rejected(self, service, catalog):
        sid, _ = self._finished_session(service)
        events = load_event_log(service._path(sid))
        idx = next(i for i, e in enumerate(events) if e.kind is EventKind.MOVE_PLACED)
        payload = dict(events[idx].payload)
        payload["position"] = 24 if payload["position"] != 24 else 23
        events[idx] = WireEvent(EventKind.MOVE_PLACED, payload, events[idx].sequence)
        with pytest.raises(ReplayError):
            replay_events(events, catalog)

    def test_resigned_session_replays(self, service, catalog):
        view = service.create_session({"attacker": "human", "defender": "greedy"})
        sid = view["session_id"]
        view = service.command(sid, {"type": "place_token", "token": "A1",
                                     "region": "center"})
        view = service.command(sid, {"type": "request_ai_move"})
        view = service.command(sid, {"type": "resign"})
        events = load_event_log(service._path(sid))
        _, state, ended = replay_events(events, catalog)
        assert ended["reason"] == "resigned"
        assert ended["final_result"]["outcome"] == "defender_win"

    def test_cold_reload_from_disk(self, tmp_path, catalog):
        first = SessionService(tmp_path, catalog)
        sid, view = TestReplay()._finished_session(first, seed=6)
        second = SessionService(tmp_path, catalog)
        reloaded = second.view(sid)
        assert reloaded["status"] == "finished"
        assert reloaded["result"] == view["result"]
        assert reloaded["last_sequence"] == view["last_sequence"]

    def test_shadow_replay_after_every_command(self, service, catalog):
        view = service.create_session({"attacker": "random", "defender": "random",
                                       "seed": 12})
        sid = view["session_id"]
        while view["status"] == "open":
            view = service.command(sid, {"type": "request_ai_move"})
            events = load_event_log(service._path(sid))
            _, state, _ = replay_events(events, catalog)
            assert state == service._live(sid).state


class TestHint:
    def test_hint_for_seat_to_move(self, service):
        view = service.create_session({"attacker": "human", "defender": "greedy"})
        hint = service.hint(view["session_id"])
        assert hint["token"].startswith("A")
        assert hint["region"] in ("center", "inner", "middle", "outer")

    def test_hint_is_stable(self, service):
        view = service.create_session({"attacker": "human", "defender": "greedy"})
        sid = view["session_id"]
        assert service.hint(sid) == service.hint(sid)

    def test_hint_targets_judged_matchup(self, service):
        view = service.create_session({"attacker": "human", "defender": "human"})
        sid = view["session_id"]
        service.command(sid, {"type": "place_token", "token": "Phone",
                              "region": "middle", "opening_angle": 1})
        hint = service.hint(sid)
        # Network monitoring is judged to beat Phone (iteration 22).
        assert hint["token"] == "D2"
        assert hint["completes"]["defender_points"] == 1

    def test_hints_disabled(self, service):
        view = service.create_session({"hints": False})
        with pytest.raises(SessionError, match="disabled"):
            service.hint(view["session_id"])


class TestConcurrency:
    def test_interleaved_ai_commands_linearize(self, tmp_path, catalog):
        service = SessionService(tmp_path, catalog)
        view = service.create_session({"attacker": "random", "defender": "random",
                                       "seed": 3})
        sid = view["session_id"]
        errors = []

        def hammer():
            for _ in range(40):
                try:
                    service.command(sid, {"type": "request_ai_move"})
                except SessionError:
                    return  # finished under our feet
                except Exception as exc:  # noqa: BLE001 - collected for assertion
                    errors.append(exc)

        threads = [threading.Thread(target=hammer) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        events = load_event_log(service._path(sid))
        assert [e.sequence for e in events] == list(range(len(events)))
        _, state, ended = replay_events(events, catalog)
        assert state.terminal_reason is not None
        assert ended is not None

    def test_concurrent_sessions_are_independent(self, tmp_path, catalog):
        service = SessionService(tmp_path, catalog)
        ids = [service.create_session({"attacker": "random", "defender": "random",
                                       "seed": s})["session_id"]
               for s in range(4)]

        def finish(sid):
            while service.view(sid)["status"] == "open":
                try:
                    service.command(sid, {"type": "request_ai_move"})
                except SessionError:
                    break

        threads = [threading.Thread(target=finish, args=(sid,)) for sid in ids]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        for sid in ids:
            assert service.view(sid)["status"] == "finished"
            replay_events(load_event_log(service._path(sid)), catalog)


class TestSessionConfig:
    def test_defaults(self):
        config = SessionConfig()
        assert config.seat(Role.DEFENDER) == "human"
        assert config.policy(Role.DEFENDER) is None
        assert config.policy(Role.ATTACKER) is not None

    def test_round_trip(self):
        config = SessionConfig(attacker="minimax:2", defender="random", seed=9,
                               hints=False)
        assert SessionConfig.from_dict(config.to_dict()) == config
