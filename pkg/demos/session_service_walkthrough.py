"""The event-sourced session service, end to end.

A session is a JSONL file of wire events; nothing else is stored. This
script creates a human-vs-greedy session, plays the human seat with hints,
tampers with the log to show the corruption check, and replays the pristine
log back into the exact final report.

The same operations are served over HTTP by `breachboard serve`
(POST /sessions, GET /sessions/{id}?since=, POST /sessions/{id}/commands,
GET /sessions/{id}/report, GET /sessions/{id}/hint, GET /catalog).
"""

import json
import tempfile
from pathlib import Path

from breachboard.board import ReplayError
from breachboard.service import (
    SessionService,
    WireEvent,
    EventKind,
    load_event_log,
    replay_events,
)

data_dir = Path(tempfile.mkdtemp(prefix="breachboard_demo_"))
service = SessionService(data_dir)
print(f"session files live under {data_dir}")

view = service.create_session({"attacker": "greedy", "defender": "human",
                               "seed": 5, "hints": True})
sid = view["session_id"]
print(f"created session {sid}; {view['state']['to_move']} to move")

printed = 0
while view["status"] == "open":
    if view["state"]["to_move"] == "attacker":
        view = service.command(sid, {"type": "request_ai_move"})
    else:
        hint = service.hint(sid)
        view = service.command(sid, {
            "type": "place_token", "token": hint["token"],
            "region": hint["region"], "opening_angle": hint["opening_angle"],
        })
    verdict = view["last_verdict"]
    if verdict and verdict["iteration"] > printed:
        printed = verdict["iteration"]
        print(f"  iteration {verdict['iteration']:2d}: "
              f"{verdict['winner']} +1 — {verdict['comment']} "
              f"(totals {verdict['attacker_running_total']}-"
              f"{verdict['defender_running_total']})")

result = view["result"]["final_result"]
print(f"\nfinished: attacker {result['attacker_total']} — "
      f"defender {result['defender_total']} ({result['outcome']})")

log_path = data_dir / f"{sid}.jsonl"
events = load_event_log(log_path)
print(f"\nthe log holds {len(events)} events; replaying them...")
_, state, ended = replay_events(events, service.catalog)
match = json.dumps(ended, sort_keys=True) == json.dumps(view["result"], sort_keys=True)
print(f"replay reproduces the persisted result byte for byte: {match}")

print("\ntampering with the recorded defender total...")
payload = dict(events[-1].payload)
final = dict(payload["final_result"])
final["defender_total"] += 1
payload["final_result"] = final
tampered = events[:-1] + [WireEvent(EventKind.GAME_ENDED, payload,
                                    events[-1].sequence)]
try:
    replay_events(tampered, service.catalog)
except ReplayError as exc:
    print(f"rejected as expected: {exc}")
