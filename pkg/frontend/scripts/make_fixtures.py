"""Record test fixtures for the browser client from the real engine.

Produces, under tests/fixtures/:

  human_vs_greedy.jsonl  one complete session: greedy attacker vs a human
                         defender who follows the coach hints (and burns one
                         token early to exercise the used-twice lockout)
  final_view.json        the server's view of the finished session
  catalog.json           the GET /catalog payload

Regenerate after engine changes: python3 frontend/scripts/make_fixtures.py
"""

import json
import shutil
import tempfile
from pathlib import Path

from breachboard.service import SessionService

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> None:
    data_dir = Path(tempfile.mkdtemp(prefix="bb_fixtures_"))
    service = SessionService(data_dir)
    view = service.create_session({
        "attacker": "greedy", "defender": "human", "seed": 5, "hints": True,
    })
    sid = view["session_id"]
    defender_moves = 0
    while view["status"] == "open":
        if view["state"]["to_move"] == "attacker":
            view = service.command(sid, {"type": "request_ai_move"})
            continue
        defender_moves += 1
        if defender_moves <= 2:
            # Use Denying twice immediately so the palette lockout is
            # reachable from an event prefix.
            legal = view["legal"]
            region = legal["regions"][-1]
            angles = legal["opening_angles"].get(region)
            command = {"type": "place_token", "token": "D1", "region": region,
                       "opening_angle": angles[0] if angles else None}
        else:
            hint = service.hint(sid)
            command = {"type": "place_token", "token": hint["token"],
                       "region": hint["region"],
                       "opening_angle": hint["opening_angle"]}
        view = service.command(sid, command)

    FIXTURES.mkdir(parents=True, exist_ok=True)
    shutil.copyfile(data_dir / f"{sid}.jsonl", FIXTURES / "human_vs_greedy.jsonl")
    (FIXTURES / "final_view.json").write_text(
        json.dumps(service.events_since(sid, -1), indent=2, sort_keys=True) + "\n")
    (FIXTURES / "catalog.json").write_text(
        json.dumps(service.catalog_payload(), indent=2, sort_keys=True) + "\n")
    print(f"recorded session {sid}: {view['state']['ply']} plies, "
          f"{len(view['result']['report']['iterations'])} iterations, "
          f"outcome {view['result']['final_result']['outcome']}")


if __name__ == "__main__":
    main()
