"""Walk through one scripted game move by move.

The attacker opens the inner ring; the defender answers through the center
and the rings. Watch how the clockwise rule resolves each placement, how the
judge comments on every completed iteration, and how the final 16-pair
evaluation settles the game.
"""

from breachboard import (
    Action,
    GameConfig,
    Region,
    apply_action,
    default_catalog,
    iteration_log,
    judge_iterations,
    new_game,
    render_scoring_table,
    seeded_matchup_matrix,
)
from breachboard.analytics import game_report
from breachboard.catalog import Role
from breachboard.cli import render_board

catalog = default_catalog()
matrix = seeded_matchup_matrix(catalog)
state = new_game(GameConfig(catalog))

script = [
    ("Email", Region.INNER, 1),        # attacker opens the inner ring
    ("No trust", Region.CENTER, None), # completes pair (25, 1): judged!
    ("Phone", Region.MIDDLE, 1),
    ("Trust", Region.OUTER, 1),        # completes pair (9, 17): attacker point
    ("Chat", Region.INNER, None),      # cursor advances clockwise to angle 2
    ("Identification", Region.INNER, None),
    ("Click", Region.MIDDLE, None),
    ("Denying", Region.OUTER, None),
]

for label, region, angle in script:
    role = state.to_move
    token = catalog.resolve(role, label)
    state = apply_action(state, Action(token, region, angle))
    entry = state.log[-1]
    print(f"ply {entry.ply:2d}: {role.value:8s} places {token} "
          f"{catalog.token(token).label!r} -> position {entry.position}")
    if state.ply % 2 == 0:
        pair = (state.log[-2].action.token, state.log[-1].action.token)
        (verdict,) = judge_iterations([pair], matrix)
        if verdict.verdict.winner is not None:
            print(f"         judge: {verdict.verdict.winner.value} +1 "
                  f"— {verdict.verdict.comment}")
        else:
            print("         judge: no seeded verdict for this matchup")

print()
print(render_board(state, catalog))

# Fill the rest of the board with the deterministic greedy policy so the
# game reaches its natural end (the board always fills on ply 25).
from breachboard import Policy, choose_action

while state.terminal_reason is None:
    state = apply_action(state, choose_action(Policy.greedy(), state, matrix))

print(f"\ngame over: {state.terminal_reason.value} after {state.ply} plies\n")
print(render_scoring_table(iteration_log(state, matrix), catalog))

report = game_report(state, matrix, catalog)
final = report.final
print(f"\nfinal evaluation over the 16 pairs: attacker {final.attacker_total}, "
      f"defender {final.defender_total} ({final.outcome.value})")
print(f"awareness score {report.awareness_score:.1f}%  "
      f"intrusion score {report.intrusion_score:.1f}%")
print(f"unjudged matchups on the board: {report.unjudged_count}")
