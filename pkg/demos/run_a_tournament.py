"""Seeded tournaments: how much does the policy ladder matter?

Every game derives its seed from the base seed plus the game index, so each
run is exactly reproducible. The greedy defender roughly doubles the random
baseline's mean score; the per-trick table shows where the points come from.
"""

from breachboard import default_catalog, seeded_matchup_matrix
from breachboard.analytics import TournamentConfig, tournament_summary

catalog = default_catalog()
matrix = seeded_matchup_matrix(catalog)

matchups = [
    ("random", "random"),
    ("random", "greedy"),
    ("greedy", "random"),
    ("greedy", "greedy"),
]

print(f"{'attacker':>10s} {'defender':>10s} {'A wins':>7s} {'D wins':>7s} "
      f"{'draws':>6s} {'mean A':>7s} {'mean D':>7s} {'awareness':>10s}")
summaries = {}
for attacker, defender in matchups:
    config = TournamentConfig(games=200, attacker=attacker, defender=defender,
                              seed=7)
    summary = tournament_summary(config, matrix, catalog)
    summaries[(attacker, defender)] = summary
    print(f"{attacker:>10s} {defender:>10s} {summary.attacker_wins:>7d} "
          f"{summary.defender_wins:>7d} {summary.draws:>6d} "
          f"{summary.mean_attacker_score:>7.2f} {summary.mean_defender_score:>7.2f} "
          f"{summary.mean_awareness:>9.1f}%")

best = summaries[("random", "greedy")]
print("\nmost-played defender tokens under the greedy defender:")
rows = sorted(
    ((token, stats) for token, stats in best.token_stats.items()
     if token.startswith("D")),
    key=lambda item: -item[1]["plays"],
)
for token, stats in rows[:5]:
    rate = stats["matchup_wins"] / stats["matchups"] if stats["matchups"] else 0.0
    print(f"  {token:<4s} plays {stats['plays']:>4d}  "
          f"judged matchups {stats['matchups']:>4d}  win rate {rate:5.1%}")

print("\ndefender trick table (greedy defender, 200 games):")
for row in best.trick_tables["defender"]:
    print(f"  {row['trick']:<20s} played {row['played']:>4d}  "
          f"won {row['wins']:>4d}  win rate {row['win_rate']:5.1%}")
