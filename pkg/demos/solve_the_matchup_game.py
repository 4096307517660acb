"""Solve the token matchup table as a zero-sum matrix game.

Judged attacker wins pay 1, judged defender wins pay 0, and the unjudged
cells sit at 0.5 (maximal uncertainty). Fictitious play converges to the
maximin mixed strategies; exploitability measures how far from equilibrium
the averages still are.
"""

import numpy as np

from breachboard import (
    default_catalog,
    exploitability,
    payoff_matrix,
    seeded_matchup_matrix,
    solve_matrix_game,
)

catalog = default_catalog()
payoff = payoff_matrix(seeded_matchup_matrix(catalog))

print("payoff matrix (rows = attacker tokens, columns = defender tokens):")
header = "     " + " ".join(f"{str(d):>4s}" for d in payoff.defender_tokens)
print(header)
for token, row in zip(payoff.attacker_tokens, payoff.values):
    print(f"{str(token):>4s} " + " ".join(f"{v:4.1f}" for v in row))

report = solve_matrix_game(payoff, iterations=100_000, tolerance=1e-3)
print(f"\nfictitious play: {report.iterations} iterations, "
      f"value {report.value:.6f} (the game is worth 3/7 ≈ 0.428571 "
      f"to the attacker), exploitability {report.exploitability:.4f}")

print("\nattacker maximin strategy (probability > 1%):")
for token, prob in zip(payoff.attacker_tokens, report.attacker_strategy.probabilities):
    if prob > 0.01:
        print(f"  {token} {catalog.token(token).label:<18s} {prob:6.3f}")

print("\ndefender maximin strategy (probability > 1%):")
for token, prob in zip(payoff.defender_tokens, report.defender_strategy.probabilities):
    if prob > 0.01:
        print(f"  {token} {catalog.token(token).label:<18s} {prob:6.3f}")

# Exploitability of naive play, for contrast: always lead with the first token.
naive = np.zeros(13)
naive[0] = 1.0
gap = exploitability(payoff, naive, report.defender_strategy)
print(f"\nexploitability of a pure-A1 attacker against the solved defender: {gap:.4f}")
