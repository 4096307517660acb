"""What does misperceiving the game cost?

Each player solves their own *perceived* payoff matrix; the realized value
and regrets are then measured under the true one. An attacker who believes
every matchup is a coin flip collapses to a single predictable token. The
surprise: the maximin defender barely punishes this, because playing the
safe equilibrium forgoes exploitation. The regret of *not* best-responding
to the actual opponent lands on the informed player.
"""

import numpy as np

from breachboard import (
    default_catalog,
    hypergame_eval,
    payoff_matrix,
    seeded_matchup_matrix,
)

catalog = default_catalog()
payoff = payoff_matrix(seeded_matchup_matrix(catalog))

print("case 1: both players perceive the true matrix")
report = hypergame_eval(payoff, payoff, payoff)
print(f"  realized value {report.realized_value:.4f}")
print(f"  attacker regret {report.attacker_regret:.4f}, "
      f"defender regret {report.defender_regret:.4f}  (both ≈ 0)")

print("\ncase 2: the attacker perceives total ignorance (all cells 0.5)")
ignorant = np.full((13, 13), 0.5)
report = hypergame_eval(payoff, ignorant, payoff.values)
lead = max(
    zip(payoff.attacker_tokens, report.attacker_strategy.probabilities),
    key=lambda item: item[1],
)
print(f"  the ignorant attacker collapses to {lead[0]} "
      f"({catalog.token(lead[0]).label}) with probability {lead[1]:.2f}")
print(f"  realized value {report.realized_value:.4f} "
      f"(the maximin defender still concedes almost the full game value)")
print(f"  attacker regret {report.attacker_regret:.4f} — tiny: "
      f"the defender's maximin play caps every attacker strategy")
print(f"  defender regret {report.defender_regret:.4f} — large: "
      f"best-responding to pure Email would hold the attacker to 0")

print("\ncase 3: roles mirrored (payoffs flipped and transposed)")
mirror = lambda m: 1.0 - np.asarray(m).T
mirrored = hypergame_eval(mirror(payoff.values), mirror(payoff.values), mirror(ignorant))
print(f"  mirrored attacker regret {mirrored.attacker_regret:.4f} "
      f"== original defender regret {report.defender_regret:.4f}")
print(f"  mirrored realized value {mirrored.realized_value:.4f} "
      f"== 1 - original {1 - report.realized_value:.4f}")
