"""AI players and game-theoretic analysis of the token matchup game.

Board play offers a deterministic ladder: seeded-random, greedy (myopic
score-delta maximization), and fixed-depth minimax with alpha-beta. The
matchup matrix itself is analyzed as a zero-sum matrix game: fictitious play
yields approximate maximin mixed strategies, with exploitability as the
convergence measure, and a hypergame evaluator scores what each player loses
by optimizing a misperceived payoff matrix.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .board import (
    Action,
    GameState,
    PAIRS_BY_POSITION,
    apply_action,
    legal_actions,
    resolve_position,
)
from .catalog import MatchupMatrix, Role, TokenId, TOKENS_PER_ROLE
from .judge import evaluate_board, evaluate_endpoints


class UnknownPolicyError(ValueError):
    pass


class PolicyKind(str, Enum):
    RANDOM = "random"
    GREEDY = "greedy"
    MINIMAX = "minimax"


@dataclass(frozen=True, slots=True)
class Policy:
    kind: PolicyKind
    seed: int = 0
    depth: int = 1

    def __post_init__(self) -> None:
        if self.kind is PolicyKind.MINIMAX and self.depth < 1:
            raise ValueError("minimax depth must be >= 1")

    @classmethod
    def random(cls, seed: int = 0) -> "Policy":
        return cls(PolicyKind.RANDOM, seed=seed)

    @classmethod
    def greedy(cls) -> "Policy":
        return cls(PolicyKind.GREEDY)

    @classmethod
    def minimax(cls, depth: int = 2) -> "Policy":
        return cls(PolicyKind.MINIMAX, depth=depth)

    def describe(self) -> str:
        if self.kind is PolicyKind.MINIMAX:
            return f"minimax:{self.depth}"
        return self.kind.value


def parse_policy(text: str, seed: int = 0) -> Policy:
    """Parse a policy name: ``random``, ``greedy``, ``minimax``, ``minimax:N``."""
    name, _, arg = text.strip().lower().partition(":")
    if name == "random":
        return Policy.random(seed)
    if name == "greedy":
        return Policy.greedy()
    if name == "minimax":
        depth = int(arg) if arg else 2
        return Policy.minimax(depth)
    raise UnknownPolicyError(f"unknown policy {text!r}")


def _score_differential(state: GameState, perspective: Role, matrix: MatchupMatrix) -> int:
    result = evaluate_board(state, matrix)
    diff = result.attacker_total - result.defender_total
    return diff if perspective is Role.ATTACKER else -diff


def _action_delta(state: GameState, action: Action, matrix: MatchupMatrix) -> int:
    """Differential change for the mover if ``action`` were applied.

    Only the pairs touching the resolved cell can change, and the cell is
    empty beforehand, so each affected pair scores (0,0) before the move.
    """
    index = resolve_position(state, action)
    mover = state.to_move
    delta = 0
    for pair in PAIRS_BY_POSITION[index]:
        occ_a = action.token if pair.a == index else state.cell(pair.a)
        occ_b = action.token if pair.b == index else state.cell(pair.b)
        event = evaluate_endpoints(occ_a, occ_b, pair, matrix)
        gain = event.attacker_points - event.defender_points
        delta += gain if mover is Role.ATTACKER else -gain
    return delta


def _choose_random(policy: Policy, state: GameState, actions: list[Action]) -> Action:
    # The generator is re-derived from (seed, seat, game history) so the
    # choice is a pure function of policy and state.
    history = ";".join(f"{e.action.token}{e.position}" for e in state.log)
    rng = random.Random(f"{policy.seed}|{state.to_move.value}|{state.ply}|{history}")
    return actions[rng.randrange(len(actions))]


def _choose_greedy(state: GameState, actions: list[Action], matrix: MatchupMatrix) -> Action:
    best = actions[0]
    best_delta = _action_delta(state, best, matrix)
    for action in actions[1:]:
        delta = _action_delta(state, action, matrix)
        if delta > best_delta:
            best, best_delta = action, delta
    return best


def _minimax_value(
    state: GameState,
    depth: int,
    alpha: float,
    beta: float,
    root: Role,
    matrix: MatchupMatrix,
) -> float:
    if depth == 0 or state.terminal_reason is not None:
        return _score_differential(state, root, matrix)
    if state.to_move is root:
        value = -math.inf
        for action in legal_actions(state):
            child = apply_action(state, action)
            value = max(value, _minimax_value(child, depth - 1, alpha, beta, root, matrix))
            alpha = max(alpha, value)
            if alpha >= beta:
                break
        return value
    value = math.inf
    for action in legal_actions(state):
        child = apply_action(state, action)
        value = min(value, _minimax_value(child, depth - 1, alpha, beta, root, matrix))
        beta = min(beta, value)
        if alpha >= beta:
            break
    return value


def _choose_minimax(
    policy: Policy, state: GameState, actions: list[Action], matrix: MatchupMatrix
) -> Action:
    root = state.to_move
    best = None
    best_value = -math.inf
    for action in actions:
        child = apply_action(state, action)
        value = _minimax_value(child, policy.depth - 1, best_value, math.inf, root, matrix)
        if value > best_value:
            best, best_value = action, value
    assert best is not None
    return best


def choose_action(policy: Policy, state: GameState, matrix: MatchupMatrix) -> Action:
    """Pick one legal action for the player to move.

    All kinds are deterministic functions of (policy, state): ties are broken
    by lowest token index, then center < inner < middle < outer, then lowest
    opening angle (the enumeration order of ``legal_actions``).
    """
    actions = legal_actions(state)
    if not actions:
        raise ValueError("no legal actions: state is terminal")
    if policy.kind is PolicyKind.RANDOM:
        return _choose_random(policy, state, actions)
    if policy.kind is PolicyKind.GREEDY:
        return _choose_greedy(state, actions, matrix)
    return _choose_minimax(policy, state, actions, matrix)


# --- matrix-game analysis ---------------------------------------------------

UNJUDGED_PAYOFF = 0.5


@dataclass(frozen=True)
class PayoffMatrix:
    """Attacker payoff per token matchup: 1 for a judged attacker win, 0 for
    a judged defender win, 0.5 (maximal uncertainty) where unjudged."""

    values: np.ndarray
    attacker_tokens: tuple[TokenId, ...]
    defender_tokens: tuple[TokenId, ...]


def payoff_matrix(matrix: MatchupMatrix) -> PayoffMatrix:
    values = np.full((TOKENS_PER_ROLE, TOKENS_PER_ROLE), UNJUDGED_PAYOFF)
    for entry in matrix:
        row = entry.attacker.index - 1
        col = entry.defender.index - 1
        values[row, col] = 1.0 if entry.winner is Role.ATTACKER else 0.0
    return PayoffMatrix(
        values=values,
        attacker_tokens=tuple(TokenId(Role.ATTACKER, i) for i in range(1, TOKENS_PER_ROLE + 1)),
        defender_tokens=tuple(TokenId(Role.DEFENDER, i) for i in range(1, TOKENS_PER_ROLE + 1)),
    )


@dataclass(frozen=True, slots=True)
class MixedStrategy:
    probabilities: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(p < 0 for p in self.probabilities):
            raise ValueError("mixed strategy has a negative probability")
        if abs(sum(self.probabilities) - 1.0) > 1e-9:
            raise ValueError("mixed strategy probabilities do not sum to 1")

    def __len__(self) -> int:
        return len(self.probabilities)


@dataclass(frozen=True, slots=True)
class EquilibriumReport:
    attacker_strategy: MixedStrategy
    defender_strategy: MixedStrategy
    value: float
    iterations: int
    exploitability: float


def _as_matrix(payoff) -> np.ndarray:
    values = payoff.values if isinstance(payoff, PayoffMatrix) else np.asarray(payoff, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.size == 0:
        raise ValueError("payoff must be a non-empty 2-D matrix")
    if not np.isfinite(values).all():
        raise ValueError("payoff matrix has non-finite entries")
    return values


def _as_vector(strategy, size: int, name: str) -> np.ndarray:
    probs = strategy.probabilities if isinstance(strategy, MixedStrategy) else strategy
    vec = np.asarray(probs, dtype=float)
    if vec.shape != (size,):
        raise ValueError(f"{name} strategy has {vec.shape[0] if vec.ndim == 1 else '?'} "
                         f"entries, payoff expects {size}")
    return vec


def exploitability(payoff, attacker, defender) -> float:
    """Best-response gap for a strategy pair: zero exactly at equilibrium.

    Computed as max_i (P d)_i - min_j (a P)_j, which bounds how much either
    side could gain by deviating.
    """
    values = _as_matrix(payoff)
    a = _as_vector(attacker, values.shape[0], "attacker")
    d = _as_vector(defender, values.shape[1], "defender")
    return float((values @ d).max() - (a @ values).min())


def solve_matrix_game(payoff, iterations: int = 100_000,
                      tolerance: float = 1e-3) -> EquilibriumReport:
    """Approximate the maximin solution of a zero-sum matrix game by
    fictitious play.

    Each side best-responds to the opponent's empirical average (lowest index
    on ties); the time-averaged strategies are returned. Stops early once
    their exploitability drops to ``tolerance``.
    """
    values = _as_matrix(payoff)
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    m, n = values.shape
    attacker_counts = np.zeros(m)
    defender_counts = np.zeros(n)
    # Cumulative payoffs against the opponent's play so far; argmax/argmin of
    # these are the best responses to the empirical averages.
    row_cum = np.zeros(m)
    col_cum = np.zeros(n)
    check_every = 64
    t = 0
    while t < iterations:
        i = int(row_cum.argmax())
        j = int(col_cum.argmin())
        attacker_counts[i] += 1
        defender_counts[j] += 1
        row_cum += values[:, j]
        col_cum += values[i]
        t += 1
        if t % check_every == 0 or t == iterations:
            if (row_cum.max() - col_cum.min()) / t <= tolerance:
                break
    attacker_avg = attacker_counts / t
    defender_avg = defender_counts / t
    attacker_strategy = MixedStrategy(tuple(float(p) for p in attacker_avg))
    defender_strategy = MixedStrategy(tuple(float(p) for p in defender_avg))
    return EquilibriumReport(
        attacker_strategy=attacker_strategy,
        defender_strategy=defender_strategy,
        value=float(attacker_avg @ values @ defender_avg),
        iterations=t,
        exploitability=exploitability(values, attacker_strategy, defender_strategy),
    )


@dataclass(frozen=True, slots=True)
class MisperceptionReport:
    """Hypergame outcome: each player optimizes its own perceived payoff
    matrix; regrets measure the cost of misperception under the true one."""

    attacker_strategy: MixedStrategy
    defender_strategy: MixedStrategy
    realized_value: float
    attacker_perceived_value: float
    defender_perceived_value: float
    attacker_regret: float
    defender_regret: float


def hypergame_eval(true_payoff, perceived_attacker, perceived_defender,
                   iterations: int = 100_000, tolerance: float = 1e-3) -> MisperceptionReport:
    true_values = _as_matrix(true_payoff)
    attacker_view = _as_matrix(perceived_attacker)
    defender_view = _as_matrix(perceived_defender)
    for name, view in (("attacker", attacker_view), ("defender", defender_view)):
        if view.shape != true_values.shape:
            raise ValueError(f"{name} perceived matrix shape {view.shape} does not "
                             f"match true matrix {true_values.shape}")
    attacker_solution = solve_matrix_game(attacker_view, iterations, tolerance)
    defender_solution = solve_matrix_game(defender_view, iterations, tolerance)
    a = np.asarray(attacker_solution.attacker_strategy.probabilities)
    d = np.asarray(defender_solution.defender_strategy.probabilities)
    realized = float(a @ true_values @ d)
    attacker_regret = float((true_values @ d).max() - realized)
    defender_regret = float(realized - (a @ true_values).min())
    return MisperceptionReport(
        attacker_strategy=attacker_solution.attacker_strategy,
        defender_strategy=defender_solution.defender_strategy,
        realized_value=realized,
        attacker_perceived_value=attacker_solution.value,
        defender_perceived_value=defender_solution.value,
        attacker_regret=attacker_regret,
        defender_regret=defender_regret,
    )
