"""The judging entity: matchup verdicts, pair scoring, and final results.

Scoring follows the published scheme. Each of the 16 evaluation pairs yields
one score event: a judged attacker-vs-defender matchup awards 1 point to the
winner, two same-player tokens on one pair award that player a 2-point
sequential bonus, and anything else (an incomplete pair or a matchup the
seeded table never judged) awards nothing. The per-iteration verdict stream
is advisory feedback; the 16-pair evaluation is the authoritative score.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .board import EVALUATION_PAIRS, EvaluationPair, GameState
from .catalog import Catalog, MatchupMatrix, Role, TokenId


class VerdictSource(str, Enum):
    JUDGED = "judged"
    UNJUDGED = "unjudged"


@dataclass(frozen=True, slots=True)
class Verdict:
    winner: Role | None
    source: VerdictSource
    comment: str = ""


UNJUDGED = Verdict(None, VerdictSource.UNJUDGED)


def judge_matchup(matrix: MatchupMatrix, attacker: TokenId, defender: TokenId) -> Verdict:
    """Deterministic lookup of the seeded verdict for one token matchup.

    Pairs absent from the matrix are unjudged, never guessed.
    """
    if attacker.role is not Role.ATTACKER:
        raise ValueError(f"{attacker} is not an attacker token")
    if defender.role is not Role.DEFENDER:
        raise ValueError(f"{defender} is not a defender token")
    entry = matrix.get(attacker, defender)
    if entry is None:
        return UNJUDGED
    return Verdict(entry.winner, VerdictSource.JUDGED, entry.comment)


class ScoreEventKind(str, Enum):
    MIXED_MATCHUP = "mixed_matchup"
    SEQUENTIAL_BONUS = "sequential_bonus"
    INCOMPLETE = "incomplete"
    UNJUDGED_MATCHUP = "unjudged_matchup"


@dataclass(frozen=True, slots=True)
class ScoreEvent:
    pair: EvaluationPair
    kind: ScoreEventKind
    attacker_points: int
    defender_points: int
    tokens: tuple[TokenId, ...] = ()
    comment: str = ""

    def to_dict(self) -> dict:
        return {
            "pair": {"a": self.pair.a, "b": self.pair.b, "round": self.pair.round,
                     "order_in_round": self.pair.order_in_round},
            "kind": self.kind.value,
            "attacker_points": self.attacker_points,
            "defender_points": self.defender_points,
            "tokens": [str(t) for t in self.tokens],
            "comment": self.comment,
        }


class Outcome(str, Enum):
    ATTACKER_WIN = "attacker_win"
    DEFENDER_WIN = "defender_win"
    DRAW = "draw"


@dataclass(frozen=True, slots=True)
class FinalResult:
    events: tuple[ScoreEvent, ...]
    attacker_total: int
    defender_total: int
    outcome: Outcome

    def to_dict(self) -> dict:
        return {
            "events": [e.to_dict() for e in self.events],
            "attacker_total": self.attacker_total,
            "defender_total": self.defender_total,
            "outcome": self.outcome.value,
        }


def evaluate_endpoints(
    occupant_a: TokenId | None,
    occupant_b: TokenId | None,
    pair: EvaluationPair,
    matrix: MatchupMatrix,
) -> ScoreEvent:
    """Score one evaluation pair from its two occupants."""
    if occupant_a is None or occupant_b is None:
        tokens = tuple(t for t in (occupant_a, occupant_b) if t is not None)
        return ScoreEvent(pair, ScoreEventKind.INCOMPLETE, 0, 0, tokens)
    tokens = (occupant_a, occupant_b)
    if occupant_a.role is occupant_b.role:
        points = (2, 0) if occupant_a.role is Role.ATTACKER else (0, 2)
        return ScoreEvent(pair, ScoreEventKind.SEQUENTIAL_BONUS, *points, tokens)
    attacker = occupant_a if occupant_a.role is Role.ATTACKER else occupant_b
    defender = occupant_b if occupant_a.role is Role.ATTACKER else occupant_a
    verdict = judge_matchup(matrix, attacker, defender)
    if verdict.source is VerdictSource.UNJUDGED:
        return ScoreEvent(pair, ScoreEventKind.UNJUDGED_MATCHUP, 0, 0, tokens)
    points = (1, 0) if verdict.winner is Role.ATTACKER else (0, 1)
    return ScoreEvent(pair, ScoreEventKind.MIXED_MATCHUP, *points, tokens, verdict.comment)


def evaluate_pair(state: GameState, pair: EvaluationPair, matrix: MatchupMatrix) -> ScoreEvent:
    return evaluate_endpoints(state.cell(pair.a), state.cell(pair.b), pair, matrix)


def evaluate_board(state: GameState, matrix: MatchupMatrix) -> FinalResult:
    """Score all 16 pairs in round order, regardless of termination."""
    events = tuple(evaluate_pair(state, pair, matrix) for pair in EVALUATION_PAIRS)
    attacker_total = sum(e.attacker_points for e in events)
    defender_total = sum(e.defender_points for e in events)
    if attacker_total > defender_total:
        outcome = Outcome.ATTACKER_WIN
    elif defender_total > attacker_total:
        outcome = Outcome.DEFENDER_WIN
    else:
        outcome = Outcome.DRAW
    return FinalResult(events, attacker_total, defender_total, outcome)


def final_result(state: GameState, matrix: MatchupMatrix) -> FinalResult:
    if state.terminal_reason is None:
        raise ValueError("final_result requires a terminal state")
    return evaluate_board(state, matrix)


@dataclass(frozen=True, slots=True)
class IterationVerdict:
    """Advisory per-iteration feedback: one attacker ply judged against the
    defender ply that answered it."""

    iteration: int
    attacker_token: TokenId
    defender_token: TokenId
    verdict: Verdict
    a_points: int
    d_points: int

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "attacker_token": str(self.attacker_token),
            "defender_token": str(self.defender_token),
            "winner": None if self.verdict.winner is None else self.verdict.winner.value,
            "source": self.verdict.source.value,
            "comment": self.verdict.comment,
            "a_points": self.a_points,
            "d_points": self.d_points,
        }


def judge_iterations(
    token_pairs: Iterable[tuple[TokenId, TokenId]],
    matrix: MatchupMatrix,
) -> list[IterationVerdict]:
    verdicts = []
    for iteration, (attacker, defender) in enumerate(token_pairs, start=1):
        verdict = judge_matchup(matrix, attacker, defender)
        a_points = 1 if verdict.winner is Role.ATTACKER else 0
        d_points = 1 if verdict.winner is Role.DEFENDER else 0
        verdicts.append(IterationVerdict(iteration, attacker, defender, verdict,
                                         a_points, d_points))
    return verdicts


def iteration_log(state: GameState, matrix: MatchupMatrix) -> list[IterationVerdict]:
    """Judge the game log iteration by iteration (attacker ply + defender
    reply). A trailing unanswered attacker ply yields no iteration."""
    log = state.log
    pairs = [
        (log[k].action.token, log[k + 1].action.token)
        for k in range(0, len(log) - 1, 2)
    ]
    return judge_iterations(pairs, matrix)


def render_scoring_table(verdicts: Sequence[IterationVerdict], catalog: Catalog) -> str:
    """Text table of iteration verdicts in the published column layout."""
    header = ("Iteration", "A", "D", "A%", "D%", "Judge", "Comments")
    rows = [header]
    for v in verdicts:
        if v.verdict.winner is Role.ATTACKER:
            judge_text = "Attacker best move"
        elif v.verdict.winner is Role.DEFENDER:
            judge_text = "Defender best move"
        else:
            judge_text = "No verdict"
        rows.append((
            str(v.iteration),
            catalog.token(v.attacker_token).label,
            catalog.token(v.defender_token).label,
            str(v.a_points),
            str(v.d_points),
            judge_text,
            v.verdict.comment,
        ))
    widths = [max(len(row[col]) for row in rows) for col in range(len(header))]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)
