"""Awareness/intrusion reporting, trick breakdowns, and tournament runs.

The awareness score is the defender's percentage share of all awarded
points, the intrusion score the attacker's; a game with no awarded points
scores 0/0 rather than implying balance. Trick tables attribute every judged
matchup to the trick tags of the tokens involved. The psychological-factor
taxonomy is reported alongside trick tags without any invented mapping
between the two.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .board import GameConfig, GameState, apply_action, new_game
from .catalog import (
    Catalog,
    MatchupMatrix,
    PSYCH_FACTORS,
    PSYCH_STIMULI,
    Role,
    TOKENS_PER_ROLE,
    TokenId,
)
from .judge import (
    FinalResult,
    IterationVerdict,
    Outcome,
    ScoreEventKind,
    final_result,
    iteration_log,
)
from .strategies import Policy, PolicyKind, choose_action, parse_policy


@dataclass(frozen=True, slots=True)
class TrickCounts:
    wins: int = 0
    losses: int = 0

    @property
    def played(self) -> int:
        return self.wins + self.losses

    @property
    def win_rate(self) -> float:
        return self.wins / self.played if self.played else 0.0


@dataclass(frozen=True)
class GameReport:
    final: FinalResult
    iterations: tuple[IterationVerdict, ...]
    awareness_score: float
    intrusion_score: float
    per_trick: dict
    unjudged_count: int

    def to_dict(self) -> dict:
        return {
            "final": self.final.to_dict(),
            "iterations": [v.to_dict() for v in self.iterations],
            "awareness_score": self.awareness_score,
            "intrusion_score": self.intrusion_score,
            "per_trick": {
                side: {
                    tag: {"wins": c.wins, "losses": c.losses}
                    for tag, c in sorted(table.items())
                }
                for side, table in self.per_trick.items()
            },
            "unjudged_count": self.unjudged_count,
        }


def _share(part: int, total: int) -> float:
    return 100.0 * part / total if total else 0.0


def game_report(state: GameState, matrix: MatchupMatrix, catalog: Catalog) -> GameReport:
    return build_report(state, matrix, catalog, final_result(state, matrix))


def build_report(state: GameState, matrix: MatchupMatrix, catalog: Catalog,
                 final: FinalResult) -> GameReport:
    """Report for a supplied result; lets a resignation carry a forced
    outcome while everything else is recomputed from the state."""
    verdicts = tuple(iteration_log(state, matrix))
    awarded = final.attacker_total + final.defender_total
    per_trick: dict[str, dict[str, TrickCounts]] = {"attacker": {}, "defender": {}}

    def bump(token: TokenId, won: bool) -> None:
        side = token.role.value
        tag = catalog.token(token).trick.name
        counts = per_trick[side].get(tag, TrickCounts())
        per_trick[side][tag] = replace(
            counts,
            wins=counts.wins + (1 if won else 0),
            losses=counts.losses + (0 if won else 1),
        )

    for event in final.events:
        if event.kind is not ScoreEventKind.MIXED_MATCHUP:
            continue
        attacker_won = event.attacker_points > 0
        for token in event.tokens:
            bump(token, won=(token.role is Role.ATTACKER) == attacker_won)

    return GameReport(
        final=final,
        iterations=verdicts,
        awareness_score=_share(final.defender_total, awarded),
        intrusion_score=_share(final.attacker_total, awarded),
        per_trick=per_trick,
        unjudged_count=sum(
            1 for e in final.events if e.kind is ScoreEventKind.UNJUDGED_MATCHUP
        ),
    )


def trick_breakdown(reports: Iterable[GameReport], catalog: Catalog | None = None) -> dict:
    """Aggregate trick tables over many reports.

    Returns one table per side, each a list of rows
    ``{trick, played, wins, win_rate}`` ordered by tag name.
    """
    totals: dict[str, dict[str, TrickCounts]] = {"attacker": {}, "defender": {}}
    for report in reports:
        for side, table in report.per_trick.items():
            for tag, counts in table.items():
                acc = totals[side].get(tag, TrickCounts())
                totals[side][tag] = TrickCounts(acc.wins + counts.wins,
                                                acc.losses + counts.losses)
    return {
        side: [
            {"trick": tag, "played": c.played, "wins": c.wins, "win_rate": c.win_rate}
            for tag, c in sorted(table.items())
        ]
        for side, table in totals.items()
    }


def factor_taxonomy() -> dict:
    """The psychological-factor taxonomy, reported side by side with trick
    tags (the source material defines no mapping between them)."""
    return {
        "vulnerability": [f.name for f in PSYCH_FACTORS if f.pole == "vulnerability"],
        "protection": [f.name for f in PSYCH_FACTORS if f.pole == "protection"],
        "stimuli": list(PSYCH_STIMULI),
    }


# --- tournaments ------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class TournamentConfig:
    games: int
    attacker: str | Policy = "random"
    defender: str | Policy = "random"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.games < 1:
            raise ValueError("games must be >= 1")


def _describe_policy(spec) -> str:
    return spec.describe() if isinstance(spec, Policy) else str(spec)


@dataclass(frozen=True)
class TournamentSummary:
    games: int
    attacker_policy: str
    defender_policy: str
    seed: int
    attacker_wins: int
    defender_wins: int
    draws: int
    mean_attacker_score: float
    mean_defender_score: float
    mean_awareness: float
    mean_intrusion: float
    total_placements: int
    token_stats: dict
    trick_tables: dict
    unjudged_total: int

    def to_dict(self) -> dict:
        return {
            "games": self.games,
            "attacker_policy": self.attacker_policy,
            "defender_policy": self.defender_policy,
            "seed": self.seed,
            "attacker_wins": self.attacker_wins,
            "defender_wins": self.defender_wins,
            "draws": self.draws,
            "mean_attacker_score": self.mean_attacker_score,
            "mean_defender_score": self.mean_defender_score,
            "mean_awareness": self.mean_awareness,
            "mean_intrusion": self.mean_intrusion,
            "total_placements": self.total_placements,
            "token_stats": {k: dict(v) for k, v in sorted(self.token_stats.items())},
            "trick_tables": self.trick_tables,
            "unjudged_total": self.unjudged_total,
        }


def _policy_for_game(spec, game_seed: int) -> Policy:
    if isinstance(spec, Policy):
        policy = spec
    else:
        policy = parse_policy(str(spec))
    if policy.kind is PolicyKind.RANDOM:
        return replace(policy, seed=game_seed)
    return policy


def play_game(attacker: Policy, defender: Policy, matrix: MatchupMatrix,
              config: GameConfig) -> GameState:
    """Run one complete game between two policies."""
    state = new_game(config)
    while state.terminal_reason is None:
        policy = attacker if state.to_move is Role.ATTACKER else defender
        state = apply_action(state, choose_action(policy, state, matrix))
    return state


def summarize_games(records: Sequence[tuple[GameState, GameReport]],
                    tournament: TournamentConfig) -> TournamentSummary:
    """Fold per-game records into a summary; independent of record order."""
    games = len(records)
    attacker_wins = defender_wins = draws = 0
    attacker_points = defender_points = 0
    awareness = intrusion = 0.0
    unjudged_total = 0
    total_placements = 0
    token_stats: dict[str, dict[str, int]] = {
        str(TokenId(role, i)): {"plays": 0, "matchup_wins": 0, "matchups": 0}
        for role in (Role.ATTACKER, Role.DEFENDER)
        for i in range(1, TOKENS_PER_ROLE + 1)
    }

    def stats_for(token: TokenId) -> dict[str, int]:
        return token_stats[str(token)]

    for state, report in records:
        outcome = report.final.outcome
        attacker_wins += outcome is Outcome.ATTACKER_WIN
        defender_wins += outcome is Outcome.DEFENDER_WIN
        draws += outcome is Outcome.DRAW
        attacker_points += report.final.attacker_total
        defender_points += report.final.defender_total
        awareness += report.awareness_score
        intrusion += report.intrusion_score
        unjudged_total += report.unjudged_count
        total_placements += len(state.log)
        for entry in state.log:
            stats_for(entry.action.token)["plays"] += 1
        for event in report.final.events:
            if event.kind is not ScoreEventKind.MIXED_MATCHUP:
                continue
            attacker_won = event.attacker_points > 0
            for token in event.tokens:
                stats = stats_for(token)
                stats["matchups"] += 1
                if (token.role is Role.ATTACKER) == attacker_won:
                    stats["matchup_wins"] += 1

    return TournamentSummary(
        games=games,
        attacker_policy=_describe_policy(tournament.attacker),
        defender_policy=_describe_policy(tournament.defender),
        seed=tournament.seed,
        attacker_wins=attacker_wins,
        defender_wins=defender_wins,
        draws=draws,
        mean_attacker_score=attacker_points / games,
        mean_defender_score=defender_points / games,
        mean_awareness=awareness / games,
        mean_intrusion=intrusion / games,
        total_placements=total_placements,
        token_stats=token_stats,
        trick_tables=trick_breakdown([r for _, r in records]),
        unjudged_total=unjudged_total,
    )


def tournament_summary(tournament: TournamentConfig, matrix: MatchupMatrix,
                       catalog: Catalog) -> TournamentSummary:
    """Play the configured number of games and aggregate their reports.

    Game ``i`` uses derived seed ``tournament.seed + i``, so the whole run is
    reproducible from the config alone.
    """
    config = GameConfig(catalog)
    records = []
    for index in range(tournament.games):
        game_seed = tournament.seed + index
        attacker = _policy_for_game(tournament.attacker, game_seed)
        defender = _policy_for_game(tournament.defender, game_seed)
        state = play_game(attacker, defender, matrix, config)
        records.append((state, game_report(state, matrix, catalog)))
    return summarize_games(records, tournament)
