"""breachboard: the data-protection awareness board game.

An attacker and a defender alternate placing strategy tokens on a
25-intersection board; a judging entity scores token matchups from a seeded
verdict table. The package provides the rules engine, the judge, AI
opponents, matrix-game solvers over the verdict table, analytics, and an
event-sourced session service with an HTTP wire protocol.
"""

from .catalog import (
    Catalog,
    CatalogError,
    MatchupEntry,
    MatchupMatrix,
    PsychFactor,
    Role,
    TokenDef,
    TokenId,
    TrickTag,
    default_catalog,
    load_catalog,
    resolve_token_name,
    seeded_matchup_matrix,
)
from .board import (
    Action,
    EvaluationPair,
    GameConfig,
    GameState,
    IllegalMoveError,
    Position,
    Region,
    ReplayError,
    TerminalReason,
    apply_action,
    board_topology,
    is_terminal,
    legal_actions,
    new_game,
)
from .judge import (
    FinalResult,
    IterationVerdict,
    Outcome,
    ScoreEvent,
    ScoreEventKind,
    Verdict,
    VerdictSource,
    evaluate_pair,
    final_result,
    iteration_log,
    judge_iterations,
    judge_matchup,
    render_scoring_table,
)
from .strategies import (
    EquilibriumReport,
    MisperceptionReport,
    MixedStrategy,
    PayoffMatrix,
    Policy,
    PolicyKind,
    UnknownPolicyError,
    choose_action,
    exploitability,
    hypergame_eval,
    parse_policy,
    payoff_matrix,
    solve_matrix_game,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
