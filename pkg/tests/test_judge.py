"""Matchup verdicts, pair scoring, final results, and the iteration log."""

import pytest

from breachboard.board import (
    Action,
    EVALUATION_PAIRS,
    GameConfig,
    PAIRS_BY_POSITION,
    Region,
    apply_action,
    legal_actions,
    new_game,
)
from breachboard.catalog import Role, TokenId
from breachboard.judge import (
    Outcome,
    ScoreEventKind,
    VerdictSource,
    evaluate_board,
    evaluate_pair,
    final_result,
    iteration_log,
    judge_iterations,
    judge_matchup,
    render_scoring_table,
)

from oracles import SCORING_TABLE_ROWS, random_midgame_state, random_playout


class TestJudgeMatchup:
    def test_click_vs_denying(self, matrix):
        verdict = judge_matchup(matrix, TokenId.parse("A11"), TokenId.parse("D1"))
        assert verdict.winner is Role.DEFENDER
        assert verdict.source is VerdictSource.JUDGED
        assert verdict.comment == "Denied malicious link"

    def test_data_loss_vs_provide(self, matrix):
        verdict = judge_matchup(matrix, TokenId.parse("A10"), TokenId.parse("D8"))
        assert verdict.winner is Role.ATTACKER
        assert verdict.comment == "The defender lost information"

    def test_unjudged_pair(self, matrix):
        verdict = judge_matchup(matrix, TokenId.parse("A1"), TokenId.parse("D13"))
        assert verdict.winner is None
        assert verdict.source is VerdictSource.UNJUDGED
        assert verdict.comment == ""

    def test_role_mismatch(self, matrix):
        with pytest.raises(ValueError):
            judge_matchup(matrix, TokenId.parse("D1"), TokenId.parse("D2"))
        with pytest.raises(ValueError):
            judge_matchup(matrix, TokenId.parse("A1"), TokenId.parse("A2"))

    def test_deterministic(self, matrix):
        a, d = TokenId.parse("A5"), TokenId.parse("D11")
        assert judge_matchup(matrix, a, d) == judge_matchup(matrix, a, d)


def _play(state, token, region, angle=None):
    return apply_action(state, Action(TokenId.parse(token), region, angle))


@pytest.fixture()
def sequential_bonus_state(game_config):
    """Defender holds both cells of pair (9, 17) with Report and Trust."""
    state = new_game(game_config)
    state = _play(state, "A1", Region.INNER, 1)
    state = _play(state, "D10", Region.MIDDLE, 1)   # position 9
    state = _play(state, "A2", Region.INNER)
    state = _play(state, "D7", Region.OUTER, 1)     # position 17
    return state


class TestEvaluatePair:
    def test_sequential_bonus_d10_d7(self, sequential_bonus_state, matrix):
        (pair,) = PAIRS_BY_POSITION[9]
        event = evaluate_pair(sequential_bonus_state, pair, matrix)
        assert event.kind is ScoreEventKind.SEQUENTIAL_BONUS
        assert (event.attacker_points, event.defender_points) == (0, 2)

    def test_attacker_sequential_bonus(self, game_config, matrix):
        state = new_game(game_config)
        state = _play(state, "A3", Region.MIDDLE, 3)  # position 11
        state = _play(state, "D1", Region.INNER, 1)
        state = _play(state, "A4", Region.OUTER, 3)   # position 19
        (pair,) = PAIRS_BY_POSITION[11]
        event = evaluate_pair(state, pair, matrix)
        assert event.kind is ScoreEventKind.SEQUENTIAL_BONUS
        assert (event.attacker_points, event.defender_points) == (2, 0)

    def test_mixed_matchup(self, game_config, matrix):
        state = new_game(game_config)
        state = _play(state, "A1", Region.MIDDLE, 1)  # position 9
        state = _play(state, "D5", Region.OUTER, 1)   # position 17
        (pair,) = PAIRS_BY_POSITION[9]
        event = evaluate_pair(state, pair, matrix)
        assert event.kind is ScoreEventKind.MIXED_MATCHUP
        assert (event.attacker_points, event.defender_points) == (0, 1)
        assert event.comment == "Never trust malicious emails"

    def test_incomplete(self, game_config, matrix):
        state = _play(new_game(game_config), "A1", Region.MIDDLE, 2)  # position 10
        (pair,) = PAIRS_BY_POSITION[10]
        event = evaluate_pair(state, pair, matrix)
        assert event.kind is ScoreEventKind.INCOMPLETE
        assert (event.attacker_points, event.defender_points) == (0, 0)

    def test_unjudged_matchup(self, game_config, matrix):
        state = new_game(game_config)
        state = _play(state, "A1", Region.MIDDLE, 1)   # position 9
        state = _play(state, "D13", Region.OUTER, 1)   # position 17: A1/D13 unjudged
        (pair,) = PAIRS_BY_POSITION[9]
        event = evaluate_pair(state, pair, matrix)
        assert event.kind is ScoreEventKind.UNJUDGED_MATCHUP
        assert (event.attacker_points, event.defender_points) == (0, 0)

    @pytest.mark.parametrize("seed", range(15))
    def test_points_in_allowed_set(self, game_config, matrix, seed):
        state = random_playout(game_config, matrix, seed)
        for pair in EVALUATION_PAIRS:
            event = evaluate_pair(state, pair, matrix)
            assert (event.attacker_points, event.defender_points) in {
                (0, 0), (1, 0), (0, 1), (2, 0), (0, 2),
            }


# A legal 25-ply script whose final evaluation is DefenderWin 9-7:
# D4 in the center beats Chat/Message/Access on the inner ring and pairs
# with two inner defender tokens for bonuses; seven attacker-won matchups
# line the middle/outer pairs against one defender-defender pair.
SCRIPTED_DEFENDER_WIN = (
    ("A3", Region.INNER, 1), ("D1", Region.MIDDLE, 8),
    ("A2", Region.MIDDLE, None), ("D7", Region.OUTER, 1),
    ("A8", Region.INNER, None), ("D7", Region.OUTER, None),
    ("A3", Region.MIDDLE, None), ("D6", Region.OUTER, None),
    ("A13", Region.INNER, None), ("D6", Region.OUTER, None),
    ("A11", Region.MIDDLE, None), ("D8", Region.OUTER, None),
    ("A1", Region.INNER, None), ("D8", Region.OUTER, None),
    ("A10", Region.MIDDLE, None), ("D13", Region.OUTER, None),
    ("A4", Region.INNER, None), ("D2", Region.OUTER, None),
    ("A6", Region.MIDDLE, None), ("D4", Region.CENTER, None),
    ("A9", Region.INNER, None), ("D9", Region.INNER, None),
    ("A5", Region.MIDDLE, None), ("D5", Region.INNER, None),
    ("A13", Region.MIDDLE, None),
)


@pytest.fixture(scope="module")
def scripted_state(catalog):
    state = new_game(GameConfig(catalog))
    for token, region, angle in SCRIPTED_DEFENDER_WIN:
        state = _play(state, token, region, angle)
    return state


class TestFinalResult:
    def test_requires_terminal(self, game_config, matrix):
        state = _play(new_game(game_config), "A1", Region.CENTER)
        with pytest.raises(ValueError, match="terminal"):
            final_result(state, matrix)

    def test_degenerate_empty_board_draw(self, catalog, matrix):
        state = new_game(GameConfig(catalog, tokens_per_player=0))
        result = final_result(state, matrix)
        assert all(e.kind is ScoreEventKind.INCOMPLETE for e in result.events)
        assert (result.attacker_total, result.defender_total) == (0, 0)
        assert result.outcome is Outcome.DRAW

    def test_events_in_round_order(self, scripted_state, matrix):
        result = final_result(scripted_state, matrix)
        assert [(e.pair.a, e.pair.b) for e in result.events] == \
            [(p.a, p.b) for p in EVALUATION_PAIRS]

    def test_scripted_defender_win(self, scripted_state, matrix):
        assert scripted_state.terminal_reason is not None
        result = final_result(scripted_state, matrix)
        assert (result.attacker_total, result.defender_total) == (7, 9)
        assert result.outcome is Outcome.DEFENDER_WIN
        kinds = [e.kind for e in result.events]
        assert kinds.count(ScoreEventKind.SEQUENTIAL_BONUS) == 3
        assert kinds.count(ScoreEventKind.MIXED_MATCHUP) == 10
        assert kinds.count(ScoreEventKind.UNJUDGED_MATCHUP) == 3

    def test_totals_match_independent_pair_sums(self, scripted_state, matrix):
        result = final_result(scripted_state, matrix)
        attacker = sum(evaluate_pair(scripted_state, p, matrix).attacker_points
                       for p in EVALUATION_PAIRS)
        defender = sum(evaluate_pair(scripted_state, p, matrix).defender_points
                       for p in EVALUATION_PAIRS)
        assert (result.attacker_total, result.defender_total) == (attacker, defender)

    @pytest.mark.parametrize("seed", range(15))
    def test_bounds_and_draw_rule(self, game_config, matrix, seed):
        result = final_result(random_playout(game_config, matrix, seed), matrix)
        assert result.attacker_total + result.defender_total <= 32
        if result.outcome is Outcome.DRAW:
            assert result.attacker_total == result.defender_total
        else:
            assert result.attacker_total != result.defender_total

    def test_zero_sum_per_judged_event(self, scripted_state, matrix):
        for event in final_result(scripted_state, matrix).events:
            if event.kind in (ScoreEventKind.MIXED_MATCHUP,
                              ScoreEventKind.SEQUENTIAL_BONUS):
                assert (event.attacker_points > 0) != (event.defender_points > 0)
            else:
                assert event.attacker_points == event.defender_points == 0


class TestMonotonicity:
    @pytest.mark.parametrize("seed", range(20))
    def test_placements_never_reduce_completed_pairs(self, game_config, matrix, seed):
        state = random_midgame_state(game_config, matrix, seed)
        if state.terminal_reason is not None:
            return
        def completed(s):
            return sum(
                1 for p in EVALUATION_PAIRS
                if evaluate_pair(s, p, matrix).kind is not ScoreEventKind.INCOMPLETE
            )
        before = completed(state)
        for action in legal_actions(state)[:20]:
            assert completed(apply_action(state, action)) >= before


class TestIterationLog:
    def test_empty_log(self, game_config, matrix):
        assert iteration_log(new_game(game_config), matrix) == []

    def test_trailing_attacker_ply_dropped(self, game_config, matrix):
        state = _play(new_game(game_config), "A1", Region.CENTER)
        assert iteration_log(state, matrix) == []
        state = _play(state, "D5", Region.INNER, 1)
        state = _play(state, "A2", Region.INNER)
        verdicts = iteration_log(state, matrix)
        assert len(verdicts) == 1

    def test_first_iteration_verdict(self, game_config, matrix):
        state = _play(new_game(game_config), "A1", Region.INNER, 1)
        state = _play(state, "D5", Region.CENTER)
        (verdict,) = iteration_log(state, matrix)
        assert verdict.iteration == 1
        assert verdict.verdict.winner is Role.DEFENDER
        assert (verdict.a_points, verdict.d_points) == (0, 1)
        assert verdict.verdict.comment == "Never trust malicious emails"

    def test_advisory_log_does_not_change_final(self, scripted_state, matrix):
        result_before = final_result(scripted_state, matrix)
        iteration_log(scripted_state, matrix)
        assert final_result(scripted_state, matrix) == result_before


class TestScoringTableReplay:
    """The published 26-row table, replayed through the judge."""

    def _verdicts(self, catalog, matrix):
        pairs = [
            (catalog.resolve(Role.ATTACKER, a), catalog.resolve(Role.DEFENDER, d))
            for a, d, _, _, _ in SCORING_TABLE_ROWS
        ]
        return judge_iterations(pairs, matrix)

    def test_all_rows_match(self, catalog, matrix):
        verdicts = self._verdicts(catalog, matrix)
        assert len(verdicts) == 26
        for verdict, (a, d, a_pts, d_pts, comment) in zip(verdicts, SCORING_TABLE_ROWS):
            assert verdict.verdict.source is VerdictSource.JUDGED
            assert (verdict.a_points, verdict.d_points) == (a_pts, d_pts)
            assert verdict.verdict.comment == comment

    def test_column_sums(self, catalog, matrix):
        verdicts = self._verdicts(catalog, matrix)
        assert sum(v.a_points for v in verdicts) == 9
        assert sum(v.d_points for v in verdicts) == 17

    def test_rendered_table_layout(self, catalog, matrix):
        text = render_scoring_table(self._verdicts(catalog, matrix), catalog)
        lines = text.splitlines()
        assert lines[0].split() == ["Iteration", "A", "D", "A%", "D%", "Judge", "Comments"]
        assert len(lines) == 28  # header + rule + 26 rows
        assert "Never trust malicious emails" in lines[2]
