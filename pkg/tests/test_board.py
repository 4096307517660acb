"""Topology, placement legality, the clockwise rule, and termination."""

import pytest
from hypothesis import given, settings, strategies as st

from breachboard.board import (
    ANGLES,
    Action,
    BOARD_CELLS,
    CENTER_INDEX,
    EVALUATION_PAIRS,
    GameConfig,
    IllegalMoveError,
    PAIRS_BY_POSITION,
    Region,
    ReplayError,
    RINGS,
    TerminalReason,
    apply_action,
    board_topology,
    format_log,
    is_terminal,
    legal_actions,
    new_game,
    position_at,
    replay_actions,
    replay_log,
)
from breachboard.catalog import Role, TokenId
from breachboard.strategies import Policy, choose_action

from oracles import random_midgame_state, random_playout


class TestTopology:
    def test_position_count(self):
        positions, pairs = board_topology()
        assert len(positions) == 25
        assert len(pairs) == 16

    def test_ring_and_angle_mapping(self):
        for index in range(1, BOARD_CELLS + 1):
            pos = position_at(index)
            if index <= 8:
                assert pos.ring is Region.INNER and pos.angle == index
            elif index <= 16:
                assert pos.ring is Region.MIDDLE and pos.angle == index - 8
            elif index <= 24:
                assert pos.ring is Region.OUTER and pos.angle == index - 16
            else:
                assert pos.ring is Region.CENTER and pos.angle is None

    def test_round_order(self):
        listed = [(p.a, p.b) for p in EVALUATION_PAIRS]
        assert listed == [
            (25, 1), (9, 17), (25, 5), (13, 21),
            (25, 3), (11, 19), (25, 7), (15, 23),
            (25, 2), (10, 18), (25, 6), (14, 22),
            (25, 8), (16, 24), (25, 4), (12, 20),
        ]

    def test_rounds_partition_four_each(self):
        for round_no in (1, 2, 3, 4):
            members = [p for p in EVALUATION_PAIRS if p.round == round_no]
            assert len(members) == 4
            assert [p.order_in_round for p in members] == [1, 2, 3, 4]

    def test_ring_positions_in_exactly_one_pair(self):
        for index in range(1, 25):
            assert len(PAIRS_BY_POSITION[index]) == 1

    def test_center_in_eight_pairs(self):
        assert len(PAIRS_BY_POSITION[25]) == 8

    def test_pair_containing_nine(self):
        (pair,) = PAIRS_BY_POSITION[9]
        assert (pair.a, pair.b) == (9, 17)
        assert pair.round == 1

    def test_middle_pairs_with_outer_plus_eight(self):
        for i in range(9, 17):
            (pair,) = PAIRS_BY_POSITION[i]
            assert {pair.a, pair.b} == {i, i + 8}


class TestNewGame:
    def test_fresh_state(self, game_config):
        state = new_game(game_config)
        assert state.ply == 0
        assert state.to_move is Role.ATTACKER
        assert state.placements == (0, 0)
        assert all(cell is None for cell in state.cells)
        assert is_terminal(state) is None

    def test_deterministic(self, game_config):
        assert new_game(game_config) == new_game(game_config)

    def test_has_legal_actions(self, game_config):
        assert legal_actions(new_game(game_config))

    def test_empty_board_action_count(self, game_config):
        # 13 tokens x (3 rings x 8 opening angles + center)
        assert len(legal_actions(new_game(game_config))) == 325

    def test_requires_catalog(self):
        with pytest.raises(ValueError):
            GameConfig(catalog=None)


def _place(state, token_text, region, angle=None):
    return apply_action(state, Action(TokenId.parse(token_text), region, angle))


class TestClockwiseRule:
    def test_opening_angle_chooses_cell(self, game_config):
        state = _place(new_game(game_config), "A1", Region.INNER, 3)
        assert state.cell(3) == TokenId.parse("A1")

    def test_next_placement_advances_clockwise(self, game_config):
        state = _place(new_game(game_config), "A1", Region.INNER, 3)
        state = _place(state, "D1", Region.INNER)
        assert state.cell(4) == TokenId.parse("D1")

    def test_wraparound(self, game_config):
        state = _place(new_game(game_config), "A1", Region.INNER, 8)
        state = _place(state, "D1", Region.INNER)
        assert state.cell(1) == TokenId.parse("D1")

    def test_skips_occupied_angles(self, game_config):
        state = _place(new_game(game_config), "A1", Region.INNER, 8)
        state = _place(state, "D1", Region.INNER)   # lands on 1
        state = _place(state, "A2", Region.INNER)   # lands on 2
        state = _place(state, "D2", Region.MIDDLE, 8)
        state = _place(state, "A3", Region.INNER)   # lands on 3
        assert state.cell(2) == TokenId.parse("A2")
        assert state.cell(3) == TokenId.parse("A3")

    def test_cursor_follows_either_player(self, game_config):
        # both players share one cursor per ring
        state = _place(new_game(game_config), "A1", Region.MIDDLE, 2)
        state = _place(state, "D5", Region.MIDDLE)
        state = _place(state, "A2", Region.MIDDLE)
        assert state.cell(10) == TokenId.parse("A1")  # middle angle 2
        assert state.cell(11) == TokenId.parse("D5")  # middle angle 3
        assert state.cell(12) == TokenId.parse("A2")  # middle angle 4


class TestApplyActionErrors:
    def test_center_occupied(self, game_config):
        state = _place(new_game(game_config), "A1", Region.CENTER)
        with pytest.raises(IllegalMoveError, match="center occupied"):
            _place(state, "D1", Region.CENTER)

    def test_wrong_role_token(self, game_config):
        with pytest.raises(IllegalMoveError, match="does not belong"):
            _place(new_game(game_config), "D1", Region.CENTER)

    def test_opening_angle_for_opened_ring(self, game_config):
        state = _place(new_game(game_config), "A1", Region.INNER, 1)
        with pytest.raises(IllegalMoveError, match="already opened"):
            _place(state, "D1", Region.INNER, 5)

    def test_opening_angle_missing(self, game_config):
        with pytest.raises(IllegalMoveError, match="opening angle required"):
            _place(new_game(game_config), "A1", Region.INNER)

    def test_opening_angle_out_of_range(self, game_config):
        with pytest.raises(IllegalMoveError, match="outside"):
            _place(new_game(game_config), "A1", Region.INNER, 9)

    def test_usage_limit(self, game_config):
        state = new_game(game_config)
        state = _place(state, "A1", Region.INNER, 1)
        state = _place(state, "D1", Region.OUTER, 1)
        state = _place(state, "A1", Region.INNER)
        state = _place(state, "D1", Region.OUTER)
        with pytest.raises(IllegalMoveError, match="already used 2 times"):
            _place(state, "A1", Region.INNER)

    def test_terminal_state_rejects_moves(self, catalog, matrix):
        config = GameConfig(catalog, tokens_per_player=0)
        state = new_game(config)
        assert state.terminal_reason is TerminalReason.BUDGETS_EXHAUSTED
        with pytest.raises(IllegalMoveError, match="game over"):
            _place(state, "A1", Region.CENTER)


class TestLegalActions:
    def test_used_twice_token_absent(self, game_config):
        state = new_game(game_config)
        state = _place(state, "A1", Region.INNER, 1)
        state = _place(state, "D1", Region.OUTER, 1)
        state = _place(state, "A1", Region.INNER)
        state = _place(state, "D1", Region.OUTER)
        tokens = {action.token for action in legal_actions(state)}
        assert TokenId.parse("A1") not in tokens
        assert TokenId.parse("A2") in tokens

    def test_full_ring_absent(self, game_config):
        state = _place(new_game(game_config), "A1", Region.INNER, 1)
        for token in ("D1", "A2", "D1", "A2", "D2", "A3", "D2"):
            state = _place(state, token, Region.INNER)
        # inner now holds 8 tokens
        assert all(state.cell(i) is not None for i in range(1, 9))
        regions = {action.region for action in legal_actions(state)}
        assert Region.INNER not in regions

    def test_opened_ring_has_single_variant(self, game_config):
        state = _place(new_game(game_config), "A1", Region.MIDDLE, 4)
        middle = [a for a in legal_actions(state) if a.region is Region.MIDDLE]
        assert all(a.opening_angle is None for a in middle)
        assert len(middle) == 13

    def test_terminal_state_empty(self, catalog):
        state = new_game(GameConfig(catalog, tokens_per_player=0))
        assert legal_actions(state) == []

    @pytest.mark.parametrize("seed", range(40))
    def test_soundness_and_completeness(self, game_config, matrix, seed):
        """An action applies successfully iff legal_actions lists it."""
        state = random_midgame_state(game_config, matrix, seed)
        if state.terminal_reason is not None:
            return
        listed = set(legal_actions(state))
        mover = state.to_move
        for index in range(1, 14):
            for region in Region:
                for angle in (None, *range(1, ANGLES + 1)):
                    action = Action(TokenId(mover, index), region, angle)
                    try:
                        apply_action(state, action)
                    except IllegalMoveError:
                        assert action not in listed
                    else:
                        assert action in listed


class TestTermination:
    def test_default_game_fills_board(self, game_config, matrix):
        state = random_playout(game_config, matrix, seed=123)
        assert state.ply == 25
        assert state.terminal_reason is TerminalReason.BOARD_FULL
        assert state.placements == (13, 12)

    def test_reduced_budget_exhausts(self, catalog, matrix):
        config = GameConfig(catalog, tokens_per_player=5)
        state = random_playout(config, matrix, seed=7)
        assert state.terminal_reason is TerminalReason.BUDGETS_EXHAUSTED
        assert state.placements_for(Role.ATTACKER) == 5

    def test_zero_budget_immediately_terminal(self, catalog):
        state = new_game(GameConfig(catalog, tokens_per_player=0))
        assert is_terminal(state) is TerminalReason.BUDGETS_EXHAUSTED

    def test_non_terminal_has_actions(self, game_config, matrix):
        for seed in range(10):
            state = random_midgame_state(game_config, matrix, seed)
            if state.terminal_reason is None:
                assert legal_actions(state)


def _check_clockwise_invariant(state):
    """Re-derive each ring's placements independently from the log."""
    occupied = {region: set() for region in RINGS}
    cursor = {region: None for region in RINGS}
    for entry in state.log:
        index = entry.position
        if index == CENTER_INDEX:
            continue
        region = position_at(index).ring
        angle = position_at(index).angle
        if cursor[region] is None:
            assert not occupied[region]
        else:
            expected = None
            for step in range(1, ANGLES + 1):
                candidate = (cursor[region] - 1 + step) % ANGLES + 1
                if candidate not in occupied[region]:
                    expected = candidate
                    break
            assert angle == expected, f"ring {region} broke the clockwise rule"
        occupied[region].add(angle)
        cursor[region] = angle


class TestInvariants:
    @pytest.mark.parametrize("seed", range(25))
    def test_playout_invariants(self, game_config, matrix, seed):
        policy = Policy.random(seed)
        state = new_game(game_config)
        while state.terminal_reason is None:
            state = apply_action(state, choose_action(policy, state, matrix))
            occupied = sum(1 for c in state.cells if c is not None)
            assert occupied == sum(state.placements)
            assert abs(state.placements[0] - state.placements[1]) <= 1
            assert all(u <= 2 for row in state.usage for u in row)
            assert max(state.placements) <= 13
        assert state.ply <= 25
        _check_clockwise_invariant(state)

    @given(seed=st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_replay_reproduces_final_state(self, game_config, matrix, seed):
        final = random_playout(game_config, matrix, seed)
        replayed = replay_actions(game_config, [e.action for e in final.log])
        assert replayed == final

    def test_attacker_moves_on_even_plies(self, game_config, matrix):
        state = random_playout(game_config, matrix, seed=99)
        for entry in state.log:
            expected = Role.ATTACKER if entry.ply % 2 == 0 else Role.DEFENDER
            assert entry.player is expected


class TestTextLog:
    def test_line_format(self, game_config):
        state = _place(new_game(game_config), "A1", Region.INNER, 3)
        assert format_log(state) == ["0,attacker,A1,inner,3"]

    def test_roundtrip(self, game_config, matrix):
        final = random_playout(game_config, matrix, seed=5)
        replayed = replay_log(game_config, format_log(final))
        assert replayed == final

    def test_tampered_position_rejected(self, game_config, matrix):
        final = random_playout(game_config, matrix, seed=5)
        lines = format_log(final)
        ply, player, token, region, pos = lines[3].split(",")
        lines[3] = ",".join([ply, player, token, region, str(26 - int(pos))])
        with pytest.raises(ReplayError):
            replay_log(game_config, lines)

    def test_out_of_turn_rejected(self, game_config, matrix):
        final = random_playout(game_config, matrix, seed=5)
        lines = format_log(final)
        del lines[1]
        with pytest.raises(ReplayError):
            replay_log(game_config, lines)
