"""Board topology and the placement state machine.

The board has 25 intersections: three rings of eight angles plus a center.
Scoring compares occupants of 16 fixed evaluation pairs, grouped into four
rounds. Placement follows the clockwise rule: the first token placed in a
ring picks its angle, every later token in that ring lands on the first
empty angle clockwise of the ring's most recent placement (by either
player). All operations are pure: they take a state and return a new one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .catalog import Catalog, Role, TokenId, TOKENS_PER_ROLE

ANGLES = 8
BOARD_CELLS = 25
CENTER_INDEX = 25


class IllegalMoveError(ValueError):
    """Raised when an action cannot be applied to the current state."""


class ReplayError(ValueError):
    """Raised when a recorded game does not replay to a consistent state."""


class Region(str, Enum):
    CENTER = "center"
    INNER = "inner"
    MIDDLE = "middle"
    OUTER = "outer"

    @property
    def is_ring(self) -> bool:
        return self is not Region.CENTER

    @property
    def ring_slot(self) -> int:
        """Cursor-array slot for a ring region."""
        return {"inner": 0, "middle": 1, "outer": 2}[self.value]

    @property
    def base_index(self) -> int:
        """Position index of this ring's angle 1, minus one."""
        return {"inner": 0, "middle": 8, "outer": 16}[self.value]


RINGS = (Region.INNER, Region.MIDDLE, Region.OUTER)
# Tie-break order used by deterministic policies: center first, then rings
# inside out.
REGION_ORDER = (Region.CENTER, Region.INNER, Region.MIDDLE, Region.OUTER)


class TerminalReason(str, Enum):
    BUDGETS_EXHAUSTED = "budgets_exhausted"
    BOARD_FULL = "board_full"
    NO_LEGAL_MOVE = "no_legal_move"


@dataclass(frozen=True, slots=True)
class Position:
    index: int
    ring: Region
    angle: int | None

    def __str__(self) -> str:
        return str(self.index)


def position_at(index: int) -> Position:
    if not 1 <= index <= BOARD_CELLS:
        raise ValueError(f"position index {index} outside 1..{BOARD_CELLS}")
    if index == CENTER_INDEX:
        return Position(index, Region.CENTER, None)
    ring = RINGS[(index - 1) // ANGLES]
    return Position(index, ring, (index - 1) % ANGLES + 1)


POSITIONS: tuple[Position, ...] = tuple(position_at(i) for i in range(1, BOARD_CELLS + 1))


@dataclass(frozen=True, slots=True)
class EvaluationPair:
    a: int
    b: int
    round: int
    order_in_round: int


_ROUND_LAYOUT = (
    ((25, 1), (9, 17), (25, 5), (13, 21)),
    ((25, 3), (11, 19), (25, 7), (15, 23)),
    ((25, 2), (10, 18), (25, 6), (14, 22)),
    ((25, 8), (16, 24), (25, 4), (12, 20)),
)

EVALUATION_PAIRS: tuple[EvaluationPair, ...] = tuple(
    EvaluationPair(a, b, round_no, order_no)
    for round_no, row in enumerate(_ROUND_LAYOUT, start=1)
    for order_no, (a, b) in enumerate(row, start=1)
)

# Every ring position sits in exactly one pair; the center sits in eight.
PAIRS_BY_POSITION: dict[int, tuple[EvaluationPair, ...]] = {
    i: tuple(p for p in EVALUATION_PAIRS if i in (p.a, p.b))
    for i in range(1, BOARD_CELLS + 1)
}


def board_topology() -> tuple[tuple[Position, ...], tuple[EvaluationPair, ...]]:
    return POSITIONS, EVALUATION_PAIRS


class Action(NamedTuple):
    """One placement: a token into a region, with the opening angle given
    only when the target ring has no tokens yet."""

    token: TokenId
    region: Region
    opening_angle: int | None = None

    def __str__(self) -> str:
        suffix = f"@{self.opening_angle}" if self.opening_angle is not None else ""
        return f"{self.token}->{self.region.value}{suffix}"


class LogEntry(NamedTuple):
    ply: int
    player: Role
    action: Action
    position: int


@dataclass(frozen=True, slots=True)
class GameConfig:
    """Game parameters. The defaults are the published rules."""

    catalog: Catalog
    tokens_per_player: int = 13
    max_uses_per_token: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.catalog, Catalog):
            raise ValueError("config requires a validated catalog")
        if not 0 <= self.tokens_per_player <= TOKENS_PER_ROLE:
            raise ValueError("tokens_per_player outside 0..13")
        if self.max_uses_per_token < 0:
            raise ValueError("max_uses_per_token must be non-negative")


def _role_slot(role: Role) -> int:
    return 0 if role is Role.ATTACKER else 1


@dataclass(frozen=True, slots=True)
class GameState:
    """Immutable snapshot of one game. Index i of ``cells`` is position i+1."""

    cells: tuple
    ring_cursor: tuple
    placements: tuple
    usage: tuple
    to_move: Role
    log: tuple
    terminal_reason: TerminalReason | None
    budget: int
    max_uses: int

    @property
    def ply(self) -> int:
        return len(self.log)

    def cell(self, index: int) -> TokenId | None:
        return self.cells[index - 1]

    def uses(self, token: TokenId) -> int:
        return self.usage[_role_slot(token.role)][token.index - 1]

    def placements_for(self, role: Role) -> int:
        return self.placements[_role_slot(role)]


def _compute_terminal(cells, placements, usage, to_move, budget, max_uses):
    if all(c is not None for c in cells):
        return TerminalReason.BOARD_FULL
    if placements[0] >= budget or placements[1] >= budget:
        return TerminalReason.BUDGETS_EXHAUSTED
    if not any(u < max_uses for u in usage[_role_slot(to_move)]):
        return TerminalReason.NO_LEGAL_MOVE
    return None


def new_game(config: GameConfig) -> GameState:
    cells = (None,) * BOARD_CELLS
    placements = (0, 0)
    usage = ((0,) * TOKENS_PER_ROLE, (0,) * TOKENS_PER_ROLE)
    return GameState(
        cells=cells,
        ring_cursor=(None, None, None),
        placements=placements,
        usage=usage,
        to_move=Role.ATTACKER,
        log=(),
        terminal_reason=_compute_terminal(
            cells, placements, usage, Role.ATTACKER,
            config.tokens_per_player, config.max_uses_per_token,
        ),
        budget=config.tokens_per_player,
        max_uses=config.max_uses_per_token,
    )


def is_terminal(state: GameState) -> TerminalReason | None:
    return state.terminal_reason


def _ring_cells(state: GameState, region: Region) -> tuple:
    base = region.base_index
    return state.cells[base:base + ANGLES]


def resolve_position(state: GameState, action: Action) -> int:
    """Target position index for an action, or IllegalMoveError.

    Center resolves to 25; an unopened ring to the requested opening angle;
    an opened ring to the first empty angle clockwise of the ring's cursor.
    """
    region = action.region
    if region is Region.CENTER:
        if action.opening_angle is not None:
            raise IllegalMoveError("opening angle not allowed for the center")
        if state.cells[CENTER_INDEX - 1] is not None:
            raise IllegalMoveError("center occupied")
        return CENTER_INDEX
    cursor = state.ring_cursor[region.ring_slot]
    if cursor is None:
        if action.opening_angle is None:
            raise IllegalMoveError(
                f"opening angle required: {region.value} ring has no tokens yet"
            )
        if not 1 <= action.opening_angle <= ANGLES:
            raise IllegalMoveError(f"opening angle {action.opening_angle} outside 1..{ANGLES}")
        return region.base_index + action.opening_angle
    if action.opening_angle is not None:
        raise IllegalMoveError(
            f"opening angle not allowed: {region.value} ring is already opened"
        )
    ring = _ring_cells(state, region)
    for step in range(1, ANGLES + 1):
        angle = (cursor - 1 + step) % ANGLES + 1
        if ring[angle - 1] is None:
            return region.base_index + angle
    raise IllegalMoveError(f"{region.value} ring full")


def apply_action(state: GameState, action: Action) -> GameState:
    if state.terminal_reason is not None:
        raise IllegalMoveError("game over")
    token = action.token
    mover = state.to_move
    if token.role is not mover:
        raise IllegalMoveError(f"token {token} does not belong to the {mover.value}")
    slot = _role_slot(mover)
    if state.placements[slot] >= state.budget:
        raise IllegalMoveError(f"{mover.value} budget exhausted")
    if state.usage[slot][token.index - 1] >= state.max_uses:
        raise IllegalMoveError(f"token {token} already used {state.max_uses} times")

    index = resolve_position(state, action)

    cells = state.cells[:index - 1] + (token,) + state.cells[index:]
    if action.region.is_ring:
        angle = (index - 1) % ANGLES + 1
        cursor = list(state.ring_cursor)
        cursor[action.region.ring_slot] = angle
        ring_cursor = tuple(cursor)
    else:
        ring_cursor = state.ring_cursor
    placements = list(state.placements)
    placements[slot] += 1
    placements = tuple(placements)
    row = list(state.usage[slot])
    row[token.index - 1] += 1
    usage = (tuple(row), state.usage[1]) if slot == 0 else (state.usage[0], tuple(row))
    log = state.log + (LogEntry(state.ply, mover, action, index),)
    to_move = mover.opponent
    return GameState(
        cells=cells,
        ring_cursor=ring_cursor,
        placements=placements,
        usage=usage,
        to_move=to_move,
        log=log,
        terminal_reason=_compute_terminal(
            cells, placements, usage, to_move, state.budget, state.max_uses
        ),
        budget=state.budget,
        max_uses=state.max_uses,
    )


def legal_actions(state: GameState) -> list[Action]:
    """All placements applicable to the state, in deterministic order:
    ascending token index, then center < inner < middle < outer, then
    ascending opening angle. Empty for terminal states."""
    if state.terminal_reason is not None:
        return []
    mover = state.to_move
    slot = _role_slot(mover)
    usage = state.usage[slot]
    tokens = [
        TokenId(mover, i)
        for i in range(1, TOKENS_PER_ROLE + 1)
        if usage[i - 1] < state.max_uses
    ]
    targets: list[tuple[Region, int | None]] = []
    if state.cells[CENTER_INDEX - 1] is None:
        targets.append((Region.CENTER, None))
    for region in RINGS:
        if state.ring_cursor[region.ring_slot] is None:
            targets.extend((region, angle) for angle in range(1, ANGLES + 1))
        elif any(c is None for c in _ring_cells(state, region)):
            targets.append((region, None))
    return [
        Action(token, region, angle)
        for token in tokens
        for region, angle in targets
    ]


# --- replay ---------------------------------------------------------------

def format_log_line(entry: LogEntry) -> str:
    return (
        f"{entry.ply},{entry.player.value},{entry.action.token},"
        f"{entry.action.region.value},{entry.position}"
    )


def format_log(state: GameState) -> list[str]:
    return [format_log_line(e) for e in state.log]


def replay_actions(config: GameConfig, actions: list[Action]) -> GameState:
    state = new_game(config)
    for action in actions:
        state = apply_action(state, action)
    return state


def replay_log(config: GameConfig, lines: list[str]) -> GameState:
    """Rebuild a game from move-log lines, verifying each resolved position."""
    state = new_game(config)
    for lineno, line in enumerate(lines):
        parts = line.strip().split(",")
        if len(parts) != 5:
            raise ReplayError(f"malformed log line {lineno}: {line!r}")
        ply_text, player_text, token_text, region_text, pos_text = parts
        try:
            ply, position = int(ply_text), int(pos_text)
            player = Role(player_text)
            token = TokenId.parse(token_text)
            region = Region(region_text)
        except ValueError as exc:
            raise ReplayError(f"malformed log line {lineno}: {exc}") from None
        if ply != state.ply:
            raise ReplayError(f"log line {lineno} has ply {ply}, expected {state.ply}")
        if player is not state.to_move:
            raise ReplayError(f"log line {lineno}: {player.value} moved out of turn")
        opening = None
        if region.is_ring and state.ring_cursor[region.ring_slot] is None:
            opening = (position - 1) % ANGLES + 1
        try:
            state = apply_action(state, Action(token, region, opening))
        except IllegalMoveError as exc:
            raise ReplayError(f"log line {lineno} is illegal: {exc}") from None
        if state.log[-1].position != position:
            raise ReplayError(
                f"log line {lineno} resolves to {state.log[-1].position}, "
                f"recorded {position}"
            )
    return state
