"""Event-sourced game sessions.

A session is an append-only list of wire events persisted as one JSON-lines
file; state is never stored, every view is derived by folding the events.
Commands are validated against the rules engine, and a failed command
appends nothing. Per-session locks serialize writers; the judge runs
server-side only, so clients never compute verdicts themselves.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

from .analytics import build_report
from .board import (
    Action,
    GameConfig,
    GameState,
    IllegalMoveError,
    PAIRS_BY_POSITION,
    Region,
    ReplayError,
    apply_action,
    legal_actions,
    new_game,
    resolve_position,
)
from .catalog import Catalog, Role, TokenId, default_catalog, seeded_matchup_matrix
from .judge import (
    FinalResult,
    Outcome,
    VerdictSource,
    evaluate_board,
    evaluate_endpoints,
    final_result,
    judge_iterations,
)
from .strategies import Policy, UnknownPolicyError, choose_action, parse_policy


class SessionError(ValueError):
    pass


class UnknownSessionError(SessionError):
    pass


class EventKind(str, Enum):
    GAME_CREATED = "game_created"
    MOVE_PLACED = "move_placed"
    VERDICT_ISSUED = "verdict_issued"
    GAME_ENDED = "game_ended"


@dataclass(frozen=True, slots=True)
class WireEvent:
    kind: EventKind
    payload: dict
    sequence: int

    def to_dict(self) -> dict:
        return {"sequence": self.sequence, "kind": self.kind.value, "payload": self.payload}

    @classmethod
    def from_dict(cls, data: dict) -> "WireEvent":
        return cls(EventKind(data["kind"]), data["payload"], int(data["sequence"]))


HUMAN_SEAT = "human"


@dataclass(frozen=True, slots=True)
class SessionConfig:
    attacker: str = "greedy"
    defender: str = HUMAN_SEAT
    seed: int = 0
    hints: bool = True

    def __post_init__(self) -> None:
        for seat in (self.attacker, self.defender):
            if seat != HUMAN_SEAT:
                parse_policy(seat)  # raises UnknownPolicyError for bad names

    def seat(self, role: Role) -> str:
        return self.attacker if role is Role.ATTACKER else self.defender

    def policy(self, role: Role) -> Policy | None:
        spec = self.seat(role)
        if spec == HUMAN_SEAT:
            return None
        return parse_policy(spec, seed=self.seed)

    def to_dict(self) -> dict:
        return {"attacker": self.attacker, "defender": self.defender,
                "seed": self.seed, "hints": self.hints}

    @classmethod
    def from_dict(cls, data: dict) -> "SessionConfig":
        known = {k: data[k] for k in ("attacker", "defender", "seed", "hints") if k in data}
        if "seed" in known:
            known["seed"] = int(known["seed"])
        if "hints" in known:
            known["hints"] = bool(known["hints"])
        return cls(**known)


@dataclass
class SessionRecord:
    session_id: str
    created_at: str
    config: SessionConfig
    events: list[WireEvent] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.events and self.events[-1].kind is EventKind.GAME_ENDED:
            return "finished"
        return "open"


def _compact(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _forced_result(state: GameState, matrix, resigned_by: Role) -> FinalResult:
    """Board evaluation with the outcome forced to the non-resigning player."""
    base = evaluate_board(state, matrix)
    outcome = Outcome.DEFENDER_WIN if resigned_by is Role.ATTACKER else Outcome.ATTACKER_WIN
    return FinalResult(base.events, base.attacker_total, base.defender_total, outcome)


def _move_payload(state: GameState) -> dict:
    entry = state.log[-1]
    return {
        "ply": entry.ply,
        "player": entry.player.value,
        "token": str(entry.action.token),
        "region": entry.action.region.value,
        "opening_angle": entry.action.opening_angle,
        "position": entry.position,
    }


def _iteration_events(state: GameState, matrix, totals: tuple[int, int]) -> tuple[list[dict], tuple[int, int]]:
    """Verdict payloads for the just-completed iteration, if it was judged."""
    if state.ply % 2 != 0:
        return [], totals
    attacker_entry, defender_entry = state.log[-2], state.log[-1]
    verdicts = judge_iterations(
        [(attacker_entry.action.token, defender_entry.action.token)], matrix
    )
    verdict = verdicts[0]
    if verdict.verdict.source is not VerdictSource.JUDGED:
        return [], totals
    totals = (totals[0] + verdict.a_points, totals[1] + verdict.d_points)
    payload = verdict.to_dict()
    payload["iteration"] = state.ply // 2
    payload["attacker_running_total"] = totals[0]
    payload["defender_running_total"] = totals[1]
    return [payload], totals


def replay_events(events: list[WireEvent], catalog: Catalog):
    """Fold a wire-event list back into (config, state, report payload).

    Verifies the event invariants (contiguous sequence, one leading
    game_created, at most one trailing game_ended) and recomputes every
    derived payload; any mismatch raises :class:`ReplayError` since it
    signals storage corruption or version skew.
    """
    if not events:
        raise ReplayError("empty event log")
    for position, event in enumerate(events):
        if event.sequence != position:
            raise ReplayError(f"sequence gap at {position}")
    if events[0].kind is not EventKind.GAME_CREATED:
        raise ReplayError("first event must be game_created")
    config = SessionConfig.from_dict(events[0].payload.get("config", {}))
    matrix = seeded_matchup_matrix(catalog)
    state = new_game(GameConfig(catalog))
    totals = (0, 0)
    ended_payload = None
    for event in events[1:]:
        if ended_payload is not None:
            raise ReplayError(f"event after game_ended at {event.sequence}")
        if event.kind is EventKind.GAME_CREATED:
            raise ReplayError(f"duplicate game_created at {event.sequence}")
        if event.kind is EventKind.MOVE_PLACED:
            payload = event.payload
            token = TokenId.parse(payload["token"])
            region = Region(payload["region"])
            opening = payload.get("opening_angle")
            try:
                state = apply_action(state, Action(token, region, opening))
            except IllegalMoveError as exc:
                raise ReplayError(f"replay divergence at {event.sequence}: {exc}") from None
            if _compact(_move_payload(state)) != _compact(payload):
                raise ReplayError(f"replay divergence at {event.sequence}: move payload")
        elif event.kind is EventKind.VERDICT_ISSUED:
            expected, totals = _iteration_events(state, matrix, totals)
            if not expected or _compact(expected[0]) != _compact(event.payload):
                raise ReplayError(f"replay divergence at {event.sequence}: verdict payload")
        elif event.kind is EventKind.GAME_ENDED:
            payload = event.payload
            if payload.get("reason") == "resigned":
                resigned_by = Role(payload["resigned_by"])
                final = _forced_result(state, matrix, resigned_by)
            else:
                if state.terminal_reason is None:
                    raise ReplayError("game_ended on a non-terminal state")
                final = final_result(state, matrix)
            report = build_report(state, matrix, catalog, final)
            recomputed = dict(payload)
            recomputed["final_result"] = final.to_dict()
            recomputed["report"] = report.to_dict()
            if _compact(recomputed) != _compact(payload):
                raise ReplayError("replay divergence: game_ended payload does not "
                                  "match recomputation")
            ended_payload = payload
    if ended_payload is None and state.terminal_reason is not None:
        raise ReplayError("terminal state without game_ended")
    return config, state, ended_payload


class SessionService:
    """Manages concurrent sessions over one data directory.

    Commands to a session are serialized by a per-session lock; the core
    engine is pure, so this is the only module that owns mutable state.
    """

    def __init__(self, data_dir: str | Path, catalog: Catalog | None = None):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.catalog = catalog or default_catalog()
        self.matrix = seeded_matchup_matrix(self.catalog)
        self._sessions: dict[str, _LiveSession] = {}
        self._registry_lock = threading.Lock()

    # -- storage ------------------------------------------------------------

    def _path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.jsonl"

    def _append(self, session: "_LiveSession", events: list[WireEvent]) -> None:
        with self._path(session.record.session_id).open("a") as fh:
            for event in events:
                fh.write(_compact(event.to_dict()) + "\n")
        session.record.events.extend(events)

    def _live(self, session_id: str) -> "_LiveSession":
        with self._registry_lock:
            session = self._sessions.get(session_id)
            if session is not None:
                return session
            path = self._path(session_id)
            if not path.exists():
                raise UnknownSessionError(f"unknown session {session_id!r}")
            events = load_event_log(path)
            config, state, _ = replay_events(events, self.catalog)
            record = SessionRecord(
                session_id=session_id,
                created_at=events[0].payload.get("created_at", ""),
                config=config,
                events=list(events),
            )
            session = _LiveSession(record=record, state=state,
                                   totals=_feed_totals(events))
            self._sessions[session_id] = session
            return session

    # -- operations ----------------------------------------------------------

    def create_session(self, config_data: dict | SessionConfig) -> dict:
        if isinstance(config_data, SessionConfig):
            config = config_data
        else:
            try:
                config = SessionConfig.from_dict(config_data)
            except UnknownPolicyError:
                raise
            except (TypeError, ValueError) as exc:
                raise SessionError(f"malformed session config: {exc}") from None
        session_id = uuid.uuid4().hex[:12]
        created_at = datetime.now(timezone.utc).isoformat()
        record = SessionRecord(session_id, created_at, config)
        session = _LiveSession(record=record, state=new_game(GameConfig(self.catalog)),
                               totals=(0, 0))
        created = WireEvent(
            EventKind.GAME_CREATED,
            {"session_id": session_id, "created_at": created_at,
             "config": config.to_dict()},
            sequence=0,
        )
        with self._registry_lock:
            self._sessions[session_id] = session
        with session.lock:
            self._append(session, [created])
        return self.view(session_id)

    def command(self, session_id: str, command: dict) -> dict:
        session = self._live(session_id)
        with session.lock:
            if session.record.status != "open":
                raise SessionError("session is finished")
            kind = str(command.get("type", "")).strip().lower()
            if kind == "place_token":
                self._handle_place(session, command)
            elif kind == "request_ai_move":
                self._handle_ai_move(session, command)
            elif kind == "resign":
                self._handle_resign(session, command)
            else:
                raise SessionError(f"unknown command type {command.get('type')!r}")
            return self._view_locked(session)

    def _check_seat(self, session: "_LiveSession", command: dict) -> Role:
        to_move = session.state.to_move
        seat = command.get("seat")
        if seat is not None and Role(str(seat)) is not to_move:
            raise SessionError(
                f"out-of-turn command: it is the {to_move.value}'s turn"
            )
        return to_move

    def _handle_place(self, session: "_LiveSession", command: dict) -> None:
        to_move = self._check_seat(session, command)
        if session.record.config.seat(to_move) != HUMAN_SEAT:
            raise SessionError(f"the {to_move.value} seat is not human")
        token = self.catalog.resolve(to_move, str(command.get("token", "")))
        try:
            region = Region(str(command.get("region", "")).lower())
        except ValueError:
            raise SessionError(f"unknown region {command.get('region')!r}") from None
        opening = command.get("opening_angle")
        opening = int(opening) if opening is not None else None
        self._apply_move(session, Action(token, region, opening))

    def _handle_ai_move(self, session: "_LiveSession", command: dict) -> None:
        to_move = self._check_seat(session, command)
        policy = session.record.config.policy(to_move)
        if policy is None:
            raise SessionError(f"the {to_move.value} seat is human")
        action = choose_action(policy, session.state, self.matrix)
        self._apply_move(session, action)

    def _apply_move(self, session: "_LiveSession", action: Action) -> None:
        state = apply_action(session.state, action)  # IllegalMoveError surfaces verbatim
        sequence = len(session.record.events)
        events = [WireEvent(EventKind.MOVE_PLACED, _move_payload(state), sequence)]
        verdicts, totals = _iteration_events(state, self.matrix, session.totals)
        for payload in verdicts:
            sequence += 1
            events.append(WireEvent(EventKind.VERDICT_ISSUED, payload, sequence))
        if state.terminal_reason is not None:
            final = final_result(state, self.matrix)
            report = build_report(state, self.matrix, self.catalog, final)
            sequence += 1
            events.append(WireEvent(
                EventKind.GAME_ENDED,
                {"reason": "completed", "terminal_reason": state.terminal_reason.value,
                 "final_result": final.to_dict(), "report": report.to_dict()},
                sequence,
            ))
        self._append(session, events)
        session.state = state
        session.totals = totals

    def _handle_resign(self, session: "_LiveSession", command: dict) -> None:
        resigned_by = self._check_seat(session, command)
        final = _forced_result(session.state, self.matrix, resigned_by)
        report = build_report(session.state, self.matrix, self.catalog, final)
        event = WireEvent(
            EventKind.GAME_ENDED,
            {"reason": "resigned", "resigned_by": resigned_by.value,
             "final_result": final.to_dict(), "report": report.to_dict()},
            len(session.record.events),
        )
        self._append(session, [event])

    # -- queries --------------------------------------------------------------

    def view(self, session_id: str) -> dict:
        session = self._live(session_id)
        with session.lock:
            return self._view_locked(session)

    def events_since(self, session_id: str, since: int = -1) -> dict:
        session = self._live(session_id)
        with session.lock:
            view = self._view_locked(session)
            view["events"] = [
                e.to_dict() for e in session.record.events if e.sequence > since
            ]
            return view

    def report(self, session_id: str) -> dict:
        session = self._live(session_id)
        with session.lock:
            if session.record.status != "finished":
                raise SessionError("session has no report yet: game still open")
            return session.record.events[-1].payload["report"]

    def hint(self, session_id: str) -> dict:
        """Greedy recommendation for the seat to move; advisory only."""
        session = self._live(session_id)
        with session.lock:
            if not session.record.config.hints:
                raise SessionError("hints are disabled for this session")
            state = session.state
            if state.terminal_reason is not None:
                raise SessionError("game over: nothing to suggest")
            action = choose_action(Policy.greedy(), state, self.matrix)
            position = resolve_position(state, action)
            completes = None
            for pair in PAIRS_BY_POSITION[position]:
                occ_a = action.token if pair.a == position else state.cell(pair.a)
                occ_b = action.token if pair.b == position else state.cell(pair.b)
                if occ_a is None or occ_b is None:
                    continue
                event = evaluate_endpoints(occ_a, occ_b, pair, self.matrix)
                completes = event.to_dict()
                break
            return {
                "token": str(action.token),
                "label": self.catalog.token(action.token).label,
                "region": action.region.value,
                "opening_angle": action.opening_angle,
                "position": position,
                "completes": completes,
            }

    def catalog_payload(self) -> dict:
        from .analytics import factor_taxonomy

        payload = self.catalog.to_dict()
        payload["psych_factors"] = factor_taxonomy()
        return payload

    def _view_locked(self, session: "_LiveSession") -> dict:
        record = session.record
        state = session.state
        last_verdict = None
        result = None
        for event in reversed(record.events):
            if event.kind is EventKind.VERDICT_ISSUED:
                last_verdict = event.payload
                break
        if record.status == "finished":
            result = record.events[-1].payload
        return {
            "session_id": record.session_id,
            "status": record.status,
            "created_at": record.created_at,
            "config": record.config.to_dict(),
            "last_sequence": record.events[-1].sequence if record.events else -1,
            "state": _state_payload(state, self.catalog),
            "totals": {"attacker": session.totals[0], "defender": session.totals[1]},
            "last_verdict": last_verdict,
            "legal": _legal_summary(state, self.catalog),
            "result": result,
        }


def _feed_totals(events: list[WireEvent]) -> tuple[int, int]:
    totals = (0, 0)
    for event in events:
        if event.kind is EventKind.VERDICT_ISSUED:
            totals = (event.payload["attacker_running_total"],
                      event.payload["defender_running_total"])
    return totals


def _state_payload(state: GameState, catalog: Catalog) -> dict:
    cells = []
    for index in range(1, len(state.cells) + 1):
        token = state.cell(index)
        if token is not None:
            cells.append({
                "position": index,
                "player": token.role.value,
                "token": str(token),
                "label": catalog.token(token).label,
            })
    usage = {}
    for role in (Role.ATTACKER, Role.DEFENDER):
        row = {}
        for token_def in catalog.tokens(role):
            count = state.uses(token_def.id)
            if count:
                row[str(token_def.id)] = count
        usage[role.value] = row
    return {
        "ply": state.ply,
        "to_move": state.to_move.value,
        "terminal_reason": state.terminal_reason.value if state.terminal_reason else None,
        "cells": cells,
        "placements": {
            "attacker": state.placements_for(Role.ATTACKER),
            "defender": state.placements_for(Role.DEFENDER),
        },
        "usage": usage,
    }


def _legal_summary(state: GameState, catalog: Catalog) -> dict | None:
    if state.terminal_reason is not None:
        return None
    actions = legal_actions(state)
    regions = []
    opening_angles: dict[str, list[int]] = {}
    seen = set()
    for action in actions:
        name = action.region.value
        if name not in seen:
            seen.add(name)
            regions.append(name)
        if action.opening_angle is not None:
            angles = opening_angles.setdefault(name, [])
            if action.opening_angle not in angles:
                angles.append(action.opening_angle)
    tokens = []
    token_seen = set()
    for action in actions:
        token = action.token
        if token in token_seen:
            continue
        token_seen.add(token)
        tokens.append({
            "id": str(token),
            "label": catalog.token(token).label,
            "remaining": state.max_uses - state.uses(token),
        })
    return {
        "seat": state.to_move.value,
        "regions": regions,
        "opening_angles": opening_angles,
        "tokens": tokens,
    }


def load_event_log(path: str | Path) -> list[WireEvent]:
    """Read one session's JSONL event file."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"file not found: {path}")
    events = []
    for lineno, line in enumerate(path.read_text().splitlines()):
        if not line.strip():
            continue
        try:
            events.append(WireEvent.from_dict(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ReplayError(f"malformed event line {lineno}: {exc}") from None
    return events


@dataclass
class _LiveSession:
    record: SessionRecord
    state: GameState
    totals: tuple[int, int]
    lock: threading.Lock = field(default_factory=threading.Lock)
