"""Command-line surface: interactive play, tournaments, solving, replay
rendering, and the HTTP service.

The data directory for ``serve`` can be overridden with the
``BREACHBOARD_DATA`` environment variable.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .analytics import (
    TournamentConfig,
    build_report,
    factor_taxonomy,
    game_report,
    tournament_summary,
    trick_breakdown,
)
from .board import (
    ANGLES,
    GameConfig,
    GameState,
    IllegalMoveError,
    Action,
    Region,
    RINGS,
    apply_action,
    legal_actions,
    new_game,
)
from .catalog import Catalog, CatalogError, Role, default_catalog, load_catalog, seeded_matchup_matrix
from .judge import final_result, iteration_log, judge_iterations, render_scoring_table
from .service import SessionService, load_event_log, replay_events
from .strategies import (
    Policy,
    UnknownPolicyError,
    choose_action,
    parse_policy,
    payoff_matrix,
    solve_matrix_game,
)

DATA_DIR_ENV = "BREACHBOARD_DATA"


def _load_catalog_arg(path: str | None) -> Catalog:
    if path is None:
        return default_catalog()
    return load_catalog(path)


def render_board(state: GameState, catalog: Catalog) -> str:
    def cell_text(index: int) -> str:
        token = state.cell(index)
        return str(token) if token is not None else f"({index})"

    lines = ["         " + "".join(f"{a:>6}" for a in range(1, ANGLES + 1))]
    for region in reversed(RINGS):
        base = region.base_index
        row = "".join(f"{cell_text(base + a):>6}" for a in range(1, ANGLES + 1))
        lines.append(f"{region.value:>8} {row}")
    center = state.cell(25)
    center_text = f"{center} {catalog.token(center).label}" if center else "(25) empty"
    lines.append(f"{'center':>8}  {center_text}")
    return "\n".join(lines)


def _print_verdict(verdict, out) -> None:
    v = verdict.verdict
    if v.winner is None:
        return
    winner = "attacker" if v.winner is Role.ATTACKER else "defender"
    print(f"  judge: {winner} +1 — {v.comment}", file=out)


def _parse_human_move(line: str, role: Role, catalog: Catalog) -> Action:
    words = line.strip().split()
    if not words:
        raise IllegalMoveError("empty move; expected TOKEN REGION [ANGLE]")
    angle = None
    if words[-1].isdigit():
        angle = int(words[-1])
        words = words[:-1]
    if not words:
        raise IllegalMoveError("missing region")
    try:
        region = Region(words[-1].lower())
    except ValueError:
        raise IllegalMoveError(f"unknown region {words[-1]!r}; use center/inner/middle/outer") from None
    name = " ".join(words[:-1])
    if not name:
        raise IllegalMoveError("missing token name")
    token = catalog.resolve(role, name)
    return Action(token, region, angle)


def cmd_play(args, stdin=None, out=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    catalog = _load_catalog_arg(args.catalog)
    matrix = seeded_matchup_matrix(catalog)
    seats = {
        Role.ATTACKER: args.attacker,
        Role.DEFENDER: args.defender,
    }
    policies = {
        role: None if spec == "human" else parse_policy(spec, seed=args.seed)
        for role, spec in seats.items()
    }
    state = new_game(GameConfig(catalog))
    print("breachboard — attacker vs defender. Type 'TOKEN REGION [ANGLE]' "
          "to place, 'board' to reprint, 'quit' to resign.", file=out)
    resigned_by = None
    while state.terminal_reason is None and resigned_by is None:
        mover = state.to_move
        policy = policies[mover]
        if policy is not None:
            action = choose_action(policy, state, matrix)
            state = apply_action(state, action)
            entry = state.log[-1]
            print(f"[{mover.value}] {entry.action.token} "
                  f"{catalog.token(entry.action.token).label} -> position {entry.position}",
                  file=out)
        else:
            print(render_board(state, catalog), file=out)
            usable = [
                f"{t['id']} {t['label']}(x{t['remaining']})"
                for t in _human_tokens(state, catalog)
            ]
            print(f"you are the {mover.value}; tokens: {', '.join(usable)}", file=out)
            line = stdin.readline()
            if not line:
                resigned_by = mover
                break
            line = line.strip()
            if line.lower() in ("quit", "resign"):
                resigned_by = mover
                break
            if line.lower() == "board":
                continue
            try:
                action = _parse_human_move(line, mover, catalog)
                state = apply_action(state, action)
            except (IllegalMoveError, CatalogError) as exc:
                print(f"illegal move: {exc}", file=out)
                continue
            print(f"[{mover.value}] placed at position {state.log[-1].position}", file=out)
        if state.ply % 2 == 0 and state.ply > 0:
            pair = (state.log[-2].action.token, state.log[-1].action.token)
            verdict = judge_iterations([pair], matrix)[0]
            _print_verdict(verdict, out)

    print(render_board(state, catalog), file=out)
    if resigned_by is not None:
        winner = resigned_by.opponent
        print(f"{resigned_by.value} resigned; {winner.value} wins.", file=out)
        return 0
    report = game_report(state, matrix, catalog)
    print(render_scoring_table(iteration_log(state, matrix), catalog), file=out)
    final = report.final
    print(f"final score — attacker {final.attacker_total}, "
          f"defender {final.defender_total}: {final.outcome.value}", file=out)
    print(f"awareness {report.awareness_score:.1f}%  "
          f"intrusion {report.intrusion_score:.1f}%", file=out)
    return 0


def _human_tokens(state: GameState, catalog: Catalog) -> list[dict]:
    seen = []
    covered = set()
    for action in legal_actions(state):
        if action.token in covered:
            continue
        covered.add(action.token)
        seen.append({
            "id": str(action.token),
            "label": catalog.token(action.token).label,
            "remaining": state.max_uses - state.uses(action.token),
        })
    return seen


def cmd_simulate(args, out=None) -> int:
    out = out or sys.stdout
    catalog = _load_catalog_arg(args.catalog)
    matrix = seeded_matchup_matrix(catalog)
    config = TournamentConfig(games=args.games, attacker=args.attacker,
                              defender=args.defender, seed=args.seed)
    summary = tournament_summary(config, matrix, catalog)
    payload = json.dumps(summary.to_dict(), sort_keys=True, indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload, file=out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["token", "plays", "matchup_wins", "matchups"])
            for token, stats in sorted(summary.token_stats.items()):
                writer.writerow([token, stats["plays"], stats["matchup_wins"],
                                 stats["matchups"]])
    return 0


def cmd_solve(args, out=None) -> int:
    out = out or sys.stdout
    catalog = _load_catalog_arg(args.catalog)
    payoff = payoff_matrix(seeded_matchup_matrix(catalog))
    report = solve_matrix_game(payoff, iterations=args.iterations,
                               tolerance=args.tolerance)
    payload = {
        "value": report.value,
        "exploitability": report.exploitability,
        "iterations": report.iterations,
        "attacker_strategy": {
            str(t): p for t, p in zip(payoff.attacker_tokens,
                                      report.attacker_strategy.probabilities)
        },
        "defender_strategy": {
            str(t): p for t, p in zip(payoff.defender_tokens,
                                      report.defender_strategy.probabilities)
        },
    }
    print(json.dumps(payload, sort_keys=True, indent=2), file=out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["side", "token", "probability"])
            for t, p in zip(payoff.attacker_tokens, report.attacker_strategy.probabilities):
                writer.writerow(["attacker", str(t), p])
            for t, p in zip(payoff.defender_tokens, report.defender_strategy.probabilities):
                writer.writerow(["defender", str(t), p])
    return 0


def cmd_report(args, out=None) -> int:
    out = out or sys.stdout
    catalog = _load_catalog_arg(args.catalog)
    matrix = seeded_matchup_matrix(catalog)
    events = load_event_log(args.log)
    config, state, ended = replay_events(events, catalog)
    print(f"session config: {config.to_dict()}", file=out)
    print(render_board(state, catalog), file=out)
    print(render_scoring_table(iteration_log(state, matrix), catalog), file=out)
    if ended is not None:
        final = ended["final_result"]
        print(f"result: attacker {final['attacker_total']} — "
              f"defender {final['defender_total']} ({final['outcome']}, "
              f"{ended['reason']})", file=out)
        report = ended["report"]
        print(f"awareness {report['awareness_score']:.1f}%  "
              f"intrusion {report['intrusion_score']:.1f}%", file=out)
        for side, rows in report["per_trick"].items():
            for tag, counts in rows.items():
                print(f"  {side} trick {tag}: {counts['wins']} won, "
                      f"{counts['losses']} lost", file=out)
    else:
        print(f"session open at ply {state.ply}", file=out)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import make_app

    data_dir = args.data or os.environ.get(DATA_DIR_ENV) or "breachboard_sessions"
    catalog = _load_catalog_arg(args.catalog)
    service = SessionService(data_dir, catalog)
    app = make_app(service)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="breachboard",
        description="Data-protection awareness game: play, simulate, solve, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    play = sub.add_parser("play", help="interactive terminal game")
    play.add_argument("--attacker", default="greedy",
                      help="human | random | greedy | minimax[:D] (default greedy)")
    play.add_argument("--defender", default="human",
                      help="human | random | greedy | minimax[:D] (default human)")
    play.add_argument("--seed", type=int, default=0)
    play.add_argument("--catalog", help="path to a catalog JSON file")
    play.set_defaults(func=cmd_play)

    simulate = sub.add_parser("simulate", help="run a seeded tournament")
    simulate.add_argument("--games", type=int, required=True)
    simulate.add_argument("--attacker", default="random")
    simulate.add_argument("--defender", default="random")
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--catalog")
    simulate.add_argument("--out", help="write the JSON summary to a file")
    simulate.add_argument("--csv", help="write per-token stats to a CSV file")
    simulate.set_defaults(func=cmd_simulate)

    solve = sub.add_parser("solve", help="maximin analysis of the matchup game")
    solve.add_argument("--iterations", type=int, default=100_000)
    solve.add_argument("--tolerance", type=float, default=1e-3)
    solve.add_argument("--catalog")
    solve.add_argument("--csv", help="write strategies to a CSV file")
    solve.set_defaults(func=cmd_solve)

    report = sub.add_parser("report", help="re-render a stored session log")
    report.add_argument("--log", required=True, help="session JSONL file")
    report.add_argument("--catalog")
    report.set_defaults(func=cmd_report)

    serve = sub.add_parser("serve", help="run the HTTP session service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--data", help=f"data directory (or ${DATA_DIR_ENV})")
    serve.add_argument("--catalog")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CatalogError, UnknownPolicyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
