/** Client-side session model, built purely by folding server events.
 *
 * The client never computes rules or scores: board occupancy comes from
 * move_placed events (server-resolved positions), the verdict feed and its
 * running totals from verdict_issued events, the final report from
 * game_ended, and legal-move highlights from the server's view. Folding is
 * idempotent over repeated event ranges via the sequence cursor.
 */

import type {
  GameEndedPayload,
  LegalSummary,
  MovePlacedPayload,
  RegionName,
  Seat,
  SessionView,
  VerdictPayload,
  WireEvent,
} from './types.js';

export interface OccupiedCell {
  position: number;
  player: Seat;
  token: string;
}

export interface VerdictFeedItem {
  iteration: number;
  attackerToken: string;
  defenderToken: string;
  winner: Seat | null;
  comment: string;
  attackerTotal: number;
  defenderTotal: number;
}

export interface SessionModel {
  sessionId: string | null;
  status: 'open' | 'finished';
  lastSequence: number;
  ply: number;
  toMove: Seat;
  occupancy: Map<number, OccupiedCell>;
  /** Times each token id has been placed, folded from move events. */
  usage: Map<string, number>;
  feed: VerdictFeedItem[];
  totals: { attacker: number; defender: number };
  result: GameEndedPayload | null;
  /** Server-reported legal summary for the seat to move (authoritative). */
  legal: LegalSummary | null;
  config: SessionView['config'] | null;
}

export function emptyModel(): SessionModel {
  return {
    sessionId: null,
    status: 'open',
    lastSequence: -1,
    ply: 0,
    toMove: 'attacker',
    occupancy: new Map(),
    usage: new Map(),
    feed: [],
    totals: { attacker: 0, defender: 0 },
    result: null,
    legal: null,
    config: null,
  };
}

/** Fold one event into the model. Events at or before the cursor are
 * ignored, so replaying an overlapping range is a no-op. */
export function foldEvent(model: SessionModel, event: WireEvent): SessionModel {
  if (event.sequence <= model.lastSequence) return model;
  if (event.sequence !== model.lastSequence + 1) {
    throw new Error(
      `event gap: got sequence ${event.sequence}, expected ${model.lastSequence + 1}`,
    );
  }
  const next: SessionModel = { ...model, lastSequence: event.sequence };
  switch (event.kind) {
    case 'game_created': {
      const payload = event.payload as {
        session_id: string;
        config: SessionView['config'];
      };
      next.sessionId = payload.session_id;
      next.config = payload.config;
      break;
    }
    case 'move_placed': {
      const move = event.payload as unknown as MovePlacedPayload;
      next.occupancy = new Map(model.occupancy);
      next.occupancy.set(move.position, {
        position: move.position,
        player: move.player,
        token: move.token,
      });
      next.usage = new Map(model.usage);
      next.usage.set(move.token, (model.usage.get(move.token) ?? 0) + 1);
      next.ply = move.ply + 1;
      next.toMove = move.player === 'attacker' ? 'defender' : 'attacker';
      break;
    }
    case 'verdict_issued': {
      const verdict = event.payload as unknown as VerdictPayload;
      next.feed = [
        ...model.feed,
        {
          iteration: verdict.iteration,
          attackerToken: verdict.attacker_token,
          defenderToken: verdict.defender_token,
          winner: verdict.winner,
          comment: verdict.comment,
          attackerTotal: verdict.attacker_running_total,
          defenderTotal: verdict.defender_running_total,
        },
      ];
      next.totals = {
        attacker: verdict.attacker_running_total,
        defender: verdict.defender_running_total,
      };
      break;
    }
    case 'game_ended': {
      next.result = event.payload as unknown as GameEndedPayload;
      next.status = 'finished';
      next.legal = null;
      break;
    }
  }
  return next;
}

export function foldEvents(model: SessionModel, events: WireEvent[]): SessionModel {
  return events.reduce(foldEvent, model);
}

/** Merge a polled server view: fold any new events, then adopt the
 * server-authoritative legal summary. */
export function applyView(model: SessionModel, view: SessionView): SessionModel {
  let next = view.events ? foldEvents(model, view.events) : model;
  if (next === model) next = { ...model };
  next.legal = view.legal;
  return next;
}

/** Regions the human may currently target; always a subset of (here:
 * exactly) the server's legal summary. */
export function highlightRegions(model: SessionModel): RegionName[] {
  return model.legal ? [...model.legal.regions] : [];
}

export function openingAnglesFor(model: SessionModel, region: RegionName): number[] {
  return model.legal?.opening_angles?.[region] ?? [];
}

/** Remaining uses for a token id per the server's legal summary: absent
 * tokens are exhausted (or it is not this seat's turn). */
export function remainingUses(model: SessionModel, tokenId: string): number {
  const info = model.legal?.tokens.find((t) => t.id === tokenId);
  return info ? info.remaining : 0;
}

/** Times a token has been placed, per the folded move events. */
export function usedCount(model: SessionModel, tokenId: string): number {
  return model.usage.get(tokenId) ?? 0;
}
