/** Wire-protocol types mirrored from the session service. */

export type Seat = 'attacker' | 'defender';
export type RegionName = 'center' | 'inner' | 'middle' | 'outer';

export type EventKind =
  | 'game_created'
  | 'move_placed'
  | 'verdict_issued'
  | 'game_ended';

export interface WireEvent {
  sequence: number;
  kind: EventKind;
  payload: Record<string, unknown>;
}

export interface MovePlacedPayload {
  ply: number;
  player: Seat;
  token: string;
  region: RegionName;
  opening_angle: number | null;
  position: number;
}

export interface VerdictPayload {
  iteration: number;
  attacker_token: string;
  defender_token: string;
  winner: Seat | null;
  source: 'judged' | 'unjudged';
  comment: string;
  a_points: number;
  d_points: number;
  attacker_running_total: number;
  defender_running_total: number;
}

export interface GameEndedPayload {
  reason: 'completed' | 'resigned';
  final_result: {
    attacker_total: number;
    defender_total: number;
    outcome: string;
    events: unknown[];
  };
  report: {
    awareness_score: number;
    intrusion_score: number;
    [key: string]: unknown;
  };
  [key: string]: unknown;
}

export interface LegalTokenInfo {
  id: string;
  label: string;
  remaining: number;
}

export interface LegalSummary {
  seat: Seat;
  regions: RegionName[];
  opening_angles: Partial<Record<RegionName, number[]>>;
  tokens: LegalTokenInfo[];
}

export interface SessionView {
  session_id: string;
  status: 'open' | 'finished';
  created_at: string;
  config: { attacker: string; defender: string; seed: number; hints: boolean };
  last_sequence: number;
  state: {
    ply: number;
    to_move: Seat;
    terminal_reason: string | null;
    cells: { position: number; player: Seat; token: string; label: string }[];
    placements: Record<Seat, number>;
    usage: Record<Seat, Record<string, number>>;
  };
  totals: Record<Seat, number>;
  last_verdict: VerdictPayload | null;
  legal: LegalSummary | null;
  result: GameEndedPayload | null;
  events?: WireEvent[];
}

export interface TokenRecord {
  id: string;
  label: string;
  definition: string;
  trick: string;
  aliases: string[];
}

export interface CatalogPayload {
  attacker_tokens: TokenRecord[];
  defender_tokens: TokenRecord[];
  matchups: { attacker: string; defender: string; winner: Seat; comment: string }[];
  psych_factors: { vulnerability: string[]; protection: string[]; stimuli: string[] };
}

export interface HintPayload {
  token: string;
  label: string;
  region: RegionName;
  opening_angle: number | null;
  position: number;
  completes: Record<string, unknown> | null;
}

export interface PlaceCommand {
  type: 'place_token';
  token: string;
  region: RegionName;
  opening_angle?: number | null;
  seat?: Seat;
}

export type Command =
  | PlaceCommand
  | { type: 'request_ai_move' }
  | { type: 'resign'; seat?: Seat };
