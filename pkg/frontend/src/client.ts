/** Session client: the browser-side controller between the HTTP api and the
 * view model. Keeps a single in-flight sync, folds server events, and falls
 * back to a full refetch when the event cursor no longer lines up. */

import { ApiError, SessionApi } from './api.js';
import type { HintPayload, RegionName, Seat } from './types.js';
import { SessionModel, applyView, emptyModel } from './viewmodel.js';

export class SessionClient {
  model: SessionModel = emptyModel();
  humanSeat: Seat;
  lastError: string | null = null;
  private syncing = false;

  constructor(
    private readonly api: SessionApi,
    humanSeat: Seat = 'defender',
  ) {
    this.humanSeat = humanSeat;
  }

  get sessionId(): string {
    if (!this.model.sessionId) throw new Error('no session attached');
    return this.model.sessionId;
  }

  async start(config: Record<string, unknown>): Promise<SessionModel> {
    const view = await this.api.createSession(config);
    this.model = emptyModel();
    return this.refresh(view.session_id);
  }

  async attach(sessionId: string): Promise<SessionModel> {
    this.model = emptyModel();
    return this.refresh(sessionId);
  }

  /** Poll for events past our cursor; idempotent and single-flight. */
  async sync(): Promise<SessionModel> {
    if (this.syncing || !this.model.sessionId) return this.model;
    this.syncing = true;
    try {
      return await this.refresh(this.model.sessionId);
    } finally {
      this.syncing = false;
    }
  }

  private async refresh(sessionId: string): Promise<SessionModel> {
    const view = await this.api.getSession(sessionId, this.model.lastSequence);
    try {
      this.model = applyView(this.model, view);
    } catch {
      // Cursor mismatch (e.g. reattached mid-session): fold from scratch.
      const full = await this.api.getSession(sessionId, -1);
      this.model = applyView(emptyModel(), full);
    }
    return this.model;
  }

  /** Submit a human placement. Rejections are non-fatal: the error is kept
   * for rendering, the board stays untouched, and a conflict (an AI move
   * raced ahead) triggers a resync so the view catches up. */
  async submitPlacement(
    token: string,
    region: RegionName,
    openingAngle?: number | null,
  ): Promise<boolean> {
    this.lastError = null;
    const sessionId = this.sessionId;
    try {
      await this.api.sendCommand(sessionId, {
        type: 'place_token',
        token,
        region,
        opening_angle: openingAngle ?? null,
        seat: this.humanSeat,
      });
    } catch (error) {
      if (error instanceof ApiError) {
        this.lastError = error.message;
        if (error.message.includes('out-of-turn')) {
          await this.refresh(sessionId);
        }
        return false;
      }
      throw error;
    }
    await this.refresh(sessionId);
    return true;
  }

  async requestAiMove(): Promise<SessionModel> {
    const sessionId = this.sessionId;
    await this.api.sendCommand(sessionId, { type: 'request_ai_move' });
    return this.refresh(sessionId);
  }

  async resign(): Promise<SessionModel> {
    const sessionId = this.sessionId;
    await this.api.sendCommand(sessionId, { type: 'resign', seat: this.humanSeat });
    return this.refresh(sessionId);
  }

  /** Greedy coaching suggestion; hidden entirely when disabled in config. */
  async hint(): Promise<HintPayload | null> {
    if (!this.model.config?.hints) return null;
    try {
      return await this.api.getHint(this.sessionId);
    } catch (error) {
      if (error instanceof ApiError) return null;
      throw error;
    }
  }
}
