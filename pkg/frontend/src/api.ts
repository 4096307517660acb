/** Thin HTTP client for the session service wire protocol. */

import type {
  CatalogPayload,
  Command,
  HintPayload,
  SessionView,
} from './types.js';

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  const body = (await response.json()) as T & { error?: string };
  if (!response.ok) {
    throw new ApiError(body.error ?? `HTTP ${response.status}`, response.status);
  }
  return body;
}

export class SessionApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  async createSession(config: Record<string, unknown>): Promise<SessionView> {
    const response = await this.fetchFn(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(config),
    });
    return parseOrThrow<SessionView>(response);
  }

  /** View plus all events with sequence > since (the polling call). */
  async getSession(sessionId: string, since: number): Promise<SessionView> {
    const response = await this.fetchFn(
      `${this.baseUrl}/sessions/${sessionId}?since=${since}`,
    );
    return parseOrThrow<SessionView>(response);
  }

  async sendCommand(sessionId: string, command: Command): Promise<SessionView> {
    const response = await this.fetchFn(
      `${this.baseUrl}/sessions/${sessionId}/commands`,
      {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify(command),
      },
    );
    return parseOrThrow<SessionView>(response);
  }

  async getHint(sessionId: string): Promise<HintPayload> {
    const response = await this.fetchFn(`${this.baseUrl}/sessions/${sessionId}/hint`);
    return parseOrThrow<HintPayload>(response);
  }

  async getCatalog(): Promise<CatalogPayload> {
    const response = await this.fetchFn(`${this.baseUrl}/catalog`);
    return parseOrThrow<CatalogPayload>(response);
  }
}
