/** Browser bootstrap: wires the session client to the DOM.
 *
 * All state transitions flow through server events; this file only routes
 * clicks to commands and re-renders the fold result. */

import { SessionApi } from './api.js';
import { SessionClient } from './client.js';
import { renderBoard, renderError, renderFeed, renderPalette, renderReport } from './render.js';
import type { CatalogPayload, RegionName, Seat } from './types.js';
import { openingAnglesFor, remainingUses } from './viewmodel.js';

const POLL_INTERVAL_MS = 1200;

interface Elements {
  setup: HTMLElement;
  game: HTMLElement;
  board: HTMLElement;
  palette: HTMLElement;
  feed: HTMLElement;
  error: HTMLElement;
  report: HTMLElement;
  statusLine: HTMLElement;
  hintButton: HTMLButtonElement;
  hintText: HTMLElement;
}

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

class App {
  private client: SessionClient;
  private catalog: CatalogPayload | null = null;
  private selectedToken: string | null = null;
  private aiMovePending = false;

  constructor(
    private readonly api: SessionApi,
    private readonly el: Elements,
  ) {
    this.client = new SessionClient(api);
  }

  async boot(): Promise<void> {
    this.catalog = await this.api.getCatalog();
    this.el.setup.addEventListener('submit', (event) => {
      event.preventDefault();
      void this.startGame();
    });
    this.el.palette.addEventListener('click', (event) => {
      const card = (event.target as HTMLElement).closest('[data-token]');
      if (card && !card.hasAttribute('disabled')) {
        this.selectedToken = card.getAttribute('data-token');
        this.render();
      }
    });
    this.el.board.addEventListener('click', (event) => {
      const node = (event.target as HTMLElement).closest('[data-node]');
      if (node) void this.placeAt(node.getAttribute('data-region') as RegionName,
                                  Number(node.getAttribute('data-node')));
    });
    this.el.hintButton.addEventListener('click', () => void this.showHint());
    window.setInterval(() => void this.tick(), POLL_INTERVAL_MS);
  }

  private async startGame(): Promise<void> {
    const form = this.el.setup as unknown as HTMLFormElement;
    const data = new FormData(form);
    const seat = (data.get('seat') as Seat) ?? 'defender';
    const opponent = (data.get('opponent') as string) ?? 'greedy';
    const config: Record<string, unknown> = {
      attacker: seat === 'attacker' ? 'human' : opponent,
      defender: seat === 'defender' ? 'human' : opponent,
      seed: Number(data.get('seed') ?? 0),
      hints: data.get('hints') === 'on',
    };
    this.client = new SessionClient(this.api, seat);
    await this.client.start(config);
    this.el.setup.classList.add('hidden');
    this.el.game.classList.remove('hidden');
    this.render();
  }

  /** Poll; when an AI seat is to move, ask the server to play it. */
  private async tick(): Promise<void> {
    const model = this.client.model;
    if (!model.sessionId || model.status !== 'open') return;
    await this.client.sync();
    const fresh = this.client.model;
    const mover = fresh.toMove;
    const seatPolicy = fresh.config?.[mover];
    if (fresh.status === 'open' && seatPolicy && seatPolicy !== 'human' &&
        !this.aiMovePending) {
      this.aiMovePending = true;
      try {
        await this.client.requestAiMove();
      } finally {
        this.aiMovePending = false;
      }
    }
    this.render();
  }

  private async placeAt(region: RegionName, position: number): Promise<void> {
    if (!this.selectedToken) {
      this.client.lastError = 'pick a token first';
      this.render();
      return;
    }
    const angles = openingAnglesFor(this.client.model, region);
    const angle = angles.length
      ? (position === 25 ? null : ((position - 1) % 8) + 1)
      : null;
    const placed = await this.client.submitPlacement(
      this.selectedToken, region, angle);
    if (placed && remainingUses(this.client.model, this.selectedToken) === 0) {
      this.selectedToken = null;
    }
    this.render();
  }

  private async showHint(): Promise<void> {
    const hint = await this.client.hint();
    if (hint) {
      this.selectedToken = hint.token;
      const target = hint.opening_angle
        ? `${hint.region} (angle ${hint.opening_angle})`
        : hint.region;
      const completes = hint.completes
        ? ` — completes a judged pair: ${JSON.stringify(hint.completes.comment ?? '')}`
        : '';
      this.el.hintText.textContent =
        `coach: play ${hint.token} ${hint.label} to the ${target}${completes}`;
    }
    this.render();
  }

  private render(): void {
    if (!this.catalog) return;
    const model = this.client.model;
    this.el.board.innerHTML = renderBoard(model);
    this.el.palette.innerHTML = renderPalette(model, this.catalog,
                                              this.client.humanSeat);
    this.el.feed.innerHTML = renderFeed(model);
    this.el.error.innerHTML = renderError(this.client.lastError);
    this.el.report.innerHTML = renderReport(model);
    this.el.hintButton.classList.toggle('hidden', !model.config?.hints);
    const turn = model.status === 'open'
      ? `${model.toMove} to move (ply ${model.ply})`
      : 'game over';
    this.el.statusLine.textContent =
      `${turn} · totals ${model.totals.attacker}–${model.totals.defender}` +
      (this.selectedToken ? ` · selected ${this.selectedToken}` : '');
    if (this.selectedToken) {
      this.el.palette
        .querySelector(`[data-token="${this.selectedToken}"]`)
        ?.classList.add('selected');
    }
  }
}

export function main(): void {
  const api = new SessionApi('');
  const app = new App(api, {
    setup: element('setup'),
    game: element('game'),
    board: element('board'),
    palette: element('palette'),
    feed: element('feed'),
    error: element('error'),
    report: element('report'),
    statusLine: element('status-line'),
    hintButton: element('hint-button'),
    hintText: element('hint-text'),
  });
  void app.boot();
}

if (typeof document !== 'undefined') {
  document.addEventListener('DOMContentLoaded', main);
}
