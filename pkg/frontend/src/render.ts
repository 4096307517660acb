/** Pure string renderers: SVG board, token palette, verdict feed, report.
 * No DOM access here, so every renderer is unit-testable in plain node. */

import { BOARD_NODES, BOARD_SIZE, PAIR_CONNECTORS, nodeAt } from './geometry.js';
import type { SessionModel } from './viewmodel.js';
import { highlightRegions, remainingUses, usedCount } from './viewmodel.js';
import type { CatalogPayload, Seat, TokenRecord } from './types.js';

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/** The full board as SVG. All 25 nodes and 16 pair connectors are always
 * present; occupancy and highlights only change classes and labels. */
export function renderBoard(model: SessionModel): string {
  const highlighted = new Set(highlightRegions(model));
  const connectors = PAIR_CONNECTORS.map((pair) => {
    const a = nodeAt(pair.a);
    const b = nodeAt(pair.b);
    return (
      `<line data-pair="${pair.a}-${pair.b}" data-round="${pair.round}" ` +
      `class="pair round-${pair.round}" ` +
      `x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}" ` +
      `x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}"/>`
    );
  });
  const nodes = BOARD_NODES.map((node) => {
    const cell = model.occupancy.get(node.position);
    const classes = ['node', node.region];
    if (cell) classes.push('occupied', cell.player);
    else if (highlighted.has(node.region)) classes.push('highlight');
    const label = cell ? cell.token : String(node.position);
    return (
      `<g data-node="${node.position}" data-region="${node.region}" ` +
      `class="${classes.join(' ')}" transform="translate(${node.x.toFixed(1)},${node.y.toFixed(1)})">` +
      `<circle r="20"/>` +
      `<text text-anchor="middle" dy="5">${escapeHtml(label)}</text>` +
      `</g>`
    );
  });
  return (
    `<svg viewBox="0 0 ${BOARD_SIZE} ${BOARD_SIZE}" class="board" role="img" ` +
    `aria-label="game board">` +
    connectors.join('') +
    nodes.join('') +
    `</svg>`
  );
}

/** Token palette for one seat. While the seat is to move, the server's
 * legal summary is authoritative: tokens it omits are used up and render
 * disabled with the lockout tooltip. Off turn, everything is disabled but
 * only the event-derived play counts are shown. */
export function renderPalette(
  model: SessionModel,
  catalog: CatalogPayload,
  seat: Seat,
): string {
  const tokens: TokenRecord[] =
    seat === 'attacker' ? catalog.attacker_tokens : catalog.defender_tokens;
  const isMyTurn =
    model.status === 'open' && model.toMove === seat && model.legal?.seat === seat;
  const cards = tokens.map((token) => {
    const lockedOut = isMyTurn && remainingUses(model, token.id) <= 0;
    const disabled = !isMyTurn || lockedOut;
    const tooltip = lockedOut ? 'already used twice' : token.definition;
    const uses = isMyTurn
      ? `x${remainingUses(model, token.id)}`
      : `used ${usedCount(model, token.id)}`;
    return (
      `<button data-token="${token.id}" class="card${disabled ? ' disabled' : ''}" ` +
      `${disabled ? 'disabled ' : ''}title="${escapeHtml(tooltip)}">` +
      `<span class="card-id">${token.id}</span>` +
      `<span class="card-label">${escapeHtml(token.label)}</span>` +
      `<span class="card-trick">${escapeHtml(token.trick)}</span>` +
      `<span class="card-uses">${uses}</span>` +
      `</button>`
    );
  });
  return `<div class="palette" data-seat="${seat}">${cards.join('')}</div>`;
}

/** The judge's verdict feed with running totals, newest last. */
export function renderFeed(model: SessionModel): string {
  const items = model.feed.map((item) => {
    const winner = item.winner ?? 'none';
    return (
      `<li data-iteration="${item.iteration}" class="verdict ${winner}">` +
      `<span class="iter">#${item.iteration}</span> ` +
      `<span class="matchup">${item.attackerToken} vs ${item.defenderToken}</span> ` +
      `<span class="winner">${winner}</span> ` +
      `<span class="comment">${escapeHtml(item.comment)}</span> ` +
      `<span class="totals">${item.attackerTotal}–${item.defenderTotal}</span>` +
      `</li>`
    );
  });
  return (
    `<div class="feed"><h3>Judge</h3>` +
    `<div class="totals" data-totals="${model.totals.attacker}-${model.totals.defender}">` +
    `attacker ${model.totals.attacker} – defender ${model.totals.defender}</div>` +
    `<ol>${items.join('')}</ol></div>`
  );
}

/** Final report screen shown once the server declares the game over. */
export function renderReport(model: SessionModel): string {
  if (!model.result) return '';
  const final = model.result.final_result;
  const report = model.result.report;
  return (
    `<div class="report" data-outcome="${final.outcome}">` +
    `<h2>Game over: ${escapeHtml(String(final.outcome).replace('_', ' '))}</h2>` +
    `<p class="score">attacker ${final.attacker_total} – ` +
    `defender ${final.defender_total} (${escapeHtml(model.result.reason)})</p>` +
    `<p class="awareness">awareness ${report.awareness_score.toFixed(1)}%</p>` +
    `<p class="intrusion">intrusion ${report.intrusion_score.toFixed(1)}%</p>` +
    `</div>`
  );
}

/** Inline, non-fatal error banner for rejected placements. */
export function renderError(message: string | null): string {
  if (!message) return '<div class="error hidden"></div>';
  return `<div class="error" role="alert">${escapeHtml(message)}</div>`;
}
