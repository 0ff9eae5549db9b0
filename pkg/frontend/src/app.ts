// Single-page UI over the staffing service: candidate explorer with what-if
// history, rules & influence browser, and a team builder. Thin by design —
// every probability on screen is a verbatim service value (see #debug-view).

import { ApiClient, ApiError } from './api.js';
import type { AttributeSpec, PoolEntry, Prediction, TeamRecommendation, WhatIfResult } from './api.js';
import { parsePoolCsv } from './csv.js';
import { deltaClass, fmtBits, fmtDelta, fmtPercent, fmtProb } from './format.js';
import { AppState, MISSING, Sequencer, appendWhatIf, duplicatePoolIds, initialState, valuesFromForm } from './state.js';

const LAYOUT = `
  <header>
    <h1>talentbayes</h1>
    <span id="fingerprint" class="muted"></span>
  </header>
  <div id="banner" class="banner" hidden></div>
  <main>
    <section id="explorer">
      <h2>Candidate explorer</h2>
      <p class="muted">Pick values (or leave fields missing) to see the predicted
      performance posterior. Arm "what-if" on a field to see how changing it
      moves the posterior.</p>
      <form id="candidate-form"></form>
      <div id="prediction"></div>
      <h3>What-if history</h3>
      <ol id="whatif-history"></ol>
    </section>
    <section id="insight">
      <h2>Rules &amp; influence</h2>
      <div id="rules"></div>
      <div id="influence"></div>
    </section>
    <section id="team">
      <h2>Team builder</h2>
      <p class="muted">Paste or upload a pool CSV (an <code>id</code> column plus
      attribute columns; <code>?</code> for missing).</p>
      <textarea id="pool-csv" rows="6" spellcheck="false"></textarea>
      <input type="file" id="pool-file" accept=".csv,text/csv">
      <div class="team-controls">
        <label>team size <input type="number" id="team-size" min="1" value="3"></label>
        <label>target <select id="team-target"></select></label>
        <label>threshold <input type="number" id="team-threshold" min="0" max="1" step="0.05"></label>
        <button type="button" id="team-run">Recommend</button>
      </div>
      <div id="pool-errors" class="errors"></div>
      <div id="recommendation"></div>
    </section>
  </main>
  <footer>
    <a href="#" id="debug-toggle">debug</a>
    <pre id="debug-view" hidden></pre>
  </footer>
`;

export class App {
  readonly state: AppState = initialState();
  private seq = new Sequencer();

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
  ) {}

  async init(): Promise<void> {
    this.root.innerHTML = LAYOUT;
    this.el('debug-toggle').addEventListener('click', (e) => {
      e.preventDefault();
      const view = this.el('debug-view');
      view.hidden = !view.hidden;
    });
    try {
      this.state.summary = await this.api.modelSummary();
    } catch (err) {
      this.showBanner(err);
      return;
    }
    this.remember('model', this.state.summary);
    this.el('fingerprint').textContent =
      `model ${this.state.summary.model_fingerprint.slice(0, 12)} · trained on ${this.state.summary.n} records`;
    this.renderForm();
    this.renderTeamControls();
    this.wireTeamBuilder();
    await Promise.all([this.loadInsight(), this.refreshPrediction()]);
  }

  // --- candidate explorer ---

  private attributeOptions(spec: AttributeSpec): string[] {
    const summary = this.state.summary!;
    const seen = new Set([...(spec.values ?? []), ...(summary.vocabulary[spec.name] ?? [])]);
    return [...seen];
  }

  private renderForm(): void {
    const form = this.el<HTMLFormElement>('candidate-form');
    form.innerHTML = '';
    for (const spec of this.state.summary!.schema.attributes) {
      const row = document.createElement('div');
      row.className = 'field-row';
      const label = document.createElement('label');
      label.textContent = spec.name;
      label.htmlFor = `field-${spec.name}`;
      let input: HTMLSelectElement | HTMLInputElement;
      if (spec.kind === 'categorical') {
        input = document.createElement('select');
        const blank = document.createElement('option');
        blank.value = MISSING;
        blank.textContent = '(missing)';
        input.appendChild(blank);
        for (const value of this.attributeOptions(spec)) {
          const option = document.createElement('option');
          option.value = value;
          option.textContent = value;
          input.appendChild(option);
        }
      } else {
        input = document.createElement('input');
        input.type = 'number';
        input.step = 'any';
        input.placeholder = '(missing)';
      }
      input.id = `field-${spec.name}`;
      input.dataset.attribute = spec.name;
      input.addEventListener('change', () => void this.onFieldChange(spec.name));
      const toggle = document.createElement('input');
      toggle.type = 'checkbox';
      toggle.id = `whatif-${spec.name}`;
      toggle.title = 'what-if: show the delta caused by the next change to this field';
      const toggleLabel = document.createElement('label');
      toggleLabel.htmlFor = toggle.id;
      toggleLabel.textContent = 'what-if';
      toggleLabel.className = 'whatif-label';
      const fieldError = document.createElement('span');
      fieldError.className = 'field-error';
      fieldError.id = `error-${spec.name}`;
      row.append(label, input, toggle, toggleLabel, fieldError);
      form.appendChild(row);
    }
  }

  private readForm(): Record<string, string> {
    const values: Record<string, string> = {};
    for (const spec of this.state.summary!.schema.attributes) {
      const input = this.el<HTMLInputElement>(`field-${spec.name}`);
      values[spec.name] = input.value;
    }
    return values;
  }

  async onFieldChange(attribute: string): Promise<void> {
    const summary = this.state.summary!;
    this.el(`error-${attribute}`).textContent = '';
    const previous = this.state.formValues;
    const current = this.readForm();
    this.state.formValues = current;
    const armed = this.el<HTMLInputElement>(`whatif-${attribute}`).checked;
    try {
      if (armed) {
        const baseline = valuesFromForm(summary.schema.attributes, { ...current, [attribute]: previous[attribute] ?? MISSING });
        const next = valuesFromForm(summary.schema.attributes, current)[attribute] ?? null;
        await this.runWhatIf(baseline, attribute, next);
      } else {
        await this.refreshPrediction();
      }
    } catch (err) {
      this.renderFieldError(attribute, err);
    }
  }

  async refreshPrediction(): Promise<void> {
    const summary = this.state.summary!;
    this.state.formValues = this.readForm();
    const values = valuesFromForm(summary.schema.attributes, this.state.formValues);
    const token = this.seq.begin('predict');
    const prediction = await this.api.predict(values);
    if (!this.seq.isCurrent('predict', token)) return; // superseded by a newer edit
    this.state.prediction = prediction;
    this.remember('predict', prediction);
    this.renderPrediction();
  }

  private async runWhatIf(
    baseline: Record<string, string | number | null>,
    attribute: string,
    newValue: string | number | null,
  ): Promise<void> {
    const token = this.seq.begin('whatif');
    const result = await this.api.whatIf(baseline, attribute, newValue);
    if (!this.seq.isCurrent('whatif', token)) return;
    appendWhatIf(this.state, result);
    this.state.prediction = result.after;
    this.remember('whatif', result);
    this.remember('predict', result.after);
    this.renderPrediction();
    this.renderHistory();
  }

  private renderPrediction(): void {
    const prediction = this.state.prediction;
    const target = this.el('prediction');
    if (!prediction) {
      target.innerHTML = '';
      return;
    }
    const rows = Object.entries(prediction.posterior)
      .map(([label, p]) => {
        const highlight = label === prediction.label ? ' class="winner"' : '';
        return `<tr${highlight}><td>${label}</td>` +
          `<td class="prob" data-label="${label}">${fmtProb(p)}</td>` +
          `<td><div class="bar" style="width:${(p * 100).toFixed(1)}%"></div></td>` +
          `<td class="muted">${fmtPercent(p)}</td></tr>`;
      })
      .join('');
    target.innerHTML =
      `<p>predicted: <strong id="predicted-label">${prediction.label}</strong></p>` +
      `<table class="posterior">${rows}</table>`;
  }

  private renderHistory(): void {
    const list = this.el('whatif-history');
    list.innerHTML = '';
    for (const entry of this.state.whatIfHistory) {
      const item = document.createElement('li');
      const from = entry.old_value === null ? '(missing)' : String(entry.old_value);
      const to = entry.new_value === null ? '(missing)' : String(entry.new_value);
      const deltas = Object.entries(entry.delta)
        .map(([label, d]) =>
          `<span class="${deltaClass(d)}" data-delta="${label}">${label} ${fmtDelta(d)}</span>`)
        .join(' ');
      item.innerHTML = `<code>${entry.attribute}</code>: ${from} → ${to} — ${deltas}`;
      list.appendChild(item);
    }
  }

  private renderFieldError(attribute: string, err: unknown): void {
    if (err instanceof ApiError && err.status === 0) {
      this.showBanner(err); // service unreachable: keep inputs, show banner
      return;
    }
    this.el(`error-${attribute}`).textContent = err instanceof Error ? err.message : String(err);
  }

  // --- rules & influence ---

  async loadInsight(): Promise<void> {
    try {
      const [rules, influence] = await Promise.all([this.api.rules(), this.api.influence()]);
      this.remember('rules', rules);
      this.remember('influence', influence);
      this.el('rules').innerHTML =
        '<h3>Classification rules</h3><ul>' +
        rules.rules
          .map((r) =>
            `<li>IF <code>${r.attribute}=${r.value}</code> THEN <strong>${r.class}</strong>` +
            ` <span class="muted">(confidence ${fmtProb(r.confidence)}, support ${r.support})</span></li>`)
          .join('') +
        '</ul>';
      this.el('influence').innerHTML =
        '<h3>Attribute influence</h3><ol>' +
        influence.influence
          .map((e) => `<li><code>${e.attribute}</code> <span class="muted">${fmtBits(e.mutual_information)}</span></li>`)
          .join('') +
        '</ol>';
    } catch (err) {
      this.showBanner(err);
    }
  }

  // --- team builder ---

  private renderTeamControls(): void {
    const select = this.el<HTMLSelectElement>('team-target');
    select.innerHTML = '';
    for (const label of this.state.summary!.schema.class_labels) {
      const option = document.createElement('option');
      option.value = label;
      option.textContent = label;
      select.appendChild(option);
    }
  }

  private wireTeamBuilder(): void {
    this.el('team-run').addEventListener('click', () => void this.runRecommend());
    // size/threshold changes re-run automatically once a pool is loaded
    this.el('team-size').addEventListener('change', () => void this.maybeRerun());
    this.el('team-threshold').addEventListener('change', () => void this.maybeRerun());
    this.el('team-target').addEventListener('change', () => void this.maybeRerun());
    this.el<HTMLTextAreaElement>('pool-csv').addEventListener('change', () => {
      this.setPoolFromCsv(this.el<HTMLTextAreaElement>('pool-csv').value);
    });
    this.el<HTMLInputElement>('pool-file').addEventListener('change', async () => {
      const file = this.el<HTMLInputElement>('pool-file').files?.[0];
      if (!file) return;
      const text = await file.text();
      this.el<HTMLTextAreaElement>('pool-csv').value = text;
      this.setPoolFromCsv(text);
    });
  }

  private async maybeRerun(): Promise<void> {
    if (this.state.pool.length > 0 && this.state.recommendation) {
      await this.runRecommend();
    }
  }

  setPoolFromCsv(text: string): void {
    const summary = this.state.summary!;
    this.state.poolErrors = [];
    this.state.pool = [];
    if (text.trim() === '') {
      this.renderPoolErrors();
      return;
    }
    try {
      const { header, rows } = parsePoolCsv(text);
      const known = new Set(summary.schema.attributes.map((a) => a.name));
      for (const name of header) {
        if (name !== 'id' && !known.has(name)) throw new Error(`unknown column '${name}'`);
      }
      const byKind = new Map(summary.schema.attributes.map((a) => [a.name, a.kind]));
      this.state.pool = rows.map((row) => {
        const values: Record<string, string | number | null> = {};
        for (const [name, cell] of Object.entries(row.cells)) {
          if (cell === '' || cell === '?') {
            values[name] = null;
          } else if (byKind.get(name) === 'numeric') {
            const parsed = Number(cell);
            if (!Number.isFinite(parsed)) throw new Error(`${row.id}: ${name} is not a number: ${cell}`);
            values[name] = parsed;
          } else {
            values[name] = cell;
          }
        }
        return { id: row.id, values };
      });
      // duplicate ids are flagged before any request goes out
      const dupes = duplicatePoolIds(this.state.pool);
      if (dupes.length > 0) {
        this.state.poolErrors.push(`duplicate ids: ${dupes.join(', ')}`);
        this.state.pool = [];
      }
    } catch (err) {
      this.state.poolErrors.push(err instanceof Error ? err.message : String(err));
    }
    this.renderPoolErrors();
  }

  async runRecommend(): Promise<void> {
    if (this.state.pool.length === 0) {
      this.state.poolErrors = ['load a pool first'];
      this.renderPoolErrors();
      return;
    }
    const teamSize = Number(this.el<HTMLInputElement>('team-size').value);
    const thresholdRaw = this.el<HTMLInputElement>('team-threshold').value;
    const threshold = thresholdRaw === '' ? undefined : Number(thresholdRaw);
    const target = this.el<HTMLSelectElement>('team-target').value || undefined;
    const token = this.seq.begin('recommend');
    try {
      const team = await this.api.recommend(this.state.pool, teamSize, target, threshold);
      if (!this.seq.isCurrent('recommend', token)) return;
      this.state.recommendation = team;
      this.remember('recommend', team);
      this.renderRecommendation();
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        this.state.poolErrors = [`${err.code}: ${err.message}`];
        this.renderPoolErrors();
      } else {
        this.showBanner(err);
      }
    }
  }

  private renderPoolErrors(): void {
    const target = this.el('pool-errors');
    if (this.state.poolErrors.length > 0) {
      target.innerHTML = this.state.poolErrors
        .map((msg) => `<p>${msg}</p>`)
        .join('');
    } else if (this.state.pool.length > 0) {
      target.innerHTML = `<p class="muted">pool loaded: ${this.state.pool.length} candidates</p>`;
    } else {
      target.innerHTML = '';
    }
  }

  private renderRecommendation(): void {
    const team = this.state.recommendation;
    const target = this.el('recommendation');
    if (!team) {
      target.innerHTML = '';
      return;
    }
    const rows = team.members
      .map((m, index) =>
        `<tr data-member="${m.id}"><td>${index + 1}</td><td>${m.id}</td>` +
        `<td class="prob" data-score="${m.id}">${fmtProb(m.score)}</td></tr>`)
      .join('');
    const warning = team.undersized
      ? '<p class="warning" id="undersized-warning">⚠ team is undersized for the requested size</p>'
      : '';
    target.innerHTML =
      `<h3>Recommended team <span class="muted">target ${team.target_class}</span></h3>` +
      warning +
      `<table class="team"><thead><tr><th>#</th><th>id</th><th>P(${team.target_class})</th></tr></thead>` +
      `<tbody>${rows}</tbody></table>`;
  }

  // --- shared helpers ---

  private remember(key: string, payload: unknown): void {
    this.state.lastResponses[key] = payload;
    this.el('debug-view').textContent = JSON.stringify(this.state.lastResponses, null, 2);
  }

  private showBanner(err: unknown): void {
    const banner = this.el('banner');
    this.state.banner = err instanceof Error ? err.message : String(err);
    banner.textContent = this.state.banner;
    banner.hidden = false;
  }

  private el<T extends HTMLElement = HTMLElement>(id: string): T {
    const found = this.root.querySelector<T>(`#${id}`);
    if (!found) throw new Error(`missing element #${id}`);
    return found;
  }
}

export function apiBaseFromLocation(search: string, fallback = 'http://localhost:8000'): string {
  const fromQuery = new URLSearchParams(search).get('api');
  return (fromQuery ?? fallback).replace(/\/$/, '');
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  const api = new ApiClient(apiBaseFromLocation(window.location.search));
  void new App(document.getElementById('app')!, api).init();
}
