"use strict";
(() => {
  // src/api.ts
  var ApiError = class extends Error {
    status;
    type;
    constructor(status, type, message) {
      super(message);
      this.status = status;
      this.type = type;
    }
  };
  async function request(base, path, init = {}) {
    const res = await fetch(base + path, {
      headers: { "Content-Type": "application/json" },
      ...init
    });
    if (!res.ok) {
      let type = "HttpError";
      let message = `${res.status} ${res.statusText}`;
      try {
        const body = await res.json();
        if (body?.error) {
          type = body.error.type ?? type;
          message = body.error.message ?? message;
        } else if (body?.detail) {
          type = "ValidationError";
          message = JSON.stringify(body.detail);
        }
      } catch {
      }
      throw new ApiError(res.status, type, message);
    }
    return res.json();
  }
  var ServiceClient = class {
    constructor(base = "") {
      this.base = base;
    }
    base;
    createSession(scale, sigma, rMin) {
      return request(this.base, "/sessions", {
        method: "POST",
        body: JSON.stringify({ scale, sigma: sigma ?? null, r_min: rMin ?? 1 })
      });
    }
    getSession(id) {
      return request(this.base, `/sessions/${id}`);
    }
    postStage1(id, certainIdentical) {
      return request(this.base, `/sessions/${id}/stage1`, {
        method: "POST",
        body: JSON.stringify({ certain_identical: certainIdentical })
      });
    }
    postStage2(id, rMax) {
      return request(this.base, `/sessions/${id}/stage2`, {
        method: "POST",
        body: JSON.stringify({ r_max: rMax })
      });
    }
    putChips(id, allocation) {
      return request(this.base, `/sessions/${id}/chips`, {
        method: "PUT",
        body: JSON.stringify(allocation)
      });
    }
    getFeedback(id, signal) {
      return request(this.base, `/sessions/${id}/feedback`, { signal });
    }
    finalize(id, decline = false) {
      return request(this.base, `/sessions/${id}/finalize`, {
        method: "POST",
        body: JSON.stringify({ decline })
      });
    }
    startAnalysis(body) {
      return request(this.base, "/analyses", {
        method: "POST",
        body: JSON.stringify(body)
      });
    }
    getAnalysis(runId) {
      return request(this.base, `/analyses/${runId}`);
    }
    getInterpretation(scale, sigma) {
      const q = new URLSearchParams({ scale });
      if (sigma !== void 0) q.set("sigma", String(sigma));
      return request(this.base, `/interpretation?${q}`);
    }
  };

  // src/grid.ts
  function newGrid(lower, upper, nbins, totalChips) {
    return {
      lower,
      upper,
      nbins,
      totalChips,
      chips: new Array(nbins).fill(0),
      undoStack: [],
      redoStack: []
    };
  }
  function binEdges(state) {
    const width = (state.upper - state.lower) / state.nbins;
    return Array.from({ length: state.nbins + 1 }, (_, i) => state.lower + i * width);
  }
  function binLabel(state, i) {
    const edges = binEdges(state);
    return `${trim(edges[i])} to ${trim(edges[i + 1])}`;
  }
  function trim(x) {
    return Number.isInteger(x) ? String(x) : x.toFixed(2);
  }
  function placedChips(state) {
    return state.chips.reduce((a, b) => a + b, 0);
  }
  function remainingChips(state) {
    return state.totalChips - placedChips(state);
  }
  function binFraction(state, i) {
    return state.chips[i] / state.totalChips;
  }
  function binPercentLabel(state, i) {
    if (state.chips[i] === 0) return "";
    return `${formatPercent(binFraction(state, i))}`;
  }
  function formatPercent(p) {
    const pct = 100 * p;
    return `${Number.isInteger(pct) ? pct : pct.toFixed(1)}%`;
  }
  function push(state, next) {
    return {
      ...state,
      chips: next,
      undoStack: [...state.undoStack, state.chips],
      redoStack: []
    };
  }
  function placeChip(state, i) {
    if (remainingChips(state) <= 0) return state;
    const next = state.chips.slice();
    next[i] += 1;
    return push(state, next);
  }
  function removeChip(state, i) {
    if (state.chips[i] <= 0) return state;
    const next = state.chips.slice();
    next[i] -= 1;
    return push(state, next);
  }
  function undo(state) {
    const prev = state.undoStack[state.undoStack.length - 1];
    if (!prev) return state;
    return {
      ...state,
      chips: prev,
      undoStack: state.undoStack.slice(0, -1),
      redoStack: [...state.redoStack, state.chips]
    };
  }
  function redo(state) {
    const next = state.redoStack[state.redoStack.length - 1];
    if (!next) return state;
    return {
      ...state,
      chips: next,
      undoStack: [...state.undoStack, state.chips],
      redoStack: state.redoStack.slice(0, -1)
    };
  }
  function toAllocation(state) {
    return {
      lower: state.lower,
      upper: state.upper,
      nbins: state.nbins,
      chips: state.chips,
      total_chips: state.totalChips
    };
  }
  function renderGrid(root, state, cb) {
    root.innerHTML = "";
    root.className = "roulette-grid";
    const maxColumn = Math.max(6, ...state.chips);
    const row = document.createElement("div");
    row.className = "grid-bins";
    state.chips.forEach((count, i) => {
      const col = document.createElement("div");
      col.className = "grid-bin";
      col.title = `R in [${binLabel(state, i)}]`;
      const stack = document.createElement("div");
      stack.className = "chip-stack";
      stack.style.height = `${maxColumn * 14}px`;
      for (let c = 0; c < count; c++) {
        const chip = document.createElement("div");
        chip.className = "chip";
        stack.appendChild(chip);
      }
      stack.addEventListener("click", () => cb.onChange(placeChip(state, i)));
      stack.addEventListener("contextmenu", (e) => {
        e.preventDefault();
        cb.onChange(removeChip(state, i));
      });
      const pct = document.createElement("div");
      pct.className = "bin-percent";
      pct.textContent = binPercentLabel(state, i);
      const label = document.createElement("div");
      label.className = "bin-label";
      label.textContent = binLabel(state, i);
      col.appendChild(pct);
      col.appendChild(stack);
      col.appendChild(label);
      row.appendChild(col);
    });
    const controls = document.createElement("div");
    controls.className = "grid-controls";
    const counter = document.createElement("span");
    counter.className = "chip-counter";
    counter.textContent = `${remainingChips(state)} of ${state.totalChips} chips left`;
    const undoBtn = document.createElement("button");
    undoBtn.textContent = "Undo";
    undoBtn.disabled = state.undoStack.length === 0;
    undoBtn.addEventListener("click", () => cb.onChange(undo(state)));
    const redoBtn = document.createElement("button");
    redoBtn.textContent = "Redo";
    redoBtn.disabled = state.redoStack.length === 0;
    redoBtn.addEventListener("click", () => cb.onChange(redo(state)));
    controls.appendChild(counter);
    controls.appendChild(undoBtn);
    controls.appendChild(redoBtn);
    root.appendChild(row);
    root.appendChild(controls);
  }

  // src/feedback.ts
  var FEEDBACK_DEBOUNCE_MS = 150;
  var BAND_ORDER = ["low", "moderate", "high", "extreme"];
  var BAND_COLORS = {
    low: "#34a853",
    moderate: "#fbbc04",
    high: "#ff8c00",
    extreme: "#ea4335"
  };
  var FeedbackScheduler = class {
    constructor(fetcher, onResult, onError = () => {
    }, debounceMs = FEEDBACK_DEBOUNCE_MS) {
      this.fetcher = fetcher;
      this.onResult = onResult;
      this.onError = onError;
      this.debounceMs = debounceMs;
    }
    fetcher;
    onResult;
    onError;
    debounceMs;
    timer = null;
    inflight = null;
    schedule() {
      if (this.timer !== null) clearTimeout(this.timer);
      this.timer = setTimeout(() => {
        this.timer = null;
        void this.fire();
      }, this.debounceMs);
    }
    async fire() {
      if (this.inflight) this.inflight.abort();
      const controller = new AbortController();
      this.inflight = controller;
      try {
        const body = await this.fetcher(controller.signal);
        if (!controller.signal.aborted) this.onResult(body);
      } catch (err) {
        if (!controller.signal.aborted) this.onError(err);
      } finally {
        if (this.inflight === controller) this.inflight = null;
      }
    }
    cancel() {
      if (this.timer !== null) clearTimeout(this.timer);
      this.timer = null;
      if (this.inflight) this.inflight.abort();
      this.inflight = null;
    }
  };
  function renderBands(root, bands) {
    root.innerHTML = "";
    root.className = "band-bar";
    for (const name of BAND_ORDER) {
      const p = bands[name];
      const seg = document.createElement("div");
      seg.className = `band band-${name}`;
      seg.style.background = BAND_COLORS[name];
      seg.style.flexGrow = String(Math.max(p, 1e-3));
      seg.dataset.band = name;
      seg.dataset.value = String(p);
      seg.title = `${name}: ${formatPercent(p)}`;
      const label = document.createElement("span");
      label.textContent = `${name} ${formatPercent(p)}`;
      seg.appendChild(label);
      root.appendChild(seg);
    }
  }
  function renderInsufficient(root) {
    root.innerHTML = "";
    root.className = "band-bar empty";
    const note = document.createElement("span");
    note.className = "placeholder";
    note.textContent = "insufficient judgments";
    root.appendChild(note);
  }
  function renderDensity(canvas, density) {
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    const w = canvas.width;
    const h = canvas.height;
    ctx.clearRect(0, 0, w, h);
    const edges = density.bin_edges;
    const values = density.density;
    if (values.length === 0) return;
    const xMin = edges[0];
    const xMax = edges[edges.length - 1];
    const yMax = Math.max(...values) || 1;
    const pad = { left: 34, right: 8, top: 8, bottom: 22 };
    const cw = w - pad.left - pad.right;
    const ch = h - pad.top - pad.bottom;
    const toX = (x) => pad.left + (x - xMin) / (xMax - xMin || 1) * cw;
    const toH = (v) => v / yMax * ch;
    ctx.fillStyle = "#4285f4";
    for (let i = 0; i < values.length; i++) {
      const x0 = toX(edges[i]);
      const x1 = toX(edges[i + 1]);
      const bh = toH(values[i]);
      ctx.fillRect(x0, pad.top + ch - bh, Math.max(x1 - x0 - 1, 1), bh);
    }
    ctx.strokeStyle = "#ccc";
    ctx.beginPath();
    ctx.moveTo(pad.left, pad.top);
    ctx.lineTo(pad.left, pad.top + ch);
    ctx.lineTo(pad.left + cw, pad.top + ch);
    ctx.stroke();
    ctx.fillStyle = "#555";
    ctx.font = "10px sans-serif";
    ctx.textAlign = "center";
    for (let i = 0; i <= 4; i++) {
      const x = xMin + (xMax - xMin) * i / 4;
      ctx.fillText(x.toFixed(2), toX(x), h - 6);
    }
    ctx.save();
    ctx.translate(10, pad.top + ch / 2);
    ctx.rotate(-Math.PI / 2);
    ctx.fillText("density of tau", 0, 0);
    ctx.restore();
  }

  // src/store.ts
  function createStore(initial) {
    let state = initial;
    const listeners = /* @__PURE__ */ new Set();
    return {
      get: () => state,
      set(patch) {
        state = { ...state, ...patch };
        listeners.forEach((fn) => fn());
      },
      subscribe(fn) {
        listeners.add(fn);
        return () => listeners.delete(fn);
      }
    };
  }

  // src/transitions.ts
  var ALLOWED = {
    Stage1: ["stage1"],
    Stage2: ["stage2"],
    Stage3: ["chips", "finalize"],
    Finalized: []
  };
  function isAllowed(stage, action) {
    return ALLOWED[stage].includes(action);
  }
  function canFinalize(session, decline) {
    if (!isAllowed(session.stage, "finalize")) return false;
    if (decline) return true;
    const placed = session.chips?.chips.reduce((a, b) => a + b, 0) ?? 0;
    return placed > 0;
  }

  // src/wizard.ts
  var DEFAULT_CHIP_BUDGET = 20;
  var DEFAULT_NBINS = 9;
  function renderWizard(root, client2, envelope) {
    const store = createStore({
      session: envelope.session,
      question: envelope.question,
      grid: null,
      feedback: null,
      error: null
    });
    const scheduler = new FeedbackScheduler(
      (signal) => client2.getFeedback(store.get().session.id, signal),
      (body) => store.set({ feedback: body }),
      (err) => store.set({ error: describe(err) })
    );
    async function apply(call) {
      try {
        const next = await call();
        store.set({ session: next.session, question: next.question, error: null });
      } catch (err) {
        if (err instanceof ApiError && err.status === 409) {
          const fresh = await client2.getSession(store.get().session.id);
          store.set({ session: fresh.session, question: fresh.question, error: err.message });
          return;
        }
        store.set({ error: describe(err) });
      }
    }
    function sync() {
      const s = store.get();
      root.innerHTML = "";
      const banner = document.createElement("div");
      banner.className = "error-banner";
      if (s.error) {
        banner.textContent = s.error;
        const retry = document.createElement("button");
        retry.textContent = "Dismiss";
        retry.addEventListener("click", () => store.set({ error: null }));
        banner.appendChild(retry);
      } else {
        banner.setAttribute("hidden", "");
      }
      root.appendChild(banner);
      const stage = document.createElement("section");
      stage.className = `stage stage-${s.session.stage.toLowerCase()}`;
      root.appendChild(stage);
      switch (s.session.stage) {
        case "Stage1":
          renderStage1(stage, s, store, client2, apply);
          break;
        case "Stage2":
          renderStage2(stage, s, store, client2, apply);
          break;
        case "Stage3":
          renderStage3(stage, s, store, client2, apply, scheduler);
          break;
        case "Finalized":
          scheduler.cancel();
          renderFinalized(stage, s);
          break;
      }
    }
    sync();
    store.subscribe(sync);
    return store;
  }
  function describe(err) {
    if (err instanceof ApiError) return `${err.type}: ${err.message}`;
    return err instanceof Error ? err.message : String(err);
  }
  function questionEl(text) {
    const q = document.createElement("p");
    q.className = "question";
    q.textContent = text ?? "";
    return q;
  }
  function renderStage1(el, s, store, client2, apply) {
    el.appendChild(questionEl(s.question));
    for (const answer of [true, false]) {
      const btn = document.createElement("button");
      btn.textContent = answer ? "Yes" : "No";
      btn.disabled = !isAllowed(s.session.stage, "stage1");
      btn.addEventListener("click", () => apply(() => client2.postStage1(s.session.id, answer)));
      el.appendChild(btn);
    }
  }
  function renderStage2(el, s, store, client2, apply) {
    el.appendChild(questionEl(s.question));
    const input = document.createElement("input");
    input.type = "number";
    input.min = String(s.session.r_min);
    input.step = "any";
    input.placeholder = "largest plausible R";
    const submit = document.createElement("button");
    submit.textContent = "Set maximum";
    submit.disabled = !isAllowed(s.session.stage, "stage2");
    submit.addEventListener("click", () => {
      const value = Number(input.value);
      if (!Number.isFinite(value)) {
        store.set({ error: "enter a number for the largest plausible range" });
        return;
      }
      void apply(() => client2.postStage2(s.session.id, value));
    });
    const decline = document.createElement("button");
    decline.textContent = "Cannot judge a maximum";
    decline.disabled = !isAllowed(s.session.stage, "stage2");
    decline.addEventListener("click", () => apply(() => client2.postStage2(s.session.id, null)));
    el.appendChild(input);
    el.appendChild(submit);
    el.appendChild(decline);
  }
  function renderStage3(el, s, store, client2, apply, scheduler) {
    el.appendChild(questionEl(s.question));
    let grid = s.grid;
    if (!grid) {
      grid = newGrid(s.session.r_min, s.session.r_max ?? 10, DEFAULT_NBINS, DEFAULT_CHIP_BUDGET);
      s = { ...s, grid };
    }
    const gridEl = document.createElement("div");
    renderGrid(gridEl, grid, {
      onChange(next) {
        store.set({ grid: next });
        if (placedChips(next) > 0 && isAllowed(store.get().session.stage, "chips")) {
          void client2.putChips(store.get().session.id, toAllocation(next)).then((env) => {
            store.set({ session: env.session });
            scheduler.schedule();
          }).catch((err) => store.set({ error: describe(err) }));
        }
      }
    });
    el.appendChild(gridEl);
    const panel = document.createElement("div");
    panel.className = "feedback-panel";
    const bar = document.createElement("div");
    const canvas = document.createElement("canvas");
    canvas.width = 420;
    canvas.height = 160;
    panel.appendChild(bar);
    panel.appendChild(canvas);
    el.appendChild(panel);
    if (s.feedback && placedChips(grid) > 0) {
      renderBands(bar, s.feedback.bands);
      renderDensity(canvas, s.feedback.density);
    } else {
      renderInsufficient(bar);
    }
    const accept = document.createElement("button");
    accept.textContent = "Finalize with fitted distribution";
    accept.disabled = !canFinalize(s.session, false);
    accept.addEventListener("click", () => apply(() => client2.finalize(s.session.id, false)));
    const decline = document.createElement("button");
    decline.textContent = "Cannot place chips";
    decline.disabled = !canFinalize(s.session, true);
    decline.addEventListener("click", () => apply(() => client2.finalize(s.session.id, true)));
    el.appendChild(accept);
    el.appendChild(decline);
  }
  function renderFinalized(el, s) {
    const card = document.createElement("div");
    card.className = "result-card";
    const title = document.createElement("h3");
    const result = s.session.result;
    title.textContent = result?.model === "FixedEffect" ? "Recommended model: fixed effect" : "Recommended model: random effects";
    card.appendChild(title);
    const body = document.createElement("p");
    if (result?.prior) {
      body.textContent = `Heterogeneity prior: ${result.prior.variant}`;
      const detail = document.createElement("pre");
      detail.textContent = JSON.stringify(result.prior.params, null, 1);
      card.appendChild(body);
      card.appendChild(detail);
    } else {
      body.textContent = "No heterogeneity prior: studies judged identical.";
      card.appendChild(body);
    }
    el.appendChild(card);
  }

  // src/analysis.ts
  async function* pollAnalysis(client2, runId, intervalMs = 500) {
    while (true) {
      const body = await client2.getAnalysis(runId);
      yield body;
      if (body.status === "done" || body.status === "failed") break;
      await new Promise((r) => setTimeout(r, intervalMs));
    }
  }
  function formatEffect(es) {
    return `${es.median.toFixed(2)} (${es.lower.toFixed(2)}, ${es.upper.toFixed(2)})`;
  }
  function effectLabel(summary, unit) {
    const base = summary.likelihood === "BinomialLogit" ? "OR" : "MD";
    const suffix = unit ? `, ${unit}` : "";
    return `${base}, median (95% CrI)${suffix}`;
  }
  function treatmentLabel(k, names) {
    const name = (i) => names?.[i] ?? `treatment ${i}`;
    return `${name(k)} vs. ${name(1)}`;
  }
  function effectCell(summary, k, predictive) {
    const te = summary.treatment_effects[k];
    if (!te) return null;
    if (summary.likelihood === "BinomialLogit") {
      return predictive ? te.predictive_odds_ratio : te.odds_ratio;
    }
    return predictive ? te.predictive : te.d;
  }
  function renderAnalysisTable(root, runs, opts = {}) {
    root.innerHTML = "";
    if (runs.length === 0) return;
    const treatments = Object.keys(runs[0].summary.treatment_effects);
    const table = document.createElement("table");
    table.className = "analysis-table";
    const head = table.createTHead().insertRow();
    const cols = [
      "Model",
      ...treatments.map((k) => `${effectLabel(runs[0].summary, opts.unit)} ${treatmentLabel(Number(k), opts.names)}`),
      "P_low",
      "P_moderate",
      "P_high",
      "P_extreme",
      "DIC"
    ];
    for (const c of cols) {
      const th = document.createElement("th");
      th.textContent = c;
      head.appendChild(th);
    }
    const body = table.createTBody();
    for (const run of runs) {
      const s = run.summary;
      const row = body.insertRow();
      row.insertCell().textContent = run.label;
      for (const k of treatments) {
        const es = effectCell(s, k, false);
        row.insertCell().textContent = es ? formatEffect(es) : "";
      }
      const bands = s.tau?.bands;
      for (const name of ["low", "moderate", "high", "extreme"]) {
        const cell = row.insertCell();
        if (bands) {
          cell.textContent = formatPercent(bands[name]);
          cell.dataset.value = String(bands[name]);
        } else {
          cell.textContent = "";
        }
      }
      row.insertCell().textContent = s.dic.dic.toFixed(2);
      const hasPredictive = treatments.some((k) => effectCell(s, k, true) !== null);
      if (hasPredictive) {
        const prow = body.insertRow();
        prow.className = "predictive-row";
        const label = prow.insertCell();
        const b = document.createElement("b");
        b.textContent = `${run.label} (new study)`;
        label.appendChild(b);
        for (const k of treatments) {
          const es = effectCell(s, k, true);
          const cell = prow.insertCell();
          if (es) {
            const bold = document.createElement("b");
            bold.textContent = formatEffect(es);
            cell.appendChild(bold);
          }
        }
        for (let i = 0; i < 5; i++) prow.insertCell();
      }
    }
    root.appendChild(table);
    const warnings = runs.flatMap((r) => r.summary.diagnostics.warnings ?? []);
    if (warnings.length > 0) {
      const note = document.createElement("pre");
      note.className = "engine-warnings";
      note.textContent = warnings.join("\n");
      root.appendChild(note);
    }
  }
  function renderRunFailure(root, body) {
    root.innerHTML = "";
    const pre = document.createElement("pre");
    pre.className = "run-error";
    pre.textContent = body.error ?? "analysis failed";
    root.appendChild(pre);
  }

  // src/main.ts
  var client = new ServiceClient("");
  var SCALES = [
    "LogOR",
    "LogHR",
    "LogRR",
    "LogRoM",
    "MeanDifference",
    "SMD",
    "Probit"
  ];
  function renderLauncher(root) {
    root.innerHTML = "";
    const form = document.createElement("div");
    form.className = "launcher";
    const select = document.createElement("select");
    for (const s of SCALES) {
      const opt = document.createElement("option");
      opt.value = s;
      opt.textContent = s;
      select.appendChild(opt);
    }
    const sigma = document.createElement("input");
    sigma.type = "number";
    sigma.step = "any";
    sigma.placeholder = "sigma (mean difference only)";
    sigma.hidden = true;
    select.addEventListener("change", () => {
      sigma.hidden = select.value !== "MeanDifference";
    });
    const start = document.createElement("button");
    start.textContent = "Start elicitation";
    start.addEventListener("click", async () => {
      try {
        const env = await client.createSession(
          select.value,
          sigma.hidden || sigma.value === "" ? void 0 : Number(sigma.value)
        );
        renderWizard(root, client, env);
      } catch (err) {
        alert(err instanceof Error ? err.message : String(err));
      }
    });
    form.appendChild(select);
    form.appendChild(sigma);
    form.appendChild(start);
    root.appendChild(form);
  }
  async function runComparison(root, dataset, sessionId) {
    root.innerHTML = "<p>running...</p>";
    const runs = [];
    const requests = [
      { label: "FE", body: { dataset, effect: "FixedEffect" } }
    ];
    if (sessionId) {
      requests.push({
        label: "RE, elicited",
        body: { dataset, effect: "RandomEffects", prior: { from_session: sessionId } }
      });
    }
    for (const req of requests) {
      const { run_id } = await client.startAnalysis(req.body);
      let last = null;
      for await (const body of pollAnalysis(client, run_id)) {
        last = body;
        root.innerHTML = `<p>${req.label}: ${body.status} (${Math.round(body.progress * 100)}%)</p>`;
      }
      if (last?.status === "failed") {
        renderRunFailure(root, last);
        return;
      }
      if (last?.result) runs.push({ label: req.label, summary: last.result.summary });
    }
    renderAnalysisTable(root, runs);
  }
  function boot() {
    const app = document.getElementById("app");
    if (!app) return;
    const wizardPane = document.createElement("div");
    wizardPane.id = "wizard";
    const analysisPane = document.createElement("div");
    analysisPane.id = "analysis";
    const controls = document.createElement("div");
    controls.className = "analysis-controls";
    const datasetInput = document.createElement("input");
    datasetInput.placeholder = "dataset (e.g. ta163)";
    datasetInput.value = "ta163";
    const sessionInput = document.createElement("input");
    sessionInput.placeholder = "finalized session id (optional)";
    const runBtn = document.createElement("button");
    runBtn.textContent = "Run synthesis";
    runBtn.addEventListener("click", () => {
      void runComparison(analysisPane, datasetInput.value, sessionInput.value || null);
    });
    controls.appendChild(datasetInput);
    controls.appendChild(sessionInput);
    controls.appendChild(runBtn);
    app.appendChild(wizardPane);
    app.appendChild(controls);
    app.appendChild(analysisPane);
    renderLauncher(wizardPane);
  }
  document.addEventListener("DOMContentLoaded", boot);
})();
