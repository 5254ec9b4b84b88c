// Single-page wiring: preset gallery, live board, palette, hint, undo.
// One in-flight mutation at a time; the view always comes from the server.

import { ApiClient, ServiceError } from "./api.js";
import { renderBoard, renderPalette } from "./board.js";
import { canColour, canPick } from "./rules.js";
import type { PresetInfo, SessionView } from "./types.js";

interface AppState {
  view: SessionView | null;
  layoutSeed: number;
  busy: boolean;
}

const state: AppState = { view: null, layoutSeed: 1, busy: false };
const api = new ApiClient("");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function toast(message: string): void {
  const box = el<HTMLDivElement>("toast");
  box.textContent = message;
  box.classList.add("visible");
  setTimeout(() => box.classList.remove("visible"), 2600);
}

function statusLine(view: SessionView): string {
  if (view.status === "ann_won") return "Ann wins: every vertex is coloured.";
  if (view.status === "ben_won")
    return `Ben wins: vertex ${view.dead_vertices[0]} can no longer be coloured.`;
  const youToMove = view.side_to_move === view.human_role;
  if (view.turn === "ann_to_pick")
    return youToMove ? "Your move: pick an uncoloured vertex." : "Engine is picking…";
  return youToMove
    ? `Choose a colour for vertex ${view.picked}.`
    : "Engine is colouring…";
}

function redraw(): void {
  const view = state.view;
  const board = el<HTMLDivElement>("board");
  const palette = el<HTMLDivElement>("palette-slot");
  const status = el<HTMLDivElement>("status");
  if (!view) {
    board.innerHTML = "";
    palette.innerHTML = "";
    status.textContent = "Pick a preset to start playing.";
    return;
  }
  board.innerHTML = renderBoard({ view, layoutSeed: state.layoutSeed });
  palette.innerHTML = view.side_to_move === view.human_role ? renderPalette(view) : "";
  status.textContent = statusLine(view);
  for (const g of board.querySelectorAll<SVGGElement>("g.vertex")) {
    g.addEventListener("click", () => {
      const v = Number(g.dataset.vertex);
      void submitPick(v);
    });
  }
  for (const b of palette.querySelectorAll<HTMLButtonElement>("button.palette-cell")) {
    b.addEventListener("click", () => void submitColour(Number(b.dataset.colour)));
  }
}

async function mutate(run: () => Promise<SessionView>): Promise<void> {
  if (state.busy) return;
  state.busy = true;
  try {
    state.view = await run();
  } catch (err) {
    if (err instanceof ServiceError) toast(`${err.kind}: ${err.message}`);
    else toast(String(err));
  } finally {
    state.busy = false;
    redraw();
  }
}

async function submitPick(v: number): Promise<void> {
  const view = state.view;
  if (!view || !canPick(view, v)) return; // client pre-validation mirrors the server
  await mutate(() => api.pick(view.id, v));
}

async function submitColour(c: number): Promise<void> {
  const view = state.view;
  if (!view || !canColour(view, c)) return;
  await mutate(() => api.colour(view.id, c));
}

async function showHint(): Promise<void> {
  const view = state.view;
  if (!view) return;
  try {
    const hint = await api.hint(view.id);
    const outcome = hint.evaluation === "win" ? "winning" : hint.evaluation === "loss" ? "losing" : "heuristic";
    toast(`Hint: ${hint.kind} ${hint.value} (${outcome})`);
    const target = document.querySelector(
      hint.kind === "vertex"
        ? `g.vertex[data-vertex="${hint.value}"]`
        : `button.palette-cell[data-colour="${hint.value}"]`,
    );
    target?.classList.add("pulse");
    setTimeout(() => target?.classList.remove("pulse"), 1800);
  } catch (err) {
    if (err instanceof ServiceError) toast(`${err.kind}: ${err.message}`);
  }
}

async function startPreset(preset: PresetInfo, role: "ann" | "ben"): Promise<void> {
  const params: Record<string, unknown> = {};
  const n = prompt(`Parameters for ${preset.name} (${JSON.stringify(preset.params)}), n =`, "5");
  if (n) params["n"] = Number(n);
  state.layoutSeed = Number(el<HTMLInputElement>("seed").value) || 1;
  await mutate(() =>
    api.createSession({
      preset: { name: preset.name, params },
      human_role: role,
      engine_policy: { kind: "optimal" },
    }),
  );
}

async function uploadPair(file: File, role: "ann" | "ben"): Promise<void> {
  const text = await file.text();
  state.layoutSeed = Number(el<HTMLInputElement>("seed").value) || 1;
  await mutate(() =>
    api.createSession({
      pair: JSON.parse(text),
      human_role: role,
      engine_policy: { kind: "optimal" },
    }),
  );
}

async function boot(): Promise<void> {
  const gallery = el<HTMLDivElement>("gallery");
  try {
    const { presets } = await api.presets();
    gallery.innerHTML = "";
    for (const p of presets) {
      const card = document.createElement("div");
      card.className = "preset-card";
      card.innerHTML = `<h3>${p.name}</h3><p>${p.description}</p>`;
      const asAnn = document.createElement("button");
      asAnn.textContent = "play Ann";
      asAnn.addEventListener("click", () => void startPreset(p, "ann"));
      const asBen = document.createElement("button");
      asBen.textContent = "play Ben";
      asBen.addEventListener("click", () => void startPreset(p, "ben"));
      card.append(asAnn, asBen);
      gallery.append(card);
    }
  } catch {
    const banner = el<HTMLDivElement>("banner");
    banner.textContent = "Service unreachable.";
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.addEventListener("click", () => void boot());
    banner.append(retry);
    return;
  }
  el<HTMLButtonElement>("hint").addEventListener("click", () => void showHint());
  el<HTMLButtonElement>("undo").addEventListener("click", () => {
    const view = state.view;
    if (view) void mutate(() => api.undo(view.id));
  });
  el<HTMLInputElement>("upload").addEventListener("change", (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (file) void uploadPair(file, "ann");
  });
  redraw();
}

if (typeof document !== "undefined") {
  void boot();
}
