// Pure SVG rendering of a SessionView: the same view and layout seed always
// produce the same markup (the snapshot tests rely on this).

import { forceLayout } from "./layout.js";
import { swatch, swatchLabel } from "./palette.js";
import { blockingNeighbours, legalColours, pickableVertices } from "./rules.js";
import type { SessionView } from "./types.js";

export interface BoardModel {
  view: SessionView;
  layoutSeed: number;
}

export function renderBoard(model: BoardModel): string {
  const { view, layoutSeed } = model;
  const pos = forceLayout(view.graph, layoutSeed);
  const dead = new Set(view.dead_vertices);
  const blockers = new Set<number>();
  for (const d of view.dead_vertices) {
    for (const b of blockingNeighbours(view, d)) blockers.add(b);
  }
  const pickable = new Set(
    view.status === "in_play" && view.turn === "ann_to_pick" ? pickableVertices(view) : [],
  );
  const parts: string[] = [];
  parts.push('<svg viewBox="0 0 640 480" xmlns="http://www.w3.org/2000/svg">');
  for (const [a, b] of sortedEdges(view)) {
    const pa = pos.get(a)!;
    const pb = pos.get(b)!;
    parts.push(
      `<line x1="${pa.x}" y1="${pa.y}" x2="${pb.x}" y2="${pb.y}" class="edge"/>`,
    );
  }
  for (const v of view.graph.vertices) {
    const p = pos.get(v)!;
    const coloured = view.coloured[String(v)];
    const classes = ["vertex"];
    if (v === view.picked) classes.push("picked");
    if (dead.has(v)) classes.push("dead");
    if (blockers.has(v)) classes.push("blocker");
    if (pickable.has(v)) classes.push("pickable");
    const fill = coloured !== undefined ? swatch(coloured) : "#ffffff";
    parts.push(
      `<g class="${classes.join(" ")}" data-vertex="${v}">` +
        `<circle cx="${p.x}" cy="${p.y}" r="16" fill="${fill}"/>` +
        `<text x="${p.x}" y="${p.y + 4}" text-anchor="middle">${v}</text>` +
        listBadge(view, v, p.x, p.y) +
        `</g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

function sortedEdges(view: SessionView): [number, number][] {
  return [...view.graph.edges].sort((e, f) => e[0] - f[0] || e[1] - f[1]);
}

function listBadge(view: SessionView, v: number, x: number, y: number): string {
  const eff = new Set(view.effective_lists[String(v)] ?? []);
  const full = view.lists[String(v)] ?? [];
  if (String(v) in view.coloured) return "";
  const chips = full
    .map((c, i) => {
      const cls = eff.has(c) ? "chip" : "chip used";
      const cx = x - ((full.length - 1) * 10) / 2 + i * 10;
      return (
        `<circle class="${cls}" cx="${cx}" cy="${y + 24}" r="4" fill="${swatch(c)}">` +
        `<title>${swatchLabel(c)}</title></circle>`
      );
    })
    .join("");
  return chips;
}

/** The palette strip shown when a vertex awaits Ben's colour. */
export function renderPalette(view: SessionView): string {
  if (view.picked === null) return "";
  const legal = new Set(legalColours(view, view.picked));
  const full = view.lists[String(view.picked)] ?? [];
  const cells = full
    .map((c) => {
      const cls = legal.has(c) ? "palette-cell" : "palette-cell greyed";
      return (
        `<button class="${cls}" data-colour="${c}" ${legal.has(c) ? "" : "disabled "}` +
        `style="background:${swatch(c)}">${swatchLabel(c)}</button>`
      );
    })
    .join("");
  return `<div class="palette" data-vertex="${view.picked}">${cells}</div>`;
}
