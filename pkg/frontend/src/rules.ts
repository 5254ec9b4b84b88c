// Client-side mirror of the game rules, used only to grey out illegal
// choices before they reach the server.  The server remains the single
// source of truth; any divergence is a defect surfaced by the tests.

import type { SessionView } from "./types.js";

export function remainingVertices(view: SessionView): number[] {
  return view.graph.vertices.filter((v) => !(String(v) in view.coloured));
}

export function neighbours(view: SessionView, v: number): number[] {
  const out: number[] = [];
  for (const [a, b] of view.graph.edges) {
    if (a === v) out.push(b);
    else if (b === v) out.push(a);
  }
  return out;
}

/** Colours of v's list not used by an already coloured neighbour. */
export function legalColours(view: SessionView, v: number): number[] {
  const blocked = new Set<number>();
  for (const u of neighbours(view, v)) {
    const c = view.coloured[String(u)];
    if (c !== undefined) blocked.add(c);
  }
  return (view.lists[String(v)] ?? []).filter((c) => !blocked.has(c));
}

/** Vertices Ann may pick: uncoloured, and not doomed to an instant loss
 *  unless every remaining vertex is (then the game is over anyway). */
export function pickableVertices(view: SessionView): number[] {
  return remainingVertices(view).filter((v) => legalColours(view, v).length > 0);
}

export function canPick(view: SessionView, v: number): boolean {
  return (
    view.status === "in_play" &&
    view.turn === "ann_to_pick" &&
    view.side_to_move === view.human_role &&
    remainingVertices(view).includes(v)
  );
}

export function canColour(view: SessionView, c: number): boolean {
  if (view.status !== "in_play" || view.turn !== "ben_to_colour") return false;
  if (view.side_to_move !== view.human_role || view.picked === null) return false;
  return legalColours(view, view.picked).includes(c);
}

/** The neighbours responsible for a dead vertex: one per exhausted colour. */
export function blockingNeighbours(view: SessionView, dead: number): number[] {
  const list = view.lists[String(dead)] ?? [];
  const blockers: number[] = [];
  for (const c of list) {
    for (const u of neighbours(view, dead)) {
      if (view.coloured[String(u)] === c) {
        blockers.push(u);
        break;
      }
    }
  }
  return blockers;
}
