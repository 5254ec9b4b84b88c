// Seeded force layout so a reload reproduces the same picture.

import type { GraphView } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

/** Deterministic 32-bit PRNG (mulberry32). */
export function makeRng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function forceLayout(
  graph: GraphView,
  seed: number,
  width = 640,
  height = 480,
  iterations = 220,
): Map<number, Point> {
  const rng = makeRng(seed);
  const pos = new Map<number, Point>();
  for (const v of graph.vertices) {
    pos.set(v, {
      x: width / 2 + (rng() - 0.5) * width * 0.8,
      y: height / 2 + (rng() - 0.5) * height * 0.8,
    });
  }
  const n = Math.max(graph.vertices.length, 1);
  const ideal = Math.sqrt((width * height) / n) * 0.7;
  for (let it = 0; it < iterations; it++) {
    const force = new Map<number, Point>();
    for (const v of graph.vertices) force.set(v, { x: 0, y: 0 });
    for (let i = 0; i < graph.vertices.length; i++) {
      for (let j = i + 1; j < graph.vertices.length; j++) {
        const a = graph.vertices[i];
        const b = graph.vertices[j];
        const pa = pos.get(a)!;
        const pb = pos.get(b)!;
        const dx = pa.x - pb.x;
        const dy = pa.y - pb.y;
        const d2 = Math.max(dx * dx + dy * dy, 0.01);
        const rep = (ideal * ideal) / d2;
        const fa = force.get(a)!;
        const fb = force.get(b)!;
        fa.x += dx * rep * 0.05;
        fa.y += dy * rep * 0.05;
        fb.x -= dx * rep * 0.05;
        fb.y -= dy * rep * 0.05;
      }
    }
    for (const [a, b] of graph.edges) {
      const pa = pos.get(a)!;
      const pb = pos.get(b)!;
      const dx = pb.x - pa.x;
      const dy = pb.y - pa.y;
      const d = Math.sqrt(Math.max(dx * dx + dy * dy, 0.01));
      const pull = ((d - ideal) / d) * 0.05;
      const fa = force.get(a)!;
      const fb = force.get(b)!;
      fa.x += dx * pull;
      fa.y += dy * pull;
      fb.x -= dx * pull;
      fb.y -= dy * pull;
    }
    const cool = 1 - it / iterations;
    for (const v of graph.vertices) {
      const p = pos.get(v)!;
      const f = force.get(v)!;
      p.x = Math.min(width - 24, Math.max(24, p.x + f.x * cool));
      p.y = Math.min(height - 24, Math.max(24, p.y + f.y * cool));
    }
  }
  // round for stable serialisation
  for (const p of pos.values()) {
    p.x = Math.round(p.x * 100) / 100;
    p.y = Math.round(p.y * 100) / 100;
  }
  return pos;
}
