import { describe, expect, it } from "vitest";

import { forceLayout, makeRng } from "../src/layout.js";
import { renderBoard } from "../src/board.js";
import type { GraphView, SessionView } from "../src/types.js";

const c4: GraphView = { vertices: [0, 1, 2, 3], edges: [[0, 1], [1, 2], [2, 3], [0, 3]] };

describe("seeded layout", () => {
  it("is deterministic for a fixed seed", () => {
    const a = forceLayout(c4, 7);
    const b = forceLayout(c4, 7);
    expect([...a.entries()]).toEqual([...b.entries()]);
  });

  it("changes with the seed", () => {
    const a = forceLayout(c4, 7);
    const b = forceLayout(c4, 8);
    expect(JSON.stringify([...a.entries()])).not.toEqual(JSON.stringify([...b.entries()]));
  });

  it("keeps every vertex inside the frame", () => {
    for (const [, p] of forceLayout(c4, 3)) {
      expect(p.x).toBeGreaterThanOrEqual(24);
      expect(p.x).toBeLessThanOrEqual(616);
      expect(p.y).toBeGreaterThanOrEqual(24);
      expect(p.y).toBeLessThanOrEqual(456);
    }
  });

  it("prng is stable", () => {
    const rng = makeRng(42);
    const seq = [rng(), rng(), rng()];
    const rng2 = makeRng(42);
    expect([rng2(), rng2(), rng2()]).toEqual(seq);
  });
});

describe("board rendering", () => {
  const view: SessionView = {
    id: "t",
    status: "in_play",
    turn: "ann_to_pick",
    side_to_move: "ann",
    human_role: "ann",
    engine_policy: { kind: "optimal" },
    policy_used: null,
    graph: c4,
    lists: { "0": [1, 2], "1": [1, 2], "2": [1, 2], "3": [1, 2] },
    coloured: { "1": 2 },
    picked: null,
    effective_lists: { "0": [1], "2": [1], "3": [1, 2] },
    dead_vertices: [],
    history: [],
  };

  it("is a pure function of view and seed", () => {
    expect(renderBoard({ view, layoutSeed: 5 })).toEqual(renderBoard({ view, layoutSeed: 5 }));
  });

  it("marks coloured vertices with their swatch", () => {
    const svg = renderBoard({ view, layoutSeed: 5 });
    expect(svg).toContain('data-vertex="1"');
    expect(svg).toContain("#3cb44b"); // swatch of colour 2
  });

  it("matches the stored snapshot for the fixed seed", () => {
    expect(renderBoard({ view, layoutSeed: 11 })).toMatchSnapshot();
  });
});
